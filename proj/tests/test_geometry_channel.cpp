// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "leoaomi/geometry_channel.hpp"
#include "leoaomi/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

// Covered tests:
// - Slant range at zenith and at low elevation, monotonicity in elevation
// - Free-space loss values and log-distance identities
// - Rain attenuation values, dry-sky special case, monotonicity in rain rate
// - Large-scale gain dB bookkeeping and SNR linearity
// - Rician sampling: mean, variance, limits, KS distance to the density, seeding

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace leoaomi;

namespace
{

// Reference values below were evaluated with 30-digit arithmetic (mpmath)
// directly from the link-budget formulas, c = 2.998e8 m/s.
constexpr double kSlant20deg400km = 984039.782168771785697748;
constexpr double kFspl400km20GHz = 170.509364450035583372966;
constexpr double kFspl1000km20GHz = 178.468164623476335564416;
constexpr double kRain25mmh30deg = 12.5185782925373987812222;
constexpr double kRain01mmh60deg = 0.0295599121658126568097948;
constexpr double kMidpointLargeScaleGain = 3.34190490859770205211074e-13;
constexpr double kSnrExample = 28.9067988236547562110865; // 10^(1.461)

UserChannel midpoint_user()
{
    UserChannel u;
    u.geometry = LinkGeometry::from_degrees(40.0, 400e3);
    u.rain.rain_rate_mm_h = 12.0;
    u.budget = {30.0, 25.0, -99.61, 1.0};
    u.fading = {10.0, 7};
    return u;
}

} // namespace

TEST_CASE("Slant range collapses to the altitude at zenith", "[geometry]")
{
    for (double o : {400e3, 1000e3})
        REQUIRE(slant_range(LinkGeometry::from_degrees(90.0, o)) == o);
}

TEST_CASE("Slant range at 20 degrees from 400 km", "[geometry]")
{
    const auto g = LinkGeometry::from_degrees(20.0, 400e3, 6371e3);
    CHECK_THAT(slant_range(g), WithinRel(kSlant20deg400km, 1e-12));
}

TEST_CASE("Slant range is strictly decreasing in elevation", "[geometry]")
{
    for (double o : {400e3, 1000e3})
    {
        double prev = slant_range(LinkGeometry::from_degrees(0.1, o));
        for (double e = 0.2; e <= 90.0 + 1e-9; e += 0.1)
        {
            const double d = slant_range(LinkGeometry::from_degrees(std::min(e, 90.0), o));
            REQUIRE(d < prev);
            prev = d;
        }
    }
}

TEST_CASE("Invalid geometry is rejected", "[geometry]")
{
    CHECK_THROWS_AS(LinkGeometry::from_degrees(0.0, 400e3), std::invalid_argument);
    CHECK_THROWS_AS(LinkGeometry::from_degrees(91.0, 400e3), std::invalid_argument);
    CHECK_THROWS_AS(LinkGeometry::from_degrees(30.0, -1.0), std::invalid_argument);
    LinkGeometry g{deg_to_rad(30.0), 400e3, 6371e3, 0.0};
    CHECK_THROWS_AS(slant_range(g), std::invalid_argument);
}

TEST_CASE("Free-space path loss values", "[geometry]")
{
    CHECK_THAT(free_space_path_loss_db(LinkGeometry::from_degrees(90.0, 400e3)), WithinAbs(kFspl400km20GHz, 1e-10));
    CHECK_THAT(free_space_path_loss_db(LinkGeometry::from_degrees(90.0, 1000e3)), WithinAbs(kFspl1000km20GHz, 1e-10));
}

TEST_CASE("Free-space path loss follows 20 log10 d", "[geometry]")
{
    const double base = free_space_path_loss_db(LinkGeometry::from_degrees(90.0, 400e3));
    const double doubled = free_space_path_loss_db(LinkGeometry::from_degrees(90.0, 800e3));
    const double tenfold = free_space_path_loss_db(LinkGeometry::from_degrees(90.0, 4000e3));
    CHECK_THAT(doubled - base, WithinAbs(20.0 * std::log10(2.0), 1e-12));
    CHECK_THAT(tenfold - base, WithinAbs(20.0, 1e-12));

    // also increasing in carrier frequency
    auto g = LinkGeometry::from_degrees(45.0, 600e3);
    const double at20 = free_space_path_loss_db(g);
    g.carrier_hz = 30e9;
    CHECK(free_space_path_loss_db(g) > at20);
}

TEST_CASE("Rain attenuation", "[geometry][rain]")
{
    RainModel rain;
    SECTION("dry sky is exactly zero")
    {
        rain.rain_rate_mm_h = 0.0;
        CHECK(rain_attenuation_db(rain, deg_to_rad(30.0)) == 0.0);
    }
    SECTION("heavy rain at 30 degrees")
    {
        rain.rain_rate_mm_h = 25.0;
        CHECK_THAT(rain_attenuation_db(rain, deg_to_rad(30.0)), WithinRel(kRain25mmh30deg, 1e-12));
    }
    SECTION("drizzle is small, positive and below heavy rain")
    {
        rain.rain_rate_mm_h = 0.1;
        const double light = rain_attenuation_db(rain, deg_to_rad(60.0));
        CHECK_THAT(light, WithinRel(kRain01mmh60deg, 1e-12));
        rain.rain_rate_mm_h = 25.0;
        CHECK(light > 0.0);
        CHECK(light < rain_attenuation_db(rain, deg_to_rad(60.0)));
    }
    SECTION("path-length constants are configurable")
    {
        rain.rain_rate_mm_h = 10.0;
        const double before = rain_attenuation_db(rain, deg_to_rad(45.0));
        rain.elevation_offset = 0.0;
        CHECK(rain_attenuation_db(rain, deg_to_rad(45.0)) < before);
    }
    SECTION("negative rain rate is rejected")
    {
        rain.rain_rate_mm_h = -1.0;
        CHECK_THROWS_AS(rain_attenuation_db(rain, deg_to_rad(45.0)), std::invalid_argument);
    }
}

TEST_CASE("Large-scale gain combines losses in dB", "[geometry]")
{
    SECTION("pure dB arithmetic: 30 + 25 - 170 dB")
    {
        // choose an altitude whose zenith FSPL is exactly 170 dB
        const double d = std::pow(10.0, 170.0 / 20.0) * kSpeedOfLight / (4.0 * std::numbers::pi * 20e9);
        UserChannel u;
        u.geometry = LinkGeometry::from_degrees(90.0, d);
        u.budget = {30.0, 25.0, -99.61, 1.0};
        CHECK_THAT(large_scale_gain(u), WithinRel(std::pow(10.0, -11.5), 1e-12));
    }
    SECTION("no rain: gain set by free-space loss alone")
    {
        auto u = midpoint_user();
        u.rain.rain_rate_mm_h = 0.0;
        CHECK_THAT(large_scale_gain(u),
                   WithinRel(db_to_linear(55.0 - free_space_path_loss_db(u.geometry)), 1e-14));
    }
    SECTION("mid-range scenario user")
    {
        const double g = large_scale_gain(midpoint_user());
        CHECK_THAT(g, WithinRel(kMidpointLargeScaleGain, 1e-10));
        CHECK(g > 0.0);
        CHECK(g < 1.0);
    }
}

TEST_CASE("SNR bookkeeping", "[geometry][snr]")
{
    const double d = std::pow(10.0, 170.0 / 20.0) * kSpeedOfLight / (4.0 * std::numbers::pi * 20e9);
    UserChannel u;
    u.geometry = LinkGeometry::from_degrees(90.0, d);
    u.budget = {30.0, 25.0, -99.61, 1.0};

    CHECK(snr_linear(u, 0.0) == 0.0);
    CHECK_THAT(snr_linear(u, 1.0), WithinRel(kSnrExample, 1e-11));

    const double base = snr_linear(u, 0.7);
    CHECK_THAT(snr_linear(u.with_transmit_power(2.0), 0.7), WithinRel(2.0 * base, 1e-15));
    CHECK_THAT(snr_linear(u, 1.4), WithinRel(2.0 * base, 1e-15));
    CHECK_THROWS_AS(snr_linear(u, -0.1), std::invalid_argument);
}

TEST_CASE("Rician power gain has unit mean and the right variance", "[fading]")
{
    for (double k_db : {0.0, 5.0, 10.0, 15.0})
    {
        const double k = db_to_linear(k_db);
        const auto g = sample_fading_power({k, 1234u + static_cast<unsigned>(k_db)}, 1'000'000);
        const double mean = std::accumulate(g.begin(), g.end(), 0.0) / g.size();
        double var = 0.0;
        for (double x : g)
            var += (x - mean) * (x - mean);
        var /= static_cast<double>(g.size() - 1);

        INFO("K = " << k_db << " dB");
        CHECK_THAT(mean, WithinAbs(1.0, 0.01));
        CHECK_THAT(var, WithinRel((2.0 * k + 1.0) / ((k + 1.0) * (k + 1.0)), 0.03));
        CHECK(*std::min_element(g.begin(), g.end()) >= 0.0);
    }
}

TEST_CASE("Rician limits", "[fading]")
{
    SECTION("Rayleigh: unit-mean exponential")
    {
        const auto g = sample_fading_power({0.0, 99}, 1'000'000);
        const double mean = std::accumulate(g.begin(), g.end(), 0.0) / g.size();
        CHECK_THAT(mean, WithinAbs(1.0, 0.01));
        // P(|h|^2 > 1) = e^-1 for a unit exponential
        const auto above = std::count_if(g.begin(), g.end(), [](double x) { return x > 1.0; });
        CHECK_THAT(static_cast<double>(above) / g.size(), WithinAbs(std::exp(-1.0), 0.002));
    }
    SECTION("pure line of sight")
    {
        for (double x : sample_fading_power({1e9, 5}, 10'000))
            REQUIRE_THAT(x, WithinAbs(1.0, 1e-3));
    }
}

TEST_CASE("Rician samples match the non-central chi-square density", "[fading][ks]")
{
    const double k = 10.0;
    const std::size_t n = 1'000'000;
    auto samples = sample_fading_power({k, 2024}, n);
    std::sort(samples.begin(), samples.end());

    // Reference CDF by trapezoidal integration of the closed-form density.
    const double h = 1e-4;
    const double z_max = 8.0;
    const std::size_t steps = static_cast<std::size_t>(z_max / h);
    auto pdf = [k](double z) {
        return (k + 1.0) * std::exp(-k - (k + 1.0) * z) * std::cyl_bessel_i(0.0, 2.0 * std::sqrt(k * (k + 1.0) * z));
    };
    std::vector<double> cdf(steps + 1, 0.0);
    for (std::size_t i = 1; i <= steps; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * h * (pdf((i - 1) * h) + pdf(i * h));
    REQUIRE_THAT(cdf.back(), WithinAbs(1.0, 1e-6));

    auto ref = [&](double z) {
        if (z >= z_max)
            return 1.0;
        const double pos = z / h;
        const auto i = static_cast<std::size_t>(pos);
        const double w = pos - static_cast<double>(i);
        return cdf[i] + w * (cdf[i + 1] - cdf[i]);
    };

    double ks = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double f = ref(samples[i]);
        ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
    }
    CHECK(ks < 0.01);
}

TEST_CASE("Fading streams are reproducible per seed", "[fading][rng]")
{
    const auto a = sample_fading_power({3.0, 42}, 1000);
    const auto b = sample_fading_power({3.0, 42}, 1000);
    const auto c = sample_fading_power({3.0, 43}, 1000);
    CHECK(a == b);
    CHECK(a != c);
    CHECK_THROWS_AS(sample_fading_power({-1.0, 1}, 10), std::invalid_argument);
    CHECK_THROWS_AS(sample_fading_power({1.0, 1}, 0), std::invalid_argument);
}
