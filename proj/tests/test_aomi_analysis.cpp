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

// Covered tests:
//   Stationary mode probabilities
//   Generic balance solve vs closed form, residuals, limits
//   Monotonicity in rho, D and lambda
//   Network mean and compliance ratio

#include <catch_amalgamated.hpp>

#include "leoaomi/aomi_analysis.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace leoaomi;

namespace
{

ShsParameters random_params(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lambda = std::pow(10.0, -2.0 + 4.0 * u(rng));
    const double rho = 0.01 + 0.99 * u(rng);
    const double d = std::pow(10.0, -4.0 + 5.0 * u(rng));
    return {lambda, rho, d};
}

} // namespace

TEST_CASE("Stationary probabilities", "[analysis]")
{
    const auto half = stationary_probs({1.0, 0.7, 1.0});
    CHECK(half.idle == 0.5);
    CHECK(half.transmitting == 0.5);

    const auto tiny = stationary_probs({1.0, 0.7, 1e-12});
    CHECK_THAT(tiny.idle, WithinAbs(1.0, 1e-11));

    const auto sat = stationary_probs({1.0, 0.7, 0.030128});
    CHECK_THAT(sat.transmitting, WithinRel(0.029246850876784244, 1e-14));
    CHECK_THAT(sat.idle + sat.transmitting, WithinAbs(1.0, 1e-15));
}

TEST_CASE("Parameter validation", "[analysis]")
{
    CHECK_THROWS_AS(stationary_probs({0.0, 0.5, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(stationary_probs({1.0, 0.0, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(stationary_probs({1.0, 1.1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(stationary_probs({1.0, 0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_aaomi({1.0, std::nan(""), 0.1}), std::invalid_argument);
    CHECK_NOTHROW(closed_form_aaomi({1.0, 1.0, 0.1}));
}

TEST_CASE("Closed form at the reference point", "[analysis]")
{
    // 1/(0.5) + 0.1/0.5 + 0.01/1.1 = 243/110
    const ShsParameters p{1.0, 0.5, 0.1};
    CHECK_THAT(closed_form_aaomi(p), WithinRel(243.0 / 110.0, 1e-15));
    CHECK_THAT(solve_correlation_system(p).aaomi, WithinRel(243.0 / 110.0, 1e-12));
}

TEST_CASE("Balance solve matches the closed form", "[analysis][property]")
{
    std::mt19937_64 rng(20240611);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const auto p = random_params(rng);
        const auto s = solve_correlation_system(p);
        const double ref = closed_form_aaomi(p);
        worst = std::max(worst, std::abs(s.aaomi - ref) / ref);

        const auto pi = stationary_probs(p);
        REQUIRE_THAT(s.pi0, WithinRel(pi.idle, 1e-12));
        REQUIRE_THAT(s.pi1, WithinRel(pi.transmitting, 1e-12));

        for (double r : correlation_residuals(build_shs_model(p), s))
            REQUIRE(std::abs(r) < 1e-12);

        // v_q = E[alpha 1{q}] is a nonnegative moment; no pending age while idle
        REQUIRE(s.v00 >= 0.0);
        REQUIRE(s.v10 >= 0.0);
        REQUIRE(s.v11 >= 0.0);
        REQUIRE(std::abs(s.v01) < 1e-12);
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("Limits", "[analysis]")
{
    for (double lambda : {0.1, 1.0, 7.0})
    {
        const ShsParameters p{lambda, 1.0, 1e-12};
        CHECK_THAT(closed_form_aaomi(p), WithinRel(1.0 / lambda, 1e-10));
        CHECK_THAT(solve_correlation_system(p).aaomi, WithinRel(1.0 / lambda, 1e-10));
    }

    // small D: halving rho doubles the age
    const double a1 = closed_form_aaomi({2.0, 0.8, 1e-9});
    const double a2 = closed_form_aaomi({2.0, 0.4, 1e-9});
    CHECK_THAT(a2 / a1, WithinRel(2.0, 1e-7));
}

TEST_CASE("The exchange convention is a different model", "[analysis]")
{
    const ShsParameters p{1.0, 0.5, 0.1};
    const auto swap = solve_correlation_system(p, ResetConvention::Swap);
    CHECK_THAT(swap.aaomi, WithinRel(1337.0 / 660.0, 1e-12));
    CHECK(std::abs(swap.aaomi - closed_form_aaomi(p)) > 0.1);
    for (double r : correlation_residuals(build_shs_model(p, ResetConvention::Swap), swap))
        CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("AAoMI is strictly decreasing in rho and increasing in D", "[analysis][property]")
{
    const int n = 50;
    for (double lambda : {0.2, 1.0, 5.0})
    {
        for (int i = 0; i < n; ++i)
        {
            const double d = std::pow(10.0, -4.0 + 4.0 * i / (n - 1.0));
            for (int j = 0; j < n; ++j)
            {
                const double rho = 0.02 + 0.98 * j / (n - 1.0);
                const double a = closed_form_aaomi({lambda, rho, d});
                if (j > 0)
                    REQUIRE(a < closed_form_aaomi({lambda, 0.02 + 0.98 * (j - 1) / (n - 1.0), d}));
                if (i > 0)
                    REQUIRE(a > closed_form_aaomi({lambda, rho, std::pow(10.0, -4.0 + 4.0 * (i - 1) / (n - 1.0))}));
            }
        }
    }
}

TEST_CASE("AAoMI keeps falling as the arrival rate grows", "[analysis][property]")
{
    // d/dlambda = -1/(lambda^2 rho) + D^2/(1 + lambda D)^2 < 0 for rho <= 1,
    // so the derivative never changes sign.
    for (double rho : {0.3, 0.9, 1.0})
    {
        for (double d : {0.01, 0.1, 1.0})
        {
            int sign_changes = 0;
            double prev_slope = 0.0;
            for (int k = 0; k < 200; ++k)
            {
                const double lambda = std::pow(10.0, -3.0 + 6.0 * k / 199.0);
                const double h = lambda * 1e-6;
                const double slope =
                    (closed_form_aaomi({lambda + h, rho, d}) - closed_form_aaomi({lambda - h, rho, d})) / (2.0 * h);
                REQUIRE(slope < 0.0);
                if (k > 0 && (slope > 0.0) != (prev_slope > 0.0))
                    ++sign_changes;
                prev_slope = slope;
            }
            CHECK(sign_changes == 0);
        }
    }
}

TEST_CASE("Network AAoMI and compliance", "[analysis]")
{
    const std::vector<double> a{1.9, 2.0, 2.1};
    CHECK_THAT(network_aaomi(a), WithinRel(2.0, 1e-15));

    const auto r = compliance_ratio(a, 2.0);
    CHECK(r.compliant == 2);
    CHECK_THAT(r.compliance_ratio, WithinRel(2.0 / 3.0, 1e-15));

    const std::vector<double> low{0.5, 1.0, 1.5};
    CHECK(compliance_ratio(low, 2.0).compliance_ratio == 1.0);
    CHECK(compliance_ratio(a, std::numeric_limits<double>::max()).compliance_ratio == 1.0);
    CHECK(compliance_ratio(a, 1.0).compliance_ratio == 0.0);

    CHECK_THROWS_AS(compliance_ratio(a, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(compliance_ratio(std::vector<double>{}, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(network_aaomi(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("Compliance is nondecreasing in the threshold", "[analysis][property]")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.5, 5.0);
    std::vector<double> ages(200);
    for (auto &x : ages)
        x = u(rng);
    double prev = 0.0;
    for (double eta = 0.1; eta < 6.0; eta += 0.01)
    {
        const double g = compliance_ratio(ages, eta).compliance_ratio;
        REQUIRE(g >= prev);
        prev = g;
    }
    CHECK(prev == 1.0);
}
