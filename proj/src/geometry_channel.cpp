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

#include "leoaomi/geometry_channel.hpp"
#include "leoaomi/units.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace leoaomi
{

LinkGeometry LinkGeometry::from_degrees(double elevation_deg, double altitude_m, double earth_radius_m,
                                        double carrier_hz)
{
    LinkGeometry g{deg_to_rad(elevation_deg), altitude_m, earth_radius_m, carrier_hz};
    g.validate();
    return g;
}

void LinkGeometry::validate() const
{
    // 90 deg converted from degrees can land one ulp above pi/2
    if (!(elevation_rad > 0.0) || elevation_rad > std::numbers::pi / 2.0 + 1e-15)
        throw std::invalid_argument("LinkGeometry: elevation must lie in (0, pi/2], got " +
                                    std::to_string(elevation_rad) + " rad");
    if (!(altitude_m > 0.0))
        throw std::invalid_argument("LinkGeometry: orbital altitude must be positive");
    if (!(earth_radius_m > 0.0))
        throw std::invalid_argument("LinkGeometry: earth radius must be positive");
    if (!(carrier_hz > 0.0))
        throw std::invalid_argument("LinkGeometry: carrier frequency must be positive");
}

void RainModel::validate() const
{
    if (!(rain_rate_mm_h >= 0.0))
        throw std::invalid_argument("RainModel: rain rate must be non-negative");
    if (!(kappa > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("RainModel: kappa and beta must be positive");
}

void AntennaBudget::validate() const
{
    if (!(transmit_power_w > 0.0))
        throw std::invalid_argument("AntennaBudget: transmit power must be positive");
    if (!std::isfinite(satellite_gain_dbi) || !std::isfinite(user_gain_dbi) || !std::isfinite(noise_power_dbm))
        throw std::invalid_argument("AntennaBudget: gains and noise power must be finite");
}

void RicianFading::validate() const
{
    if (!(k_factor >= 0.0))
        throw std::invalid_argument("RicianFading: K-factor must be non-negative");
}

void UserChannel::validate() const
{
    geometry.validate();
    rain.validate();
    budget.validate();
    fading.validate();
}

UserChannel UserChannel::with_transmit_power(double watts) const
{
    UserChannel copy = *this;
    copy.budget.transmit_power_w = watts;
    copy.budget.validate();
    return copy;
}

double slant_range(const LinkGeometry &geom)
{
    geom.validate();
    const double ratio = 1.0 + geom.altitude_m / geom.earth_radius_m;
    const double cos_e = std::cos(geom.elevation_rad);
    const double radicand = ratio * ratio - cos_e * cos_e;
    if (radicand < 0.0)
        throw std::domain_error("slant_range: negative radicand");
    // At zenith the expression collapses to the altitude.
    if (geom.elevation_rad >= std::numbers::pi / 2.0)
        return geom.altitude_m;
    // R_E (sqrt(r^2 - cos^2) - sin), rationalised to avoid the cancellation
    // between the two terms at high elevation.
    const double h = geom.altitude_m / geom.earth_radius_m;
    return geom.earth_radius_m * h * (2.0 + h) / (std::sqrt(radicand) + std::sin(geom.elevation_rad));
}

double free_space_path_loss_db(const LinkGeometry &geom)
{
    const double d = slant_range(geom);
    return 20.0 * std::log10(4.0 * std::numbers::pi * d * geom.carrier_hz / kSpeedOfLight);
}

double rain_attenuation_db(const RainModel &rain, double elevation_rad)
{
    rain.validate();
    if (!(elevation_rad > 0.0) || elevation_rad > std::numbers::pi / 2.0 + 1e-15)
        throw std::invalid_argument("rain_attenuation_db: elevation must lie in (0, pi/2]");
    if (rain.rain_rate_mm_h == 0.0)
        return 0.0;

    const double r = rain.rain_rate_mm_h;
    const double path_length =
        1.0 / (rain.rate_coefficient * std::pow(r, rain.rate_exponent) +
               (rain.elevation_term - rain.elevation_offset) * std::sin(elevation_rad));
    return rain.kappa * std::pow(r, rain.beta) * path_length;
}

double total_path_loss_db(const UserChannel &user)
{
    return free_space_path_loss_db(user.geometry) + rain_attenuation_db(user.rain, user.geometry.elevation_rad);
}

double large_scale_gain(const UserChannel &user)
{
    user.validate();
    return db_to_linear(user.budget.satellite_gain_dbi + user.budget.user_gain_dbi - total_path_loss_db(user));
}

double draw_fading_power(double k_factor, Engine &engine)
{
    // h_NLOS ~ CN(0, 1): real and imaginary parts each N(0, 1/2)
    std::normal_distribution<double> gauss(0.0, std::numbers::sqrt2 / 2.0);
    const double los = std::sqrt(k_factor / (k_factor + 1.0));
    const double scatter = std::sqrt(1.0 / (k_factor + 1.0));
    const double re = los + scatter * gauss(engine);
    const double im = scatter * gauss(engine);
    return re * re + im * im;
}

std::vector<double> sample_fading_power(const RicianFading &fading, std::size_t count)
{
    fading.validate();
    if (count == 0)
        throw std::invalid_argument("sample_fading_power: count must be at least 1");
    Engine engine(fading.rng_seed);
    std::vector<double> out(count);
    for (double &g : out)
        g = draw_fading_power(fading.k_factor, engine);
    return out;
}

double snr_linear(const UserChannel &user, double fading_gain)
{
    if (!(fading_gain >= 0.0))
        throw std::invalid_argument("snr_linear: fading gain must be non-negative");
    return user.budget.transmit_power_w * large_scale_gain(user) * fading_gain /
           dbm_to_watts(user.budget.noise_power_dbm);
}

double mean_snr_linear(const UserChannel &user) { return snr_linear(user, 1.0); }

} // namespace leoaomi
