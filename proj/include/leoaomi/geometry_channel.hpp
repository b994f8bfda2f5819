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

#pragma once

#include "leoaomi/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

// Satellite-to-ground downlink: slant range, free-space loss, rain
// attenuation, composite large-scale gain and Rician small-scale fading.

namespace leoaomi
{

struct LinkGeometry
{
    double elevation_rad = 0.0;
    double altitude_m = 0.0;
    double earth_radius_m = 6371e3;
    double carrier_hz = 20e9;

    static LinkGeometry from_degrees(double elevation_deg, double altitude_m,
                                     double earth_radius_m = 6371e3, double carrier_hz = 20e9);

    /// Throws std::invalid_argument unless 0 < elevation <= pi/2 and all
    /// lengths and the carrier are positive.
    void validate() const;
};

/// Rain attenuation PL_rain = kappa * R^beta * L_rain with the effective path
/// length L_rain = 1 / (a * R^b + (c - e) * sin(elevation)). The path-length
/// constants are evaluated exactly as stored; override them to try other
/// effective-path-length forms.
struct RainModel
{
    double rain_rate_mm_h = 0.0;
    double kappa = 0.075;
    double beta = 1.099;

    double rate_coefficient = 0.00741; // a
    double rate_exponent = 0.776;      // b
    double elevation_term = 0.232;     // c
    double elevation_offset = 0.00018; // e

    void validate() const;
};

struct AntennaBudget
{
    double satellite_gain_dbi = 30.0;
    double user_gain_dbi = 25.0;
    double noise_power_dbm = -99.61;
    double transmit_power_w = 1.0;

    void validate() const;
};

/// Rician small-scale fading. The LOS component is the constant 1 + 0j.
struct RicianFading
{
    double k_factor = 0.0; // linear
    std::uint64_t rng_seed = 0;

    void validate() const;
};

struct UserChannel
{
    LinkGeometry geometry;
    RainModel rain;
    AntennaBudget budget;
    RicianFading fading;
    int user_id = 0;

    void validate() const;

    /// Copy of this channel transmitting at `watts`.
    UserChannel with_transmit_power(double watts) const;
};

double slant_range(const LinkGeometry &geom);

double free_space_path_loss_db(const LinkGeometry &geom);

/// 0 dB when there is no rain.
double rain_attenuation_db(const RainModel &rain, double elevation_rad);

/// FSPL and rain attenuation summed in dB.
double total_path_loss_db(const UserChannel &user);

/// G_T * G_R / PL_total as a linear power ratio.
double large_scale_gain(const UserChannel &user);

/// One draw of |h|^2 for Rician factor `k_factor` (linear).
double draw_fading_power(double k_factor, Engine &engine);

/// `count` i.i.d. draws of |h|^2 from the substream seeded by `fading.rng_seed`.
std::vector<double> sample_fading_power(const RicianFading &fading, std::size_t count);

/// Instantaneous SNR P_T * G_large * |h|^2 / sigma^2, linear.
double snr_linear(const UserChannel &user, double fading_gain);

/// SNR with |h|^2 = 1, i.e. the large-scale average.
double mean_snr_linear(const UserChannel &user);

} // namespace leoaomi
