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

#include "leoaomi/accuracy_model.hpp"
#include "leoaomi/geometry_channel.hpp"
#include "leoaomi/scheme_model.hpp"
#include "leoaomi/serialization.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

// Scenario ingestion, population sampling, transmit-power sweeps and CSV
// output for the network-level freshness figures.

namespace leoaomi
{

struct Range
{
    double min = 0.0;
    double max = 0.0;
};

struct SamplingRanges
{
    Range elevation_deg{20.0, 60.0};
    Range rain_mm_h{0.1, 25.0};
    Range k_factor_db{5.0, 15.0};
    Range satellite_gain_dbi{28.0, 32.0};
    Range user_gain_dbi{23.0, 27.0};
};

struct ScenarioConstants
{
    double earth_radius_m = 6371e3;
    double carrier_hz = 20e9;
    double noise_power_dbm = -99.61;
    RainModel rain; // kappa, beta and path-length constants; rain rate is sampled
    double symbol_duration_s = 125e-9;
    double encode_delay_s = 0.01;
};

struct Scenario
{
    int population_size = 5;
    SamplingRanges ranges;
    ScenarioConstants constants;
    ImageSource source; // carries the image arrival rate
    std::vector<double> altitudes_m;
    std::vector<double> power_grid_w;
    std::vector<SchemeConfig> schemes;
    double threshold_s = 2.0;
    std::uint64_t master_seed = 0;
    std::size_t mc_samples = 20000;

    /// Throws ConfigError.
    void validate() const;
};

Scenario parse_scenario(const nlohmann::json &j, const std::filesystem::path &base_dir = {});

/// Reads a JSON scenario file; relative profile paths resolve against the
/// file's directory. Throws ConfigError.
Scenario load_scenario(const std::filesystem::path &path);

/// U users drawn uniformly from the scenario ranges. The draws depend only on
/// the master seed and the user index, so every altitude sees the same users
/// (paired comparison across altitudes).
std::vector<UserChannel> sample_population(const Scenario &scenario, double altitude_m);

struct UserPoint
{
    int user_id = 0;
    double rho = 0.0;
    double rho_std_error = 0.0;
    double total_delay_s = 0.0;
    double aaomi_s = 0.0;
};

struct SweepRow
{
    double altitude_m = 0.0;
    std::string scheme;
    double power_w = 0.0;
    double mean_accuracy = 0.0;
    double network_aaomi_s = 0.0;
    double compliance_ratio = 0.0;
    std::vector<UserPoint> per_user;
};

struct SweepResult
{
    std::vector<SweepRow> rows; // sorted by (altitude, scheme, power)
};

/// One row per (altitude, scheme, power). Fading draws are shared across
/// powers and schemes for each user (common random numbers).
SweepResult run_sweep(const Scenario &scenario);

/// Writes accuracy.csv, aaomi.csv, compliance.csv and per_user.csv to
/// `out_dir`, creating it if needed.
void emit_results(const SweepResult &result, const std::filesystem::path &out_dir);

/// `%.9g` formatting shared by all CSV output.
std::string format_number(double value);

struct ValidationEntry
{
    double altitude_m = 0.0;
    std::string scheme;
    double power_w = 0.0;
    int user_id = 0;
    double closed_form_s = 0.0;
    double simulated_s = 0.0;
    double std_error_s = 0.0;
    double relative_deviation = 0.0;
};

struct ValidationReport
{
    std::vector<ValidationEntry> entries;
    double horizon_s = 0.0;
    double tolerance = 0.0;
    double max_relative_deviation = 0.0;
    bool passed = false;
};

/// Simulates every (altitude, scheme, user) at the lowest, middle and highest
/// grid power and compares the time-average AoMI to the closed form. The
/// horizon defaults to 1e6 / lambda.
ValidationReport validate_mode(const Scenario &scenario, double tolerance,
                               std::optional<double> horizon_s = std::nullopt);

} // namespace leoaomi
