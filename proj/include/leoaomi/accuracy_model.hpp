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

#include "leoaomi/geometry_channel.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace leoaomi
{

/// Upper clamp on rho_u, which must stay strictly below one.
inline constexpr double kAccuracyClamp = 1e-9;

/// Classification success probability as a function of SNR in dB. Stands in
/// for a trained receiver: either a logistic curve between a chance-level
/// floor and a ceiling, or a measured curve interpolated linearly.
struct AccuracyProfile
{
    enum class Kind
    {
        Sigmoid,
        Tabulated
    };

    Kind kind = Kind::Sigmoid;
    double floor = 0.1;
    double ceiling = 0.9;
    double midpoint_db = 0.0;
    double slope_per_db = 1.0;
    std::vector<std::pair<double, double>> table; // (snr_db, accuracy), tabulated only

    static AccuracyProfile sigmoid(double floor, double ceiling, double midpoint_db, double slope_per_db);
    static AccuracyProfile tabulated(std::vector<std::pair<double, double>> rows);
    static AccuracyProfile constant(double accuracy);

    /// Throws std::invalid_argument on a malformed profile.
    void validate() const;

    bool operator==(const AccuracyProfile &) const = default;
};

struct UserAccuracy
{
    int user_id = 0;
    std::string scheme;
    double rho = 0.0;
    std::size_t sample_count = 0;
    double std_error = 0.0;
};

double accuracy_at_snr(const AccuracyProfile &profile, double snr_db);

/// rho_u: mean instantaneous accuracy over `fading_gains` at the user's
/// large-scale SNR, clamped to [0, 1 - kAccuracyClamp]. Passing the same gains
/// for several powers or schemes gives common-random-number comparisons.
UserAccuracy expected_accuracy(const AccuracyProfile &profile, const UserChannel &user,
                               std::span<const double> fading_gains, std::string scheme = {});

/// Same, drawing `samples` gains from the user's own fading substream.
UserAccuracy expected_accuracy(const AccuracyProfile &profile, const UserChannel &user, std::size_t samples,
                               std::string scheme = {});

/// Reads a `snr_db,accuracy` CSV (header line required).
AccuracyProfile load_profile_csv(const std::filesystem::path &path);

/// Shipped defaults: a shallow curve for the learned joint coder and a steep
/// cliff for the separated chain. The joint-coder curve is >= the separated
/// one at every SNR.
AccuracyProfile default_djscc_profile();
AccuracyProfile default_sscc_profile();

} // namespace leoaomi
