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

#include "leoaomi/shs_model.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace leoaomi
{

struct ShsParameters
{
    double arrival_rate = 1.0; // lambda_I
    double success_prob = 1.0; // rho_u, in (0, 1]
    double total_delay = 0.0;  // D_total, mean service time

    /// Throws std::invalid_argument unless lambda > 0, 0 < rho <= 1, D > 0.
    void validate() const;

    bool operator==(const ShsParameters &) const = default;
};

struct StationaryProbs
{
    double idle = 1.0;
    double transmitting = 0.0;
};

/// Steady-state correlation vectors v_qk = E[alpha_k 1{q(t) = q}] and the
/// resulting average AoMI v00 + v10.
struct ShsSolution
{
    double pi0 = 0.0;
    double pi1 = 0.0;
    double v00 = 0.0;
    double v01 = 0.0;
    double v10 = 0.0;
    double v11 = 0.0;
    double aaomi = 0.0;
};

struct ComplianceReport
{
    double threshold = 0.0;
    std::vector<double> per_user_aaomi;
    std::size_t compliant = 0;
    double compliance_ratio = 0.0;
    double network_aaomi = 0.0;
};

StationaryProbs stationary_probs(const ShsParameters &params);

/// Builds the steady-state balance
///   v_q * sum_{l out of q} lambda_l = b_q pi_q + sum_{l into q} lambda_l v_{from(l)} A_l
/// for both modes from the transition table and solves it as a dense 4x4
/// system. Throws std::runtime_error if the system is singular or badly
/// conditioned.
ShsSolution solve_correlation_system(const ShsModel &model);
ShsSolution solve_correlation_system(const ShsParameters &params,
                                     ResetConvention convention = ResetConvention::Discard);

/// Residuals of the four balance equations at `solution`, in seconds.
std::array<double, 4> correlation_residuals(const ShsModel &model, const ShsSolution &solution);

/// 1/(lambda rho) + D/rho + lambda D^2 / (1 + lambda D).
double closed_form_aaomi(const ShsParameters &params);

/// Mean of the per-user values; throws on an empty population.
double network_aaomi(std::span<const double> per_user);

/// Fraction of users with AAoMI <= threshold (inclusive).
ComplianceReport compliance_ratio(std::span<const double> per_user, double threshold);

} // namespace leoaomi
