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

#include "leoaomi/aomi_analysis.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace leoaomi
{

void ShsParameters::validate() const
{
    if (!(arrival_rate > 0.0) || !std::isfinite(arrival_rate))
        throw std::invalid_argument("ShsParameters: arrival rate must be positive and finite");
    if (!(success_prob > 0.0 && success_prob <= 1.0))
        throw std::invalid_argument("ShsParameters: success probability must lie in (0, 1], got " +
                                    std::to_string(success_prob));
    if (!(total_delay > 0.0) || !std::isfinite(total_delay))
        throw std::invalid_argument("ShsParameters: total delay must be positive and finite");
}

StationaryProbs stationary_probs(const ShsParameters &params)
{
    params.validate();
    const double load = params.arrival_rate * params.total_delay;
    return {1.0 / (1.0 + load), load / (1.0 + load)};
}

namespace
{

constexpr int kModes = 2;
constexpr int kAges = 2;

int mode_index(Mode q) { return static_cast<int>(q); }

// pi from the embedded two-mode chain; self-loops do not move probability.
Eigen::Vector2d mode_distribution(const ShsModel &model)
{
    Eigen::Matrix2d generator = Eigen::Matrix2d::Zero();
    for (const auto &t : model.transitions)
    {
        if (t.from == t.to)
            continue;
        generator(mode_index(t.from), mode_index(t.from)) -= t.rate;
        generator(mode_index(t.from), mode_index(t.to)) += t.rate;
    }
    // pi * G = 0 with sum(pi) = 1: replace one balance equation by the
    // normalisation.
    Eigen::Matrix2d system = generator.transpose();
    system.row(1).setOnes();
    const Eigen::Vector2d rhs(0.0, 1.0);
    return system.fullPivLu().solve(rhs);
}

struct LinearSystem
{
    Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();
    Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
};

LinearSystem assemble(const ShsModel &model, const Eigen::Vector2d &pi)
{
    LinearSystem sys;
    for (int q = 0; q < kModes; ++q)
    {
        const double out_rate = model.exit_rate(static_cast<Mode>(q));
        for (int k = 0; k < kAges; ++k)
        {
            const int row = q * kAges + k;
            sys.matrix(row, row) += out_rate;
            sys.rhs(row) = model.growth[q][k] * pi(q);
            for (const auto &t : model.transitions)
            {
                if (mode_index(t.to) != q)
                    continue;
                const int from = mode_index(t.from);
                for (int j = 0; j < kAges; ++j)
                    sys.matrix(row, from * kAges + j) -= t.rate * t.reset.a[j][k];
            }
        }
    }
    return sys;
}

} // namespace

ShsSolution solve_correlation_system(const ShsModel &model)
{
    const Eigen::Vector2d pi = mode_distribution(model);
    const LinearSystem sys = assemble(model, pi);

    const Eigen::FullPivLU<Eigen::Matrix4d> lu(sys.matrix);
    if (lu.rank() < 4 || lu.rcond() < 1e-14)
        throw std::runtime_error("solve_correlation_system: singular or ill-conditioned balance system (rcond " +
                                 std::to_string(lu.rcond()) + ")");
    const Eigen::Vector4d v = lu.solve(sys.rhs);

    ShsSolution s;
    s.pi0 = pi(0);
    s.pi1 = pi(1);
    s.v00 = v(0);
    s.v01 = v(1);
    s.v10 = v(2);
    s.v11 = v(3);
    s.aaomi = s.v00 + s.v10;
    return s;
}

ShsSolution solve_correlation_system(const ShsParameters &params, ResetConvention convention)
{
    return solve_correlation_system(build_shs_model(params, convention));
}

std::array<double, 4> correlation_residuals(const ShsModel &model, const ShsSolution &solution)
{
    const LinearSystem sys = assemble(model, Eigen::Vector2d(solution.pi0, solution.pi1));
    const Eigen::Vector4d v(solution.v00, solution.v01, solution.v10, solution.v11);
    const Eigen::Vector4d r = sys.matrix * v - sys.rhs;
    return {r(0), r(1), r(2), r(3)};
}

double closed_form_aaomi(const ShsParameters &params)
{
    params.validate();
    const double lambda = params.arrival_rate;
    const double rho = params.success_prob;
    const double d = params.total_delay;
    return 1.0 / (lambda * rho) + d / rho + lambda * d * d / (1.0 + lambda * d);
}

double network_aaomi(std::span<const double> per_user)
{
    if (per_user.empty())
        throw std::invalid_argument("network_aaomi: empty population");
    return std::accumulate(per_user.begin(), per_user.end(), 0.0) / static_cast<double>(per_user.size());
}

ComplianceReport compliance_ratio(std::span<const double> per_user, double threshold)
{
    if (!(threshold > 0.0))
        throw std::invalid_argument("compliance_ratio: threshold must be positive");
    if (per_user.empty())
        throw std::invalid_argument("compliance_ratio: empty population");

    ComplianceReport report;
    report.threshold = threshold;
    report.per_user_aaomi.assign(per_user.begin(), per_user.end());
    for (double a : per_user)
        if (a <= threshold)
            ++report.compliant;
    report.compliance_ratio = static_cast<double>(report.compliant) / static_cast<double>(per_user.size());
    report.network_aaomi = network_aaomi(per_user);
    return report;
}

} // namespace leoaomi
