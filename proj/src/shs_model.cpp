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

#include "leoaomi/shs_model.hpp"
#include "leoaomi/aomi_analysis.hpp"

namespace leoaomi
{

std::string_view to_string(TransitionKind kind)
{
    switch (kind)
    {
    case TransitionKind::Arrival:
        return "arrival";
    case TransitionKind::Success:
        return "success";
    case TransitionKind::Misclassified:
        return "misclassified";
    case TransitionKind::ArrivalBusy:
        return "arrival_busy";
    }
    return "unknown";
}

double ShsModel::exit_rate(Mode q) const
{
    double total = 0.0;
    for (const auto &t : transitions)
        if (t.from == q)
            total += t.rate;
    return total;
}

ShsModel build_shs_model(const ShsParameters &params, ResetConvention convention)
{
    params.validate();
    const double lambda = params.arrival_rate;
    const double rho = params.success_prob;
    const double d = params.total_delay;

    // Maps act on the row vector [alpha0, alpha1].
    constexpr ResetMap keep_aomi_clear_pending{{{{1, 0}, {0, 0}}}};
    constexpr ResetMap deliver_pending{{{{0, 0}, {1, 0}}}};
    constexpr ResetMap identity{{{{1, 0}, {0, 1}}}};

    constexpr ResetMap swap_arrival{{{{0, 1}, {0, 0}}}};      // alpha1' = alpha0, alpha0' = 0
    constexpr ResetMap swap_misclassified{{{{1, 1}, {0, 0}}}}; // alpha1' = alpha0, alpha0 kept
    constexpr ResetMap swap_busy{{{{0, 1}, {1, 0}}}};          // exchange

    const bool discard = convention == ResetConvention::Discard;

    ShsModel model;
    model.transitions = {
        {TransitionKind::Arrival, Mode::Idle, Mode::Transmitting, lambda,
         discard ? keep_aomi_clear_pending : swap_arrival},
        {TransitionKind::Success, Mode::Transmitting, Mode::Idle, rho / d, deliver_pending},
        {TransitionKind::Misclassified, Mode::Transmitting, Mode::Idle, (1.0 - rho) / d,
         discard ? keep_aomi_clear_pending : swap_misclassified},
        {TransitionKind::ArrivalBusy, Mode::Transmitting, Mode::Transmitting, lambda,
         discard ? identity : swap_busy},
    };
    return model;
}

} // namespace leoaomi
