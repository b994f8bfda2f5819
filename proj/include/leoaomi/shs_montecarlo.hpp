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

#include "leoaomi/aomi_analysis.hpp"
#include "leoaomi/shs_model.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

// Event-driven simulation of the AoMI hybrid system. The mode process is a
// continuous-time Markov jump process; ages grow linearly between events, so
// the time integral of alpha0 is accumulated exactly (no time stepping).

namespace leoaomi
{

struct ShsState
{
    Mode mode = Mode::Idle;
    double age_current = 0.0; // alpha0
    double age_pending = 0.0; // alpha1
    double clock = 0.0;
};

/// One sample-path point, recorded right after an event (or at t = 0).
struct TraceRow
{
    double t = 0.0;
    Mode mode = Mode::Idle;
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    std::optional<TransitionKind> event;
};

struct SimOptions
{
    /// Leading fraction of the horizon excluded from all averages.
    double warmup_fraction = 0.01;
    /// Number of equal batches used for batch-means standard errors.
    std::size_t batches = 100;
    ResetConvention convention = ResetConvention::Discard;
    /// Called for the initial state and after every event when set.
    std::function<void(const TraceRow &)> trace;
};

struct SimResult
{
    double time_avg_aomi = 0.0;
    double aomi_std_error = 0.0;
    double occupancy_idle = 0.0;
    double occupancy_transmitting = 0.0;
    double occupancy_std_error = 0.0;
    std::array<std::uint64_t, kTransitionKinds> event_counts{};
    double horizon = 0.0;
    double warmup = 0.0;
    std::uint64_t seed = 0;
};

/// Runs one trajectory from q = 0, alpha = 0 up to `horizon` seconds.
/// Deterministic for a given seed.
SimResult simulate(const ShsModel &model, double horizon, std::uint64_t seed, const SimOptions &options = {});
SimResult simulate(const ShsParameters &params, double horizon, std::uint64_t seed, const SimOptions &options = {});

/// Seed used for one batch entry: a function of the master seed, the
/// parameter values and how many equal entries precede it, never of its
/// position, so permuting the batch permutes the results.
std::uint64_t batch_entry_seed(std::uint64_t master_seed, const ShsParameters &params, std::uint64_t occurrence = 0);

/// Simulates every entry on its own substream, in parallel. Result i belongs
/// to params_list[i].
std::vector<SimResult> simulate_batch(std::span<const ShsParameters> params_list, double horizon,
                                      std::uint64_t master_seed, const SimOptions &options = {});

/// Writes the `t,q,alpha0,alpha1,event` header and returns a trace callback
/// that appends rows to `out`.
std::function<void(const TraceRow &)> csv_trace_writer(std::ostream &out);

} // namespace leoaomi
