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

#include "leoaomi/shs_montecarlo.hpp"
#include "leoaomi/parallel.hpp"
#include "leoaomi/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace leoaomi
{

namespace
{

// Time-weighted accumulators over the post-warm-up window, split into equal
// batches for batch-means error estimates.
class WindowAccumulator
{
  public:
    WindowAccumulator(double start, double end, std::size_t batches)
        : start_(start), length_((end - start) / static_cast<double>(batches)), aomi_(batches, 0.0),
          busy_(batches, 0.0)
    {
    }

    // Adds the segment [t0, t1) during which alpha0 starts at a0 and grows at
    // `growth`.
    void add(double t0, double t1, double a0, double growth, bool busy)
    {
        double s = std::max(t0, start_);
        if (s >= t1)
            return;
        double a = a0 + growth * (s - t0);
        std::size_t b = batch_of(s);
        while (s < t1)
        {
            const double boundary = b + 1 < aomi_.size() ? start_ + static_cast<double>(b + 1) * length_ : t1;
            const double e = std::max(s, std::min(t1, boundary));
            const double dt = e - s;
            aomi_[b] += a * dt + 0.5 * growth * dt * dt;
            if (busy)
                busy_[b] += dt;
            a += growth * dt;
            s = e;
            if (s < t1)
                ++b;
        }
    }

    bool contains(double t) const { return t >= start_; }

    void finish(SimResult &out) const
    {
        const double n = static_cast<double>(aomi_.size());
        double aomi_sum = 0.0;
        double busy_sum = 0.0;
        for (std::size_t b = 0; b < aomi_.size(); ++b)
        {
            aomi_sum += aomi_[b];
            busy_sum += busy_[b];
        }
        const double window = length_ * n;
        out.time_avg_aomi = aomi_sum / window;
        out.occupancy_transmitting = busy_sum / window;
        out.occupancy_idle = 1.0 - out.occupancy_transmitting;

        if (aomi_.size() > 1)
        {
            double va = 0.0;
            double vb = 0.0;
            for (std::size_t b = 0; b < aomi_.size(); ++b)
            {
                const double da = aomi_[b] / length_ - out.time_avg_aomi;
                const double db = busy_[b] / length_ - out.occupancy_transmitting;
                va += da * da;
                vb += db * db;
            }
            out.aomi_std_error = std::sqrt(va / (n - 1.0) / n);
            out.occupancy_std_error = std::sqrt(vb / (n - 1.0) / n);
        }
    }

  private:
    std::size_t batch_of(double t) const
    {
        const auto b = static_cast<std::size_t>((t - start_) / length_);
        return std::min(b, aomi_.size() - 1);
    }

    double start_;
    double length_;
    std::vector<double> aomi_;
    std::vector<double> busy_;
};

void validate_model(const ShsModel &model)
{
    for (const auto &t : model.transitions)
        if (!(t.rate >= 0.0) || !std::isfinite(t.rate))
            throw std::invalid_argument("simulate: transition rates must be finite and non-negative");
}

} // namespace

SimResult simulate(const ShsModel &model, double horizon, std::uint64_t seed, const SimOptions &options)
{
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("simulate: horizon must be positive and finite");
    if (!(options.warmup_fraction >= 0.0 && options.warmup_fraction < 1.0))
        throw std::invalid_argument("simulate: warm-up fraction must lie in [0, 1)");
    if (options.batches < 1)
        throw std::invalid_argument("simulate: need at least one batch");
    validate_model(model);

    // Outgoing transitions and total exit rate per mode.
    std::array<std::vector<const Transition *>, 2> outgoing;
    std::array<double, 2> exit_rate{0.0, 0.0};
    for (const auto &t : model.transitions)
    {
        outgoing[static_cast<int>(t.from)].push_back(&t);
        exit_rate[static_cast<int>(t.from)] += t.rate;
    }

    Engine engine(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SimResult result;
    result.horizon = horizon;
    result.warmup = options.warmup_fraction * horizon;
    result.seed = seed;
    WindowAccumulator window(result.warmup, horizon, options.batches);

    ShsState s;
    if (options.trace)
        options.trace({s.clock, s.mode, s.age_current, s.age_pending, std::nullopt});

    while (true)
    {
        const int q = static_cast<int>(s.mode);
        const double rate = exit_rate[q];
        const double dt = rate > 0.0 ? -std::log1p(-unit(engine)) / rate : std::numeric_limits<double>::infinity();
        const double next = s.clock + dt;

        window.add(s.clock, std::min(next, horizon), s.age_current, model.growth[q][0], s.mode == Mode::Transmitting);
        if (next >= horizon)
            break;

        s.age_current += model.growth[q][0] * dt;
        s.age_pending += model.growth[q][1] * dt;
        s.clock = next;

        // Race between the outgoing clocks: pick proportionally to rate.
        const double pick = unit(engine) * rate;
        const Transition *fired = outgoing[q].back();
        double cumulative = 0.0;
        for (const Transition *t : outgoing[q])
        {
            cumulative += t->rate;
            if (pick < cumulative)
            {
                fired = t;
                break;
            }
        }

        const auto alpha = fired->reset.apply({s.age_current, s.age_pending});
        s.age_current = alpha[0];
        s.age_pending = alpha[1];
        s.mode = fired->to;
        if (window.contains(s.clock))
            ++result.event_counts[static_cast<std::size_t>(fired->kind)];
        if (options.trace)
            options.trace({s.clock, s.mode, s.age_current, s.age_pending, fired->kind});
    }

    window.finish(result);
    return result;
}

SimResult simulate(const ShsParameters &params, double horizon, std::uint64_t seed, const SimOptions &options)
{
    return simulate(build_shs_model(params, options.convention), horizon, seed, options);
}

std::uint64_t batch_entry_seed(std::uint64_t master_seed, const ShsParameters &params, std::uint64_t occurrence)
{
    return derive_seed(master_seed, {kStreamBatch, std::bit_cast<std::uint64_t>(params.arrival_rate),
                                     std::bit_cast<std::uint64_t>(params.success_prob),
                                     std::bit_cast<std::uint64_t>(params.total_delay), occurrence});
}

std::vector<SimResult> simulate_batch(std::span<const ShsParameters> params_list, double horizon,
                                      std::uint64_t master_seed, const SimOptions &options)
{
    if (params_list.empty())
        throw std::invalid_argument("simulate_batch: empty batch");

    using Key = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;
    std::map<Key, std::uint64_t> seen;
    std::vector<std::uint64_t> seeds;
    seeds.reserve(params_list.size());
    for (const auto &p : params_list)
    {
        p.validate();
        const Key key{std::bit_cast<std::uint64_t>(p.arrival_rate), std::bit_cast<std::uint64_t>(p.success_prob),
                      std::bit_cast<std::uint64_t>(p.total_delay)};
        seeds.push_back(batch_entry_seed(master_seed, p, seen[key]++));
    }

    // A shared trace callback would interleave runs.
    SimOptions run_options = options;
    run_options.trace = nullptr;

    std::vector<SimResult> results(params_list.size());
    parallel_for(params_list.size(),
                 [&](std::size_t i) { results[i] = simulate(params_list[i], horizon, seeds[i], run_options); });
    return results;
}

std::function<void(const TraceRow &)> csv_trace_writer(std::ostream &out)
{
    out << "t,q,alpha0,alpha1,event\n";
    return [&out](const TraceRow &row) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,", row.t, static_cast<int>(row.mode), row.alpha0,
                      row.alpha1);
        out << buf << (row.event ? to_string(*row.event) : std::string_view("init")) << '\n';
    };
}

} // namespace leoaomi
