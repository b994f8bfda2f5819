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
//   Simulated AoMI and occupancy against the closed form
//   Trace consistency with the reset maps
//   Seeding, batches and permutation

#include <catch_amalgamated.hpp>

#include "leoaomi/aomi_analysis.hpp"
#include "leoaomi/shs_montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace leoaomi;

TEST_CASE("Reference point", "[sim]")
{
    const ShsParameters p{1.0, 0.5, 0.1};
    const auto r = simulate(p, 1e7, 42);
    CHECK_THAT(r.time_avg_aomi, WithinRel(closed_form_aaomi(p), 0.01));
    CHECK(std::abs(r.time_avg_aomi - closed_form_aaomi(p)) < 5.0 * r.aomi_std_error);

    const auto pi = stationary_probs(p);
    CHECK(std::abs(r.occupancy_transmitting - pi.transmitting) < 4.0 * r.occupancy_std_error);
    CHECK_THAT(r.occupancy_idle + r.occupancy_transmitting, WithinAbs(1.0, 1e-12));

    // successes and misclassifications split in the ratio rho : 1 - rho
    const double succ = static_cast<double>(r.event_counts[static_cast<int>(TransitionKind::Success)]);
    const double miss = static_cast<double>(r.event_counts[static_cast<int>(TransitionKind::Misclassified)]);
    CHECK_THAT(succ / (succ + miss), WithinAbs(0.5, 0.002));
    CHECK(r.warmup == 0.01 * 1e7);
}

TEST_CASE("Perfect classification with negligible delay", "[sim]")
{
    const ShsParameters p{2.0, 1.0, 1e-9};
    const auto r = simulate(p, 1e6, 7);
    CHECK_THAT(r.time_avg_aomi, WithinRel(0.5, 0.01));
    CHECK(r.event_counts[static_cast<int>(TransitionKind::Misclassified)] == 0);
}

TEST_CASE("Equal arrival and service load splits occupancy evenly", "[sim]")
{
    const auto r = simulate(ShsParameters{1.0, 0.8, 1.0}, 2e6, 3);
    CHECK_THAT(r.occupancy_transmitting, WithinAbs(0.5, 4.0 * r.occupancy_std_error));
}

TEST_CASE("Trace follows unit growth and the reset maps", "[sim]")
{
    for (auto convention : {ResetConvention::Discard, ResetConvention::Swap})
    {
        const ShsParameters p{1.3, 0.6, 0.4};
        const auto model = build_shs_model(p, convention);
        std::vector<TraceRow> rows;
        SimOptions opt;
        opt.convention = convention;
        opt.trace = [&rows](const TraceRow &r) { rows.push_back(r); };
        simulate(p, 500.0, 99, opt);

        REQUIRE(rows.size() > 100);
        CHECK_FALSE(rows.front().event.has_value());
        for (std::size_t i = 1; i < rows.size(); ++i)
        {
            const auto &prev = rows[i - 1];
            const auto &cur = rows[i];
            REQUIRE(cur.event.has_value());
            REQUIRE(cur.t > prev.t);

            const auto it = std::find_if(model.transitions.begin(), model.transitions.end(),
                                         [&](const Transition &t) { return t.kind == *cur.event; });
            REQUIRE(it != model.transitions.end());
            REQUIRE(it->from == prev.mode);
            REQUIRE(it->to == cur.mode);

            const double dt = cur.t - prev.t;
            const int q = static_cast<int>(prev.mode);
            const std::array<double, 2> before{prev.alpha0 + model.growth[q][0] * dt,
                                               prev.alpha1 + model.growth[q][1] * dt};
            const auto after = it->reset.apply(before);
            REQUIRE_THAT(cur.alpha0, WithinAbs(after[0], 1e-9));
            REQUIRE_THAT(cur.alpha1, WithinAbs(after[1], 1e-9));
        }
    }
}

TEST_CASE("CSV trace writer", "[sim]")
{
    std::ostringstream out;
    SimOptions opt;
    opt.trace = csv_trace_writer(out);
    simulate(ShsParameters{1.0, 0.5, 0.1}, 20.0, 1, opt);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,q,alpha0,alpha1,event");
    std::getline(in, line);
    CHECK(line == "0,0,0,0,init");
    std::size_t n = 0;
    while (std::getline(in, line))
    {
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
        ++n;
    }
    CHECK(n > 5);
}

TEST_CASE("Simulation is deterministic in the seed", "[sim]")
{
    const ShsParameters p{0.7, 0.4, 0.3};
    const auto a = simulate(p, 1e4, 123);
    const auto b = simulate(p, 1e4, 123);
    const auto c = simulate(p, 1e4, 124);
    CHECK(a.time_avg_aomi == b.time_avg_aomi);
    CHECK(a.event_counts == b.event_counts);
    CHECK(a.time_avg_aomi != c.time_avg_aomi);
}

TEST_CASE("Batch entries reproduce single runs and follow permutations", "[sim]")
{
    const std::vector<ShsParameters> params{{1.0, 0.5, 0.1}, {2.0, 0.9, 0.05}, {0.5, 0.3, 1.0}, {1.0, 0.5, 0.1}};
    const auto batch = simulate_batch(params, 2e4, 77);
    REQUIRE(batch.size() == params.size());

    CHECK(batch[0].time_avg_aomi == simulate(params[0], 2e4, batch_entry_seed(77, params[0], 0)).time_avg_aomi);
    CHECK(batch[3].seed == batch_entry_seed(77, params[3], 1));
    CHECK(batch[0].time_avg_aomi != batch[3].time_avg_aomi);

    const std::vector<std::size_t> perm{2, 1, 0, 3};
    std::vector<ShsParameters> shuffled;
    for (auto i : perm)
        shuffled.push_back(params[i]);
    const auto again = simulate_batch(shuffled, 2e4, 77);
    for (std::size_t k = 0; k < perm.size(); ++k)
        CHECK(again[k].time_avg_aomi == batch[perm[k]].time_avg_aomi);

    CHECK_THROWS_AS(simulate_batch(std::vector<ShsParameters>{}, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(simulate_batch(std::vector<ShsParameters>{{1.0, 2.0, 0.1}}, 1.0, 0), std::invalid_argument);
}

TEST_CASE("Exchange-convention simulation matches its own balance solution", "[sim]")
{
    const ShsParameters p{1.0, 0.5, 0.1};
    SimOptions opt;
    opt.convention = ResetConvention::Swap;
    const auto r = simulate(p, 4e6, 8, opt);
    CHECK_THAT(r.time_avg_aomi, WithinRel(solve_correlation_system(p, ResetConvention::Swap).aaomi, 0.015));
}

TEST_CASE("Invalid simulation inputs", "[sim]")
{
    const ShsParameters p{1.0, 0.5, 0.1};
    CHECK_THROWS_AS(simulate(p, 0.0, 1), std::invalid_argument);
    SimOptions opt;
    opt.warmup_fraction = 1.0;
    CHECK_THROWS_AS(simulate(p, 10.0, 1, opt), std::invalid_argument);
    opt.warmup_fraction = 0.0;
    opt.batches = 0;
    CHECK_THROWS_AS(simulate(p, 10.0, 1, opt), std::invalid_argument);
}
