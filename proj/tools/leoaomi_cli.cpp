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

// leoaomi: power sweeps and derivation checks for AoMI over LEO downlinks.
//
//   leoaomi sweep    --scenario s.json --out results/ [--seed N]
//   leoaomi validate --scenario s.json [--seed N] [--horizon T] [--tolerance 0.02] [--out dir]
//   leoaomi trace    --scenario s.json --out dir [--horizon T] [--scheme NAME] [--user U]
//                    [--power-index P] [--altitude-index A] [--seed N]
//
// Exit status: 0 success, 1 validation failure, 2 configuration error,
// 3 any other runtime failure (e.g. I/O).

#include "leoaomi/aomi_analysis.hpp"
#include "leoaomi/experiment.hpp"
#include "leoaomi/shs_montecarlo.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

leoaomi::Scenario load(const std::string &path, std::optional<std::uint64_t> seed)
{
    auto scenario = leoaomi::load_scenario(path);
    if (seed)
        scenario.master_seed = *seed;
    return scenario;
}

int run_sweep(const std::string &scenario_path, std::optional<std::uint64_t> seed, const std::string &out)
{
    const auto scenario = load(scenario_path, seed);
    const auto result = leoaomi::run_sweep(scenario);
    leoaomi::emit_results(result, out);
    std::cout << "wrote " << result.rows.size() << " rows to " << out << '\n';
    return kExitOk;
}

int run_validate(const std::string &scenario_path, std::optional<std::uint64_t> seed, std::optional<double> horizon,
                 double tolerance, const std::string &out)
{
    const auto scenario = load(scenario_path, seed);
    const auto report = leoaomi::validate_mode(scenario, tolerance, horizon);

    if (!out.empty())
    {
        std::filesystem::create_directories(out);
        std::ofstream f(std::filesystem::path(out) / "validation.csv", std::ios::binary);
        f << "altitude_m,scheme,power_w,user_id,closed_form_s,simulated_s,std_error_s,relative_deviation\n";
        for (const auto &e : report.entries)
            f << leoaomi::format_number(e.altitude_m) << ',' << e.scheme << ',' << leoaomi::format_number(e.power_w)
              << ',' << e.user_id << ',' << leoaomi::format_number(e.closed_form_s) << ','
              << leoaomi::format_number(e.simulated_s) << ',' << leoaomi::format_number(e.std_error_s) << ','
              << leoaomi::format_number(e.relative_deviation) << '\n';
        if (!f)
            throw std::runtime_error("cannot write validation.csv in " + out);
    }

    std::cout << "validated " << report.entries.size() << " (altitude, scheme, power, user) points at horizon "
              << leoaomi::format_number(report.horizon_s) << " s\n"
              << "max relative deviation " << leoaomi::format_number(report.max_relative_deviation)
              << " (tolerance " << leoaomi::format_number(report.tolerance) << "): "
              << (report.passed ? "PASS" : "FAIL") << '\n';
    return report.passed ? kExitOk : kExitValidationFailed;
}

struct TraceSelection
{
    std::string scheme;
    int user = 0;
    std::size_t power_index = 0;
    std::size_t altitude_index = 0;
};

int run_trace(const std::string &scenario_path, std::optional<std::uint64_t> seed, double horizon,
              const TraceSelection &sel, const std::string &out)
{
    const auto scenario = load(scenario_path, seed);
    if (sel.altitude_index >= scenario.altitudes_m.size() || sel.power_index >= scenario.power_grid_w.size() ||
        sel.user < 0 || sel.user >= scenario.population_size)
        throw leoaomi::ConfigError("trace: altitude, power or user index out of range");

    const auto &schemes = scenario.schemes;
    auto it = sel.scheme.empty() ? schemes.begin()
                                 : std::find_if(schemes.begin(), schemes.end(),
                                                [&](const auto &s) { return s.name == sel.scheme; });
    if (it == schemes.end())
        throw leoaomi::ConfigError("trace: unknown scheme '" + sel.scheme + "'");

    const auto users = leoaomi::sample_population(scenario, scenario.altitudes_m[sel.altitude_index]);
    const auto &user = users[static_cast<std::size_t>(sel.user)];
    const double power = scenario.power_grid_w[sel.power_index];
    const auto acc = leoaomi::expected_accuracy(it->accuracy, user.with_transmit_power(power), scenario.mc_samples,
                                                it->name);
    const leoaomi::ShsParameters params{scenario.source.arrival_rate, acc.rho, leoaomi::total_delay(*it, user.user_id)};

    std::filesystem::create_directories(out);
    const auto path = std::filesystem::path(out) / "trace.csv";
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());

    leoaomi::SimOptions options;
    options.trace = leoaomi::csv_trace_writer(f);
    const auto result = leoaomi::simulate(params, horizon, scenario.master_seed, options);
    f.flush();
    if (!f)
        throw std::runtime_error("write failed for " + path.string());

    std::cout << "user " << user.user_id << ", scheme " << it->name << ", " << leoaomi::format_number(power)
              << " W: rho " << leoaomi::format_number(params.success_prob) << ", D "
              << leoaomi::format_number(params.total_delay) << " s\n"
              << "time-average AoMI " << leoaomi::format_number(result.time_avg_aomi) << " s (closed form "
              << leoaomi::format_number(leoaomi::closed_form_aaomi(params)) << " s); trace in " << path.string()
              << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"AoMI power sweeps and derivation checks for LEO satellite downlinks"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<double> horizon;
    double tolerance = 0.02;
    TraceSelection sel;

    auto *sweep = app.add_subcommand("sweep", "Run the transmit-power sweep and write figure CSVs");
    sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out, "Output directory")->required();
    sweep->add_option("--seed", seed, "Override the scenario master seed");

    auto *validate = app.add_subcommand("validate", "Compare simulated AoMI with the closed form");
    validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    validate->add_option("--seed", seed, "Override the scenario master seed");
    validate->add_option("--horizon", horizon, "Simulated seconds per point (default 1e6 / lambda)")
        ->check(CLI::PositiveNumber);
    validate->add_option("--tolerance", tolerance, "Maximum relative deviation")->check(CLI::PositiveNumber);
    validate->add_option("--out", out, "Optional directory for validation.csv");

    double trace_horizon = 100.0;
    auto *trace = app.add_subcommand("trace", "Dump one simulated AoMI sample path as CSV");
    trace->add_option("--scenario", scenario_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    trace->add_option("--out", out, "Output directory (trace.csv)")->required();
    trace->add_option("--seed", seed, "Override the scenario master seed");
    trace->add_option("--horizon", trace_horizon, "Simulated seconds")->check(CLI::PositiveNumber);
    trace->add_option("--scheme", sel.scheme, "Scheme name (default: first scheme)");
    trace->add_option("--user", sel.user, "User index");
    trace->add_option("--power-index", sel.power_index, "Index into the power grid");
    trace->add_option("--altitude-index", sel.altitude_index, "Index into the altitude list");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try
    {
        if (*sweep)
            return run_sweep(scenario_path, seed, out);
        if (*validate)
            return run_validate(scenario_path, seed, horizon, tolerance, out);
        return run_trace(scenario_path, seed, trace_horizon, sel, out);
    }
    catch (const leoaomi::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
