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

#include "leoaomi/experiment.hpp"
#include "leoaomi/aomi_analysis.hpp"
#include "leoaomi/parallel.hpp"
#include "leoaomi/rng.hpp"
#include "leoaomi/shs_montecarlo.hpp"
#include "leoaomi/units.hpp"
#include "serialization_detail.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <tuple>

namespace leoaomi
{

using detail::get_or;
using detail::get_required;

namespace
{

void check_range(const Range &r, const std::string &name)
{
    if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max)
        throw ConfigError("ranges." + name + ": need finite min <= max");
}

Range parse_range(const nlohmann::json &ranges, const std::string &name, Range fallback)
{
    if (!ranges.contains(name))
        return fallback;
    const auto &r = ranges.at(name);
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
        throw ConfigError("ranges." + name + ": expected [min, max]");
    return {r[0].get<double>(), r[1].get<double>()};
}

std::vector<double> parse_power_grid(const nlohmann::json &j)
{
    if (j.is_array())
    {
        std::vector<double> grid;
        for (const auto &p : j)
        {
            if (!p.is_number())
                throw ConfigError("power_grid_w: entries must be numbers");
            grid.push_back(p.get<double>());
        }
        return grid;
    }
    if (j.is_object())
    {
        detail::reject_unknown_keys(j, "power_grid_w", {"min", "max", "points"});
        const double lo = get_required<double>(j, "min", "power_grid_w");
        const double hi = get_required<double>(j, "max", "power_grid_w");
        const int n = get_required<int>(j, "points", "power_grid_w");
        if (!(lo > 0.0) || !(hi > lo) || n < 2)
            throw ConfigError("power_grid_w: log grid needs 0 < min < max and at least 2 points");
        std::vector<double> grid(static_cast<std::size_t>(n));
        const double a = std::log10(lo);
        const double step = (std::log10(hi) - a) / (n - 1);
        for (int i = 0; i < n; ++i)
            grid[static_cast<std::size_t>(i)] = std::pow(10.0, a + step * i);
        grid.front() = lo;
        grid.back() = hi;
        return grid;
    }
    throw ConfigError("power_grid_w: expected a list of watts or {min, max, points}");
}

std::string row_context(double altitude, const std::string &scheme, double power)
{
    return "altitude " + format_number(altitude) + " m, scheme " + scheme + ", power " + format_number(power) + " W";
}

// rho, D_total and AAoMI for one user under one scheme at one power.
UserPoint evaluate_user(const Scenario &scenario, const SchemeConfig &scheme, const UserChannel &user, double power_w,
                        std::span<const double> gains)
{
    const auto acc = expected_accuracy(scheme.accuracy, user.with_transmit_power(power_w), gains, scheme.name);
    UserPoint pt;
    pt.user_id = user.user_id;
    pt.rho = acc.rho;
    pt.rho_std_error = acc.std_error;
    pt.total_delay_s = total_delay(scheme, user.user_id);
    pt.aaomi_s = closed_form_aaomi({scenario.source.arrival_rate, pt.rho, pt.total_delay_s});
    return pt;
}

std::vector<std::vector<double>> fading_gains(const std::vector<UserChannel> &users, std::size_t samples)
{
    std::vector<std::vector<double>> gains(users.size());
    for (std::size_t u = 0; u < users.size(); ++u)
        gains[u] = sample_fading_power(users[u].fading, samples);
    return gains;
}

} // namespace

void Scenario::validate() const
{
    if (population_size < 1)
        throw ConfigError("population_size must be at least 1");
    check_range(ranges.elevation_deg, "elevation_deg");
    check_range(ranges.rain_mm_h, "rain_mm_h");
    check_range(ranges.k_factor_db, "k_factor_db");
    check_range(ranges.satellite_gain_dbi, "satellite_gain_dbi");
    check_range(ranges.user_gain_dbi, "user_gain_dbi");
    if (!(ranges.elevation_deg.min > 0.0) || ranges.elevation_deg.max > 90.0)
        throw ConfigError("ranges.elevation_deg must lie in (0, 90]");
    if (ranges.rain_mm_h.min < 0.0)
        throw ConfigError("ranges.rain_mm_h must be non-negative");

    try
    {
        source.validate();
        constants.rain.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    if (!(constants.earth_radius_m > 0.0) || !(constants.carrier_hz > 0.0))
        throw ConfigError("constants: earth radius and carrier frequency must be positive");
    if (!(constants.symbol_duration_s > 0.0) || !(constants.encode_delay_s >= 0.0))
        throw ConfigError("constants: symbol duration must be positive and encode delay non-negative");

    if (altitudes_m.empty())
        throw ConfigError("altitudes_m must not be empty");
    for (double a : altitudes_m)
        if (!(a > 0.0))
            throw ConfigError("altitudes_m: altitudes must be positive");
    if (std::set<double>(altitudes_m.begin(), altitudes_m.end()).size() != altitudes_m.size())
        throw ConfigError("altitudes_m: duplicate altitude");

    if (power_grid_w.empty())
        throw ConfigError("power_grid_w must not be empty");
    for (std::size_t i = 0; i < power_grid_w.size(); ++i)
    {
        if (!(power_grid_w[i] > 0.0) || !std::isfinite(power_grid_w[i]))
            throw ConfigError("power_grid_w: powers must be positive");
        if (i > 0 && !(power_grid_w[i] > power_grid_w[i - 1]))
            throw ConfigError("power_grid_w: powers must be strictly increasing");
    }

    if (schemes.empty())
        throw ConfigError("schemes must not be empty");
    std::set<std::string> names;
    for (const auto &s : schemes)
    {
        if (s.name.find_first_of(",\"\n\r") != std::string::npos)
            throw ConfigError("scheme name '" + s.name + "' must not contain commas, quotes or newlines");
        if (!names.insert(s.name).second)
            throw ConfigError("duplicate scheme name '" + s.name + "'");
        try
        {
            s.validate(source);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
    }

    if (!(threshold_s > 0.0))
        throw ConfigError("threshold_s must be positive");
    if (mc_samples < 1)
        throw ConfigError("mc_samples must be at least 1");
}

Scenario parse_scenario(const nlohmann::json &j, const std::filesystem::path &base_dir)
{
    detail::require_object(j, "scenario");
    detail::reject_unknown_keys(j, "scenario",
                                {"description", "population_size", "master_seed", "mc_samples", "threshold_s", "source",
                                 "constants", "ranges", "altitudes_m", "power_grid_w", "schemes"});
    Scenario sc;
    sc.population_size = get_required<int>(j, "population_size", "scenario");
    sc.master_seed = get_required<std::uint64_t>(j, "master_seed", "scenario");
    sc.mc_samples = get_or<std::size_t>(j, "mc_samples", sc.mc_samples, "scenario");
    sc.threshold_s = get_required<double>(j, "threshold_s", "scenario");
    sc.source = source_from_json(get_required<nlohmann::json>(j, "source", "scenario"));

    if (j.contains("constants"))
    {
        const auto &c = j.at("constants");
        detail::require_object(c, "constants");
        detail::reject_unknown_keys(c, "constants",
                                    {"earth_radius_m", "carrier_hz", "noise_power_dbm", "kappa", "beta",
                                     "symbol_duration_s", "encode_delay_s", "rain_path"});
        auto &k = sc.constants;
        k.earth_radius_m = get_or(c, "earth_radius_m", k.earth_radius_m, "constants");
        k.carrier_hz = get_or(c, "carrier_hz", k.carrier_hz, "constants");
        k.noise_power_dbm = get_or(c, "noise_power_dbm", k.noise_power_dbm, "constants");
        k.rain.kappa = get_or(c, "kappa", k.rain.kappa, "constants");
        k.rain.beta = get_or(c, "beta", k.rain.beta, "constants");
        k.symbol_duration_s = get_or(c, "symbol_duration_s", k.symbol_duration_s, "constants");
        k.encode_delay_s = get_or(c, "encode_delay_s", k.encode_delay_s, "constants");
        if (c.contains("rain_path"))
        {
            const auto &rp = c.at("rain_path");
            detail::require_object(rp, "constants.rain_path");
            detail::reject_unknown_keys(rp, "constants.rain_path",
                                        {"rate_coefficient", "rate_exponent", "elevation_term", "elevation_offset"});
            k.rain.rate_coefficient = get_or(rp, "rate_coefficient", k.rain.rate_coefficient, "rain_path");
            k.rain.rate_exponent = get_or(rp, "rate_exponent", k.rain.rate_exponent, "rain_path");
            k.rain.elevation_term = get_or(rp, "elevation_term", k.rain.elevation_term, "rain_path");
            k.rain.elevation_offset = get_or(rp, "elevation_offset", k.rain.elevation_offset, "rain_path");
        }
    }

    if (j.contains("ranges"))
    {
        const auto &r = j.at("ranges");
        detail::require_object(r, "ranges");
        detail::reject_unknown_keys(r, "ranges",
                                    {"elevation_deg", "rain_mm_h", "k_factor_db", "satellite_gain_dbi", "user_gain_dbi"});
        auto &g = sc.ranges;
        g.elevation_deg = parse_range(r, "elevation_deg", g.elevation_deg);
        g.rain_mm_h = parse_range(r, "rain_mm_h", g.rain_mm_h);
        g.k_factor_db = parse_range(r, "k_factor_db", g.k_factor_db);
        g.satellite_gain_dbi = parse_range(r, "satellite_gain_dbi", g.satellite_gain_dbi);
        g.user_gain_dbi = parse_range(r, "user_gain_dbi", g.user_gain_dbi);
    }

    sc.altitudes_m = get_required<std::vector<double>>(j, "altitudes_m", "scenario");
    if (!j.contains("power_grid_w"))
        throw ConfigError("scenario: missing 'power_grid_w'");
    sc.power_grid_w = parse_power_grid(j.at("power_grid_w"));

    const auto schemes = get_required<nlohmann::json>(j, "schemes", "scenario");
    if (!schemes.is_array())
        throw ConfigError("schemes: expected a list");
    const SchemeDefaults defaults{sc.constants.symbol_duration_s, sc.constants.encode_delay_s};
    for (const auto &s : schemes)
        sc.schemes.push_back(scheme_from_json(s, sc.source, defaults, base_dir));

    sc.validate();
    return sc;
}

Scenario load_scenario(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario file " + path.string());
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_scenario(j, path.parent_path());
}

std::vector<UserChannel> sample_population(const Scenario &scenario, double altitude_m)
{
    scenario.validate();
    if (!(altitude_m > 0.0))
        throw ConfigError("sample_population: altitude must be positive");

    const auto &r = scenario.ranges;
    const auto &k = scenario.constants;
    std::vector<UserChannel> users;
    users.reserve(static_cast<std::size_t>(scenario.population_size));
    for (int u = 0; u < scenario.population_size; ++u)
    {
        Engine engine(derive_seed(scenario.master_seed, {kStreamPopulation, static_cast<std::uint64_t>(u)}));
        auto draw = [&engine](const Range &range) {
            std::uniform_real_distribution<double> dist(range.min, range.max);
            return range.min == range.max ? range.min : dist(engine);
        };

        UserChannel user;
        user.user_id = u;
        const double elevation_deg = draw(r.elevation_deg);
        user.rain = k.rain;
        user.rain.rain_rate_mm_h = draw(r.rain_mm_h);
        const double k_db = draw(r.k_factor_db);
        user.budget.satellite_gain_dbi = draw(r.satellite_gain_dbi);
        user.budget.user_gain_dbi = draw(r.user_gain_dbi);
        user.budget.noise_power_dbm = k.noise_power_dbm;
        user.budget.transmit_power_w = scenario.power_grid_w.front();
        user.geometry = LinkGeometry::from_degrees(elevation_deg, altitude_m, k.earth_radius_m, k.carrier_hz);
        user.fading.k_factor = db_to_linear(k_db);
        user.fading.rng_seed = derive_seed(scenario.master_seed, {kStreamFading, static_cast<std::uint64_t>(u)});
        user.validate();
        users.push_back(user);
    }
    return users;
}

SweepResult run_sweep(const Scenario &scenario)
{
    scenario.validate();

    std::vector<std::vector<UserChannel>> populations;
    for (double altitude : scenario.altitudes_m)
        populations.push_back(sample_population(scenario, altitude));
    // Fading seeds depend on the user only, so one set of draws serves every
    // altitude, scheme and power.
    const auto gains = fading_gains(populations.front(), scenario.mc_samples);

    const std::size_t n_alt = scenario.altitudes_m.size();
    const std::size_t n_sch = scenario.schemes.size();
    const std::size_t n_pow = scenario.power_grid_w.size();

    SweepResult result;
    result.rows.resize(n_alt * n_sch * n_pow);
    parallel_for(result.rows.size(), [&](std::size_t cell) {
        const std::size_t a = cell / (n_sch * n_pow);
        const std::size_t s = (cell / n_pow) % n_sch;
        const std::size_t p = cell % n_pow;
        const auto &scheme = scenario.schemes[s];

        SweepRow row;
        row.altitude_m = scenario.altitudes_m[a];
        row.scheme = scheme.name;
        row.power_w = scenario.power_grid_w[p];
        try
        {
            std::vector<double> aaomi;
            double acc_sum = 0.0;
            for (std::size_t u = 0; u < populations[a].size(); ++u)
            {
                const auto pt = evaluate_user(scenario, scheme, populations[a][u], row.power_w, gains[u]);
                acc_sum += pt.rho;
                aaomi.push_back(pt.aaomi_s);
                row.per_user.push_back(pt);
            }
            const auto report = compliance_ratio(aaomi, scenario.threshold_s);
            row.mean_accuracy = acc_sum / static_cast<double>(row.per_user.size());
            row.network_aaomi_s = report.network_aaomi;
            row.compliance_ratio = report.compliance_ratio;
        }
        catch (const std::exception &e)
        {
            throw std::runtime_error(row_context(row.altitude_m, row.scheme, row.power_w) + ": " + e.what());
        }
        result.rows[cell] = std::move(row);
    });

    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow &x, const SweepRow &y) {
        return std::tie(x.altitude_m, x.scheme, x.power_w) < std::tie(y.altitude_m, y.scheme, y.power_w);
    });
    return result;
}

std::string format_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void emit_results(const SweepResult &result, const std::filesystem::path &out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());

    auto open = [&out_dir](const char *name) {
        std::ofstream f(out_dir / name, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot write " + (out_dir / name).string());
        return f;
    };

    auto accuracy = open("accuracy.csv");
    auto aaomi = open("aaomi.csv");
    auto compliance = open("compliance.csv");
    auto per_user = open("per_user.csv");

    const char *summary_header = "altitude_m,scheme,power_w,value\n";
    accuracy << summary_header;
    aaomi << summary_header;
    compliance << summary_header;
    per_user << "altitude_m,scheme,power_w,user_id,rho,aaomi_s\n";

    for (const auto &row : result.rows)
    {
        const std::string key = format_number(row.altitude_m) + "," + row.scheme + "," + format_number(row.power_w);
        accuracy << key << ',' << format_number(row.mean_accuracy) << '\n';
        aaomi << key << ',' << format_number(row.network_aaomi_s) << '\n';
        compliance << key << ',' << format_number(row.compliance_ratio) << '\n';
        for (const auto &pt : row.per_user)
            per_user << key << ',' << pt.user_id << ',' << format_number(pt.rho) << ',' << format_number(pt.aaomi_s)
                     << '\n';
    }

    for (auto *f : {&accuracy, &aaomi, &compliance, &per_user})
    {
        f->flush();
        if (!*f)
            throw std::runtime_error("write failed in " + out_dir.string());
    }
}

ValidationReport validate_mode(const Scenario &scenario, double tolerance, std::optional<double> horizon_s)
{
    if (!(tolerance > 0.0))
        throw std::invalid_argument("validate_mode: tolerance must be positive");
    scenario.validate();

    ValidationReport report;
    report.tolerance = tolerance;
    report.horizon_s = horizon_s.value_or(1e6 / scenario.source.arrival_rate);
    if (!(report.horizon_s > 0.0))
        throw std::invalid_argument("validate_mode: horizon must be positive");

    const auto &grid = scenario.power_grid_w;
    std::set<std::size_t> power_idx{0, grid.size() / 2, grid.size() - 1};

    std::vector<ShsParameters> params;
    for (double altitude : scenario.altitudes_m)
    {
        const auto users = sample_population(scenario, altitude);
        const auto gains = fading_gains(users, scenario.mc_samples);
        for (const auto &scheme : scenario.schemes)
            for (std::size_t p : power_idx)
                for (std::size_t u = 0; u < users.size(); ++u)
                {
                    const auto pt = evaluate_user(scenario, scheme, users[u], grid[p], gains[u]);
                    ValidationEntry e;
                    e.altitude_m = altitude;
                    e.scheme = scheme.name;
                    e.power_w = grid[p];
                    e.user_id = pt.user_id;
                    e.closed_form_s = pt.aaomi_s;
                    report.entries.push_back(e);
                    params.push_back({scenario.source.arrival_rate, pt.rho, pt.total_delay_s});
                }
    }

    const auto sims = simulate_batch(params, report.horizon_s,
                                     derive_seed(scenario.master_seed, {kStreamValidation}));
    for (std::size_t i = 0; i < sims.size(); ++i)
    {
        auto &e = report.entries[i];
        e.simulated_s = sims[i].time_avg_aomi;
        e.std_error_s = sims[i].aomi_std_error;
        e.relative_deviation = std::abs(e.simulated_s - e.closed_form_s) / e.closed_form_s;
        report.max_relative_deviation = std::max(report.max_relative_deviation, e.relative_deviation);
    }
    report.passed = report.max_relative_deviation <= tolerance;
    return report;
}

} // namespace leoaomi
