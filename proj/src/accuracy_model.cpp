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

#include "leoaomi/accuracy_model.hpp"
#include "leoaomi/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace leoaomi
{

AccuracyProfile AccuracyProfile::sigmoid(double floor, double ceiling, double midpoint_db, double slope_per_db)
{
    AccuracyProfile p;
    p.kind = Kind::Sigmoid;
    p.floor = floor;
    p.ceiling = ceiling;
    p.midpoint_db = midpoint_db;
    p.slope_per_db = slope_per_db;
    p.validate();
    return p;
}

AccuracyProfile AccuracyProfile::tabulated(std::vector<std::pair<double, double>> rows)
{
    AccuracyProfile p;
    p.kind = Kind::Tabulated;
    p.table = std::move(rows);
    p.midpoint_db = 0.0;
    p.slope_per_db = 0.0;
    if (!p.table.empty())
    {
        auto [lo, hi] = std::minmax_element(p.table.begin(), p.table.end(),
                                            [](const auto &a, const auto &b) { return a.second < b.second; });
        p.floor = lo->second;
        p.ceiling = hi->second;
    }
    p.validate();
    return p;
}

AccuracyProfile AccuracyProfile::constant(double accuracy)
{
    return sigmoid(accuracy, accuracy, 0.0, 1.0);
}

void AccuracyProfile::validate() const
{
    if (!(floor >= 0.0 && floor <= ceiling && ceiling <= 1.0))
        throw std::invalid_argument("AccuracyProfile: need 0 <= floor <= ceiling <= 1");

    if (kind == Kind::Sigmoid)
    {
        if (!std::isfinite(midpoint_db) || !(slope_per_db >= 0.0) || !std::isfinite(slope_per_db))
            throw std::invalid_argument("AccuracyProfile: sigmoid needs a finite midpoint and slope >= 0");
        return;
    }

    if (table.size() < 2)
        throw std::invalid_argument("AccuracyProfile: table needs at least 2 rows");
    for (std::size_t i = 0; i < table.size(); ++i)
    {
        const auto &[snr, acc] = table[i];
        if (!std::isfinite(snr) || !(acc >= 0.0 && acc <= 1.0))
            throw std::invalid_argument("AccuracyProfile: table row " + std::to_string(i) +
                                        " has a non-finite SNR or an accuracy outside [0, 1]");
        if (i > 0 && !(snr > table[i - 1].first))
            throw std::invalid_argument("AccuracyProfile: table SNR column must be strictly increasing");
    }
}

double accuracy_at_snr(const AccuracyProfile &profile, double snr_db)
{
    if (profile.kind == AccuracyProfile::Kind::Sigmoid)
    {
        const double span = profile.ceiling - profile.floor;
        return profile.floor + span / (1.0 + std::exp(-profile.slope_per_db * (snr_db - profile.midpoint_db)));
    }

    const auto &t = profile.table;
    if (t.size() < 2)
        throw std::invalid_argument("accuracy_at_snr: malformed table");
    if (snr_db <= t.front().first)
        return t.front().second;
    if (snr_db >= t.back().first)
        return t.back().second;
    auto hi = std::upper_bound(t.begin(), t.end(), snr_db, [](double x, const auto &row) { return x < row.first; });
    auto lo = hi - 1;
    const double w = (snr_db - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

UserAccuracy expected_accuracy(const AccuracyProfile &profile, const UserChannel &user,
                               std::span<const double> fading_gains, std::string scheme)
{
    if (fading_gains.empty())
        throw std::invalid_argument("expected_accuracy: need at least one fading sample");

    const double mean_snr = mean_snr_linear(user);
    const double n = static_cast<double>(fading_gains.size());

    double sum = 0.0;
    double sum_sq = 0.0;
    for (double g : fading_gains)
    {
        // 10 log10(0) = -inf, which the profiles map to their floor
        const double snr = mean_snr * g;
        const double acc = accuracy_at_snr(profile, snr > 0.0 ? linear_to_db(snr)
                                                              : -std::numeric_limits<double>::infinity());
        sum += acc;
        sum_sq += acc * acc;
    }
    const double mean = sum / n;
    const double var = fading_gains.size() > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;

    UserAccuracy out;
    out.user_id = user.user_id;
    out.scheme = std::move(scheme);
    out.rho = std::clamp(mean, 0.0, 1.0 - kAccuracyClamp);
    out.sample_count = fading_gains.size();
    out.std_error = std::sqrt(var / n);
    return out;
}

UserAccuracy expected_accuracy(const AccuracyProfile &profile, const UserChannel &user, std::size_t samples,
                               std::string scheme)
{
    const auto gains = sample_fading_power(user.fading, samples);
    return expected_accuracy(profile, user, gains, std::move(scheme));
}

namespace
{

std::string trim(std::string s)
{
    const char *ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double parse_field(const std::string &text, const std::filesystem::path &path, std::size_t line)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(text, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw std::invalid_argument(path.string() + ":" + std::to_string(line) + ": not a number: '" + text + "'");
    return v;
}

} // namespace

AccuracyProfile load_profile_csv(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open accuracy profile " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument(path.string() + ": empty file");
    if (line.rfind("\xEF\xBB\xBF", 0) == 0)
        line.erase(0, 3);
    if (trim(line) != "snr_db,accuracy")
        throw std::invalid_argument(path.string() + ": expected header 'snr_db,accuracy'");

    std::vector<std::pair<double, double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line))
    {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": expected two fields");
        rows.emplace_back(parse_field(trim(line.substr(0, comma)), path, lineno),
                          parse_field(trim(line.substr(comma + 1)), path, lineno));
    }
    return AccuracyProfile::tabulated(std::move(rows));
}

AccuracyProfile default_djscc_profile() { return AccuracyProfile::sigmoid(0.1, 0.88, 0.0, 0.3); }

AccuracyProfile default_sscc_profile() { return AccuracyProfile::sigmoid(0.1, 0.80, 8.0, 1.2); }

} // namespace leoaomi
