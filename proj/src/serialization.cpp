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

#include "leoaomi/serialization.hpp"
#include "serialization_detail.hpp"

#include <initializer_list>
#include <string_view>

namespace leoaomi
{

namespace detail
{

void require_object(const nlohmann::json &j, std::string_view what)
{
    if (!j.is_object())
        throw ConfigError(std::string(what) + ": expected an object");
}

void reject_unknown_keys(const nlohmann::json &j, std::string_view what, std::initializer_list<std::string_view> allowed)
{
    for (const auto &[key, value] : j.items())
    {
        bool known = false;
        for (auto a : allowed)
            known = known || key == a;
        if (!known)
            throw ConfigError(std::string(what) + ": unknown key '" + key + "'");
    }
}

} // namespace detail

using detail::get_or;
using detail::get_required;

nlohmann::json profile_to_json(const AccuracyProfile &profile)
{
    if (profile.kind == AccuracyProfile::Kind::Sigmoid)
        return {{"kind", "sigmoid"},
                {"floor", profile.floor},
                {"ceiling", profile.ceiling},
                {"midpoint_db", profile.midpoint_db},
                {"slope_per_db", profile.slope_per_db}};

    nlohmann::json rows = nlohmann::json::array();
    for (const auto &[snr, acc] : profile.table)
        rows.push_back({snr, acc});
    return {{"kind", "table"}, {"rows", rows}};
}

AccuracyProfile profile_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir)
{
    detail::require_object(j, "accuracy profile");
    const auto kind = get_required<std::string>(j, "kind", "accuracy profile");
    try
    {
        if (kind == "sigmoid")
        {
            detail::reject_unknown_keys(j, "sigmoid profile", {"kind", "floor", "ceiling", "midpoint_db", "slope_per_db"});
            return AccuracyProfile::sigmoid(get_required<double>(j, "floor", "sigmoid profile"),
                                            get_required<double>(j, "ceiling", "sigmoid profile"),
                                            get_required<double>(j, "midpoint_db", "sigmoid profile"),
                                            get_required<double>(j, "slope_per_db", "sigmoid profile"));
        }
        if (kind == "table")
        {
            detail::reject_unknown_keys(j, "table profile", {"kind", "rows", "csv"});
            if (j.contains("csv") == j.contains("rows"))
                throw ConfigError("table profile: give exactly one of 'rows' or 'csv'");
            if (j.contains("csv"))
                return load_profile_csv(base_dir / get_required<std::string>(j, "csv", "table profile"));
            std::vector<std::pair<double, double>> rows;
            for (const auto &row : j.at("rows"))
            {
                if (!row.is_array() || row.size() != 2)
                    throw ConfigError("table profile: each row must be [snr_db, accuracy]");
                rows.emplace_back(row[0].get<double>(), row[1].get<double>());
            }
            return AccuracyProfile::tabulated(std::move(rows));
        }
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string("accuracy profile: ") + e.what());
    }
    throw ConfigError("accuracy profile: unknown kind '" + kind + "' (expected sigmoid or table)");
}

nlohmann::json scheme_to_json(const SchemeConfig &scheme)
{
    nlohmann::json j{{"name", scheme.name},
                     {"kind", scheme.kind == SchemeConfig::Kind::Djscc ? "djscc" : "sscc"},
                     {"symbol_count", scheme.symbol_count},
                     {"symbol_duration_s", scheme.symbol_duration_s},
                     {"encode_delay_s", scheme.encode_delay_s},
                     {"classify_delay_s", scheme.classify_delay_s},
                     {"accuracy", profile_to_json(scheme.accuracy)}};
    if (scheme.kind == SchemeConfig::Kind::Djscc)
    {
        j["downsampling_stages"] = scheme.downsampling_stages;
        j["feature_channels"] = scheme.feature_channels;
    }
    if (!scheme.classify_delay_overrides.empty())
    {
        nlohmann::json overrides = nlohmann::json::object();
        for (const auto &[user, delay] : scheme.classify_delay_overrides)
            overrides[std::to_string(user)] = delay;
        j["classify_delay_overrides"] = overrides;
    }
    return j;
}

SchemeConfig scheme_from_json(const nlohmann::json &j, const ImageSource &source, const SchemeDefaults &defaults,
                              const std::filesystem::path &base_dir)
{
    detail::require_object(j, "scheme");
    detail::reject_unknown_keys(j, "scheme",
                                {"name", "kind", "downsampling_stages", "feature_channels", "symbol_count",
                                 "symbol_duration_s", "encode_delay_s", "classify_delay_s",
                                 "classify_delay_overrides", "accuracy"});
    const auto name = get_required<std::string>(j, "name", "scheme");
    const std::string what = "scheme '" + name + "'";
    const auto kind = get_required<std::string>(j, "kind", what);

    SchemeConfig s;
    s.name = name;
    s.symbol_duration_s = get_or<double>(j, "symbol_duration_s", defaults.symbol_duration_s, what);
    s.encode_delay_s = get_or<double>(j, "encode_delay_s", defaults.encode_delay_s, what);
    s.classify_delay_s = get_required<double>(j, "classify_delay_s", what);
    if (!j.contains("accuracy"))
        throw ConfigError(what + ": missing 'accuracy'");
    s.accuracy = profile_from_json(j.at("accuracy"), base_dir);

    if (j.contains("classify_delay_overrides"))
    {
        const auto &overrides = j.at("classify_delay_overrides");
        detail::require_object(overrides, what + " classify_delay_overrides");
        for (const auto &[user, delay] : overrides.items())
        {
            try
            {
                std::size_t used = 0;
                const int id = std::stoi(user, &used);
                if (used != user.size())
                    throw std::invalid_argument(user);
                s.classify_delay_overrides[id] = delay.get<double>();
            }
            catch (const std::exception &)
            {
                throw ConfigError(what + ": classify_delay_overrides needs integer user ids and numeric delays");
            }
        }
    }

    try
    {
        if (kind == "djscc")
        {
            s.kind = SchemeConfig::Kind::Djscc;
            s.downsampling_stages = get_required<int>(j, "downsampling_stages", what);
            s.feature_channels = get_required<int>(j, "feature_channels", what);
            s.symbol_count = djscc_symbol_count(source, s.downsampling_stages, s.feature_channels);
            if (j.contains("symbol_count") && get_required<std::int64_t>(j, "symbol_count", what) != s.symbol_count)
                throw ConfigError(what + ": symbol_count disagrees with the latent shape (" +
                                  std::to_string(s.symbol_count) + ")");
        }
        else if (kind == "sscc")
        {
            s.kind = SchemeConfig::Kind::Sscc;
            if (j.contains("downsampling_stages") || j.contains("feature_channels"))
                throw ConfigError(what + ": downsampling_stages / feature_channels only apply to djscc");
            s.symbol_count = get_required<std::int64_t>(j, "symbol_count", what);
        }
        else
        {
            throw ConfigError(what + ": unknown kind '" + kind + "' (expected djscc or sscc)");
        }
        s.validate(source);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    return s;
}

nlohmann::json source_to_json(const ImageSource &source)
{
    return {{"height", source.height},
            {"width", source.width},
            {"channels", source.channels},
            {"arrival_rate", source.arrival_rate}};
}

ImageSource source_from_json(const nlohmann::json &j)
{
    detail::require_object(j, "source");
    detail::reject_unknown_keys(j, "source", {"height", "width", "channels", "arrival_rate"});
    ImageSource s;
    s.height = get_required<int>(j, "height", "source");
    s.width = get_required<int>(j, "width", "source");
    s.channels = get_required<int>(j, "channels", "source");
    s.arrival_rate = get_required<double>(j, "arrival_rate", "source");
    try
    {
        s.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    return s;
}

} // namespace leoaomi
