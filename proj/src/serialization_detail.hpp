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

#include "leoaomi/serialization.hpp"

#include <initializer_list>
#include <string>
#include <string_view>

namespace leoaomi::detail
{

void require_object(const nlohmann::json &j, std::string_view what);
void reject_unknown_keys(const nlohmann::json &j, std::string_view what, std::initializer_list<std::string_view> allowed);

template <typename T> T get_required(const nlohmann::json &j, const std::string &key, std::string_view what)
{
    if (!j.contains(key))
        throw ConfigError(std::string(what) + ": missing '" + key + "'");
    try
    {
        return j.at(key).get<T>();
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError(std::string(what) + ": bad value for '" + key + "': " + e.what());
    }
}

template <typename T> T get_or(const nlohmann::json &j, const std::string &key, T fallback, std::string_view what)
{
    return j.contains(key) ? get_required<T>(j, key, what) : fallback;
}

} // namespace leoaomi::detail
