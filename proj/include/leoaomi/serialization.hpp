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

#include "leoaomi/accuracy_model.hpp"
#include "leoaomi/scheme_model.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace leoaomi
{

/// Malformed or inconsistent configuration (maps to CLI exit code 2).
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Scenario-wide values a scheme falls back to when it does not set them.
struct SchemeDefaults
{
    double symbol_duration_s = 125e-9;
    double encode_delay_s = 0.0;
};

nlohmann::json profile_to_json(const AccuracyProfile &profile);

/// Accepts {"kind": "sigmoid", ...}, {"kind": "table", "rows": [[snr, acc], ...]}
/// or {"kind": "table", "csv": "<path>"} with the path relative to `base_dir`.
AccuracyProfile profile_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir = {});

/// Fully explicit form: every field written, profile inlined.
nlohmann::json scheme_to_json(const SchemeConfig &scheme);

SchemeConfig scheme_from_json(const nlohmann::json &j, const ImageSource &source, const SchemeDefaults &defaults,
                              const std::filesystem::path &base_dir = {});

nlohmann::json source_to_json(const ImageSource &source);
ImageSource source_from_json(const nlohmann::json &j);

} // namespace leoaomi
