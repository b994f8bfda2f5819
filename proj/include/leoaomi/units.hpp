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

#include <numbers>

// Unit conversions used across the link budget. Everything inside the library
// is linear SI (W, m, Hz, rad); dB / dBm / degrees only appear at the config
// and reporting boundary and go through these helpers.

namespace leoaomi
{

inline constexpr double kSpeedOfLight = 2.998e8; // m/s

double db_to_linear(double db);
double linear_to_db(double linear);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

} // namespace leoaomi
