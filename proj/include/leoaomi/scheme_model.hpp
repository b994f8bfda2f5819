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

#include <cstdint>
#include <map>
#include <optional>
#include <string>

// Transceiver schemes reduced to what the freshness analysis needs: how many
// channel symbols an image costs, the processing delays at both ends, and the
// accuracy-vs-SNR behaviour of the receiver.

namespace leoaomi
{

struct ImageSource
{
    int height = 32;
    int width = 32;
    int channels = 3;
    double arrival_rate = 1.0; // images / s

    std::int64_t pixel_count() const { return std::int64_t{height} * width * channels; }
    void validate() const;

    bool operator==(const ImageSource &) const = default;
};

struct SchemeConfig
{
    enum class Kind
    {
        Djscc,
        Sscc
    };

    std::string name;
    Kind kind = Kind::Djscc;
    int downsampling_stages = 0; // djscc only
    int feature_channels = 0;    // djscc only
    std::int64_t symbol_count = 1;
    double symbol_duration_s = 125e-9;
    double encode_delay_s = 0.0;
    double classify_delay_s = 0.0;
    std::map<int, double> classify_delay_overrides; // user id -> seconds
    AccuracyProfile accuracy;

    /// Learned joint coder; the symbol count follows from the latent shape.
    static SchemeConfig djscc(std::string name, const ImageSource &source, int downsampling_stages,
                              int feature_channels, double symbol_duration_s, double encode_delay_s,
                              double classify_delay_s, AccuracyProfile accuracy);

    /// Separated chain; the symbol count is given directly.
    static SchemeConfig sscc(std::string name, std::int64_t symbol_count, double symbol_duration_s,
                             double encode_delay_s, double classify_delay_s, AccuracyProfile accuracy);

    /// Classification delay for `user_id`, honouring per-user overrides.
    double classify_delay_for(std::optional<int> user_id) const;

    /// Throws std::invalid_argument. For DJSCC configs the stored symbol count
    /// must match the latent shape of `source`.
    void validate(const ImageSource &source) const;

    bool operator==(const SchemeConfig &) const = default;
};

/// (H * W / 4^delta) * n_con; throws unless 2^delta divides H and W.
std::int64_t djscc_symbol_count(const ImageSource &source, int downsampling_stages, int feature_channels);

/// Channel symbols per source pixel.
double bandwidth_ratio(const ImageSource &source, const SchemeConfig &scheme);

/// D_enc + n_T T_s + D_cls for the given user (scheme default when empty).
double total_delay(const SchemeConfig &scheme, std::optional<int> user_id = std::nullopt);

} // namespace leoaomi
