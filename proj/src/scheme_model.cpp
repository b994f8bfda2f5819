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

#include "leoaomi/scheme_model.hpp"

#include <stdexcept>

namespace leoaomi
{

void ImageSource::validate() const
{
    if (height < 1 || width < 1 || channels < 1)
        throw std::invalid_argument("ImageSource: dimensions must be at least 1");
    if (!(arrival_rate > 0.0))
        throw std::invalid_argument("ImageSource: arrival rate must be positive");
}

std::int64_t djscc_symbol_count(const ImageSource &source, int downsampling_stages, int feature_channels)
{
    source.validate();
    if (downsampling_stages < 0 || downsampling_stages > 30)
        throw std::invalid_argument("djscc_symbol_count: downsampling stages out of range");
    if (feature_channels < 1)
        throw std::invalid_argument("djscc_symbol_count: need at least one feature channel");
    const std::int64_t factor = std::int64_t{1} << downsampling_stages;
    if (source.height % factor != 0 || source.width % factor != 0)
        throw std::invalid_argument("djscc_symbol_count: 2^" + std::to_string(downsampling_stages) +
                                    " does not divide the image dimensions");
    return (source.height / factor) * (source.width / factor) * std::int64_t{feature_channels};
}

double bandwidth_ratio(const ImageSource &source, const SchemeConfig &scheme)
{
    const auto pixels = source.pixel_count();
    if (pixels <= 0)
        throw std::invalid_argument("bandwidth_ratio: empty source");
    return static_cast<double>(scheme.symbol_count) / static_cast<double>(pixels);
}

SchemeConfig SchemeConfig::djscc(std::string name, const ImageSource &source, int downsampling_stages,
                                 int feature_channels, double symbol_duration_s, double encode_delay_s,
                                 double classify_delay_s, AccuracyProfile accuracy)
{
    SchemeConfig s;
    s.name = std::move(name);
    s.kind = Kind::Djscc;
    s.downsampling_stages = downsampling_stages;
    s.feature_channels = feature_channels;
    s.symbol_count = djscc_symbol_count(source, downsampling_stages, feature_channels);
    s.symbol_duration_s = symbol_duration_s;
    s.encode_delay_s = encode_delay_s;
    s.classify_delay_s = classify_delay_s;
    s.accuracy = std::move(accuracy);
    s.validate(source);
    return s;
}

SchemeConfig SchemeConfig::sscc(std::string name, std::int64_t symbol_count, double symbol_duration_s,
                                double encode_delay_s, double classify_delay_s, AccuracyProfile accuracy)
{
    SchemeConfig s;
    s.name = std::move(name);
    s.kind = Kind::Sscc;
    s.symbol_count = symbol_count;
    s.symbol_duration_s = symbol_duration_s;
    s.encode_delay_s = encode_delay_s;
    s.classify_delay_s = classify_delay_s;
    s.accuracy = std::move(accuracy);
    s.validate(ImageSource{});
    return s;
}

double SchemeConfig::classify_delay_for(std::optional<int> user_id) const
{
    if (user_id)
    {
        if (auto it = classify_delay_overrides.find(*user_id); it != classify_delay_overrides.end())
            return it->second;
    }
    return classify_delay_s;
}

void SchemeConfig::validate(const ImageSource &source) const
{
    if (name.empty())
        throw std::invalid_argument("SchemeConfig: name must not be empty");
    if (symbol_count < 1)
        throw std::invalid_argument("SchemeConfig '" + name + "': symbol count must be at least 1");
    if (!(symbol_duration_s > 0.0))
        throw std::invalid_argument("SchemeConfig '" + name + "': symbol duration must be positive");
    if (!(encode_delay_s >= 0.0) || !(classify_delay_s >= 0.0))
        throw std::invalid_argument("SchemeConfig '" + name + "': delays must be non-negative");
    for (const auto &[user, delay] : classify_delay_overrides)
    {
        if (!(delay >= 0.0))
            throw std::invalid_argument("SchemeConfig '" + name + "': negative classify delay for user " +
                                        std::to_string(user));
    }
    if (kind == Kind::Djscc)
    {
        const auto expected = djscc_symbol_count(source, downsampling_stages, feature_channels);
        if (expected != symbol_count)
            throw std::invalid_argument("SchemeConfig '" + name + "': symbol count " +
                                        std::to_string(symbol_count) + " does not match the latent shape (" +
                                        std::to_string(expected) + ")");
    }
    accuracy.validate();
}

double total_delay(const SchemeConfig &scheme, std::optional<int> user_id)
{
    return scheme.encode_delay_s + static_cast<double>(scheme.symbol_count) * scheme.symbol_duration_s +
           scheme.classify_delay_for(user_id);
}

} // namespace leoaomi
