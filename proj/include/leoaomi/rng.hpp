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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace leoaomi
{

/// All stochastic parts of the library draw from a 64-bit Mersenne Twister.
/// Independent substreams are obtained by hashing a master seed together with
/// stream keys (user id, batch index, ...) through splitmix64, so that every
/// work item can be seeded without any shared generator state.
using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of the substream identified by `keys` under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t k : keys)
        h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    return h;
}

// Stream tags, so that e.g. population draws and fading draws for the same
// user never share a substream.
inline constexpr std::uint64_t kStreamPopulation = 1;
inline constexpr std::uint64_t kStreamFading = 2;
inline constexpr std::uint64_t kStreamValidation = 3;
inline constexpr std::uint64_t kStreamBatch = 4;

} // namespace leoaomi
