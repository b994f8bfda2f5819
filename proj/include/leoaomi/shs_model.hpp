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

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

// Stochastic hybrid system describing one user's age of misclassified
// information (AoMI).
//
// Discrete mode q: idle (0) or transmitting an image (1).
// Continuous state alpha = [alpha0, alpha1]:
//   alpha0  AoMI at the receiver (age of the last correctly classified image)
//   alpha1  age the image in flight would have if it were classified correctly
// In mode q the ages grow at rates b_q; b_0 = [1, 0], b_1 = [1, 1].
//
// A transition l fires at rate lambda_l and maps alpha to alpha * A_l, with
// A_l a binary 2x2 matrix acting on the row vector [alpha0, alpha1].
//
// The same table drives both the analytical solver and the simulator, so the
// two can be cross-checked for any reset convention.

namespace leoaomi
{

enum class Mode : int
{
    Idle = 0,
    Transmitting = 1
};

enum class TransitionKind : int
{
    Arrival = 0,        // l1, 0 -> 1: image captured while idle
    Success = 1,        // l2, 1 -> 0: image classified correctly
    Misclassified = 2,  // l3, 1 -> 0: image classified wrongly
    ArrivalBusy = 3,    // l4, 1 -> 1: image captured during a transmission
};

inline constexpr std::size_t kTransitionKinds = 4;

std::string_view to_string(TransitionKind kind);

/// How the ages are reset. `Discard` drops an image that arrives during a
/// transmission and leaves the ages alone; it is the model whose stationary
/// mean matches closed_form_aaomi. `Swap` is the alternative convention in
/// which l1 zeroes alpha0 and l4 exchanges alpha0 and alpha1; it is kept for
/// comparison and does not match the closed form.
enum class ResetConvention
{
    Discard,
    Swap
};

struct ResetMap
{
    std::array<std::array<int, 2>, 2> a{};

    /// alpha * A for the row vector alpha.
    std::array<double, 2> apply(const std::array<double, 2> &alpha) const
    {
        return {alpha[0] * a[0][0] + alpha[1] * a[1][0], alpha[0] * a[0][1] + alpha[1] * a[1][1]};
    }
};

struct Transition
{
    TransitionKind kind;
    Mode from;
    Mode to;
    double rate;
    ResetMap reset;
};

struct ShsParameters;

struct ShsModel
{
    std::vector<Transition> transitions;
    std::array<std::array<double, 2>, 2> growth{{{1.0, 0.0}, {1.0, 1.0}}}; // b_q per mode

    /// Sum of the rates of transitions leaving `q`, self-loops included.
    double exit_rate(Mode q) const;
};

ShsModel build_shs_model(const ShsParameters &params, ResetConvention convention = ResetConvention::Discard);

} // namespace leoaomi
