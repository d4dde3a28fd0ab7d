/*
 * Copyright 2026 The membudget Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>

#include "membudget/ptdqn.hpp"

namespace membudget {

/// Raw-weight checkpoint of a QPair. All integers are unsigned 32-bit and all
/// reals IEEE-754 binary64, both little-endian:
///
///   "MBQP"                 magic, 4 bytes
///   u32 version            currently 1
///   u32 network_count      2: permanent, then transient
///   per network:
///     u32 input, u32 output, u32 hidden_count, u32 hidden[hidden_count]
///     per layer (input side first):
///       f64 weight[rows * cols], row-major, rows = fan_out
///       f64 bias[rows]
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(std::ostream& out, const QPair& pair);
/// Throws ValidationError on a bad magic, unknown version or truncated data.
QPair load_checkpoint(std::istream& in);

}  // namespace membudget
