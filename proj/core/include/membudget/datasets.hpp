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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "membudget/corridor.hpp"
#include "membudget/rng.hpp"
#include "membudget/types.hpp"

namespace membudget {

enum class DatasetKind { kO0, kO1, kO2, kO3, kOa, kRa, kRonly };

/// Which transitions the agent gets to see.
///
/// O0..O3 hold the optimal trajectory to the best .. fourth-best goal, Oa
/// all four, Ra(X) is Oa followed by X random-walk transitions and Ronly(X)
/// only the X random-walk transitions.
struct DatasetSpec {
  DatasetKind kind{DatasetKind::kOa};
  int noise_count{0};
  std::uint64_t seed{0};

  /// Canonical short name: o0, o1, o2, o3, oa, ra<X>, ronly<X>.
  [[nodiscard]] std::string name() const;
  /// Inverse of name(); throws ValidationError for unknown names.
  static DatasetSpec parse(const std::string& name, std::uint64_t seed = 0);
};

/// Single-pass view over an ordered transition sequence. There is no way to
/// rewind; consumed() counts how many elements were handed out.
class TransitionStream {
 public:
  TransitionStream() = default;
  explicit TransitionStream(std::vector<Transition> items) : items_(std::move(items)) {}

  [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
  [[nodiscard]] std::size_t consumed() const noexcept { return cursor_; }
  std::optional<Transition> next();

  /// Moves the remaining elements out, consuming the stream.
  std::vector<Transition> drain();

 private:
  std::vector<Transition> items_;
  std::size_t cursor_{0};
};

/// X transitions from horizon-limited uniform-random episodes, including any
/// goal arrivals the walk stumbles on.
std::vector<Transition> random_walk_transitions(const CorridorEnv& env, int count, SeededRng& rng);

TransitionStream generate(const DatasetSpec& spec, const CorridorEnv& env, SeededRng& rng);

/// Classic single-pass reservoir sampling (Algorithm R): a uniform subset of
/// min(n, capacity) elements. Retention order is unspecified.
std::vector<Transition> reservoir_select(TransitionStream& stream, int capacity, SeededRng& rng);

/// CSV with header "state,action,reward,next_state,terminal".
void write_transitions_csv(std::ostream& out, std::span<const Transition> transitions);
/// Throws ValidationError on a bad header or malformed row.
std::vector<Transition> read_transitions_csv(std::istream& in);

}  // namespace membudget
