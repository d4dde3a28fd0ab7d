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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace membudget {

/// Discrete environment state. Finite environments use a dense row-major id.
struct StateId {
  std::uint32_t index{0};

  friend constexpr auto operator<=>(StateId, StateId) = default;
};

/// One of the four movement actions. Every environment in this project
/// shares the same action set.
struct ActionId {
  std::uint8_t index{0};

  static constexpr int kCount = 4;

  friend constexpr auto operator<=>(ActionId, ActionId) = default;
};

namespace actions {
inline constexpr ActionId kUp{0};
inline constexpr ActionId kDown{1};
inline constexpr ActionId kRight{2};
inline constexpr ActionId kLeft{3};

inline constexpr std::array<ActionId, 4> kAll{kUp, kDown, kRight, kLeft};

/// Grid displacement; y grows downward (row 0 is the top row).
inline constexpr std::array<int, 4> kDx{0, 0, 1, -1};
inline constexpr std::array<int, 4> kDy{-1, 1, 0, 0};

std::string_view name(ActionId a);
}  // namespace actions

/// Builds an ActionId from an arbitrary integer, throwing ContractViolation
/// when it falls outside [0, 4).
ActionId checked_action(int index);

/// One experience tuple. Also the unit of world-model memory.
struct Transition {
  StateId state;
  ActionId action;
  double reward{0.0};
  StateId next_state;
  bool terminal{false};

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct EpisodeResult {
  double undiscounted_return{0.0};
  int steps{0};
  std::optional<std::string> reached_goal;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

}  // namespace membudget
