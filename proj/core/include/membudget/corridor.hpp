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

#include <optional>
#include <string>
#include <vector>

#include "membudget/episode.hpp"
#include "membudget/types.hpp"

namespace membudget {

struct Cell {
  int x{0};
  int y{0};

  friend constexpr bool operator==(Cell, Cell) = default;
};

struct CorridorGoal {
  std::string label;
  Cell cell;
  double reward{0.0};

  friend bool operator==(const CorridorGoal&, const CorridorGoal&) = default;
};

/// Grid geometry and reward economics of the corridor task.
///
/// Default: a 16x2 grid, start in the top-left corner, goals on the bottom
/// row at x = 2, 6, 10, 14 (orange, green, blue, pink) worth 0.2 .. 0.8, a
/// -0.01 penalty per step and a 100-step horizon. Shortest paths are 3, 7,
/// 11 and 15 steps, so the optimal return is 0.8 - 0.15 = 0.65 and an
/// episode that never reaches a goal scores -1.
struct CorridorLayout {
  int width{16};
  int height{2};
  Cell start{0, 0};
  std::vector<CorridorGoal> goals;
  double step_penalty{0.01};
  int horizon{100};

  static CorridorLayout standard();
  /// Throws ValidationError on out-of-grid cells, duplicate goals or a
  /// goal on the start cell.
  void validate() const;

  friend bool operator==(const CorridorLayout&, const CorridorLayout&) = default;
};

struct CorridorState {
  Cell agent;
  int steps_elapsed{0};
  bool done{false};

  friend bool operator==(const CorridorState&, const CorridorState&) = default;
};

struct CorridorStep {
  CorridorState state;
  double reward{0.0};
  Transition transition;
  std::optional<std::string> goal;
};

/// Deterministic corridor gridworld. Off-grid moves leave the agent in
/// place and still cost the step penalty. States are encoded row-major:
/// id = x + y * width.
class CorridorEnv {
 public:
  explicit CorridorEnv(CorridorLayout layout = CorridorLayout::standard());

  [[nodiscard]] const CorridorLayout& layout() const noexcept { return layout_; }
  [[nodiscard]] int num_states() const noexcept { return layout_.width * layout_.height; }
  [[nodiscard]] StateId state_id(Cell c) const;
  [[nodiscard]] Cell cell_of(StateId s) const;
  [[nodiscard]] std::optional<std::size_t> goal_index_at(Cell c) const;
  [[nodiscard]] const CorridorGoal& goal(const std::string& label) const;

  [[nodiscard]] CorridorState initial_state() const noexcept { return {layout_.start, 0, false}; }

  /// Pure transition function. Throws ContractViolation on a done state.
  [[nodiscard]] CorridorStep step(const CorridorState& state, ActionId action) const;

  /// Breadth-first shortest action sequence from 'from' to the goal. Other
  /// goal cells are terminal and therefore never crossed. Neighbours are
  /// expanded in action order (up, down, right, left), which fixes ties.
  [[nodiscard]] std::vector<ActionId> shortest_path(Cell from, const std::string& goal_label) const;

  // Stateful SteppableEnv interface.
  CorridorState reset();
  StepOutcome step(ActionId action);
  [[nodiscard]] StateId current_state() const { return state_id(state_.agent); }
  [[nodiscard]] const CorridorState& state() const noexcept { return state_; }

 private:
  [[nodiscard]] bool in_grid(Cell c) const noexcept;

  CorridorLayout layout_;
  CorridorState state_;
};

static_assert(SteppableEnv<CorridorEnv>);

}  // namespace membudget
