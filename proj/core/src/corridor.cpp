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

#include "membudget/corridor.hpp"

#include <algorithm>
#include <deque>

#include "membudget/errors.hpp"

namespace membudget {

CorridorLayout CorridorLayout::standard() {
  CorridorLayout layout;
  layout.goals = {
      {"orange", {2, 1}, 0.2},
      {"green", {6, 1}, 0.4},
      {"blue", {10, 1}, 0.6},
      {"pink", {14, 1}, 0.8},
  };
  return layout;
}

void CorridorLayout::validate() const {
  if (width < 1 || height < 1) throw ValidationError("corridor grid must be at least 1x1");
  if (horizon < 1) throw ValidationError("corridor horizon must be >= 1");
  auto inside = [&](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; };
  if (!inside(start)) throw ValidationError("corridor start cell outside the grid");
  for (std::size_t i = 0; i < goals.size(); ++i) {
    const auto& g = goals[i];
    if (!inside(g.cell)) throw ValidationError("goal '" + g.label + "' outside the grid");
    if (g.cell == start) throw ValidationError("goal '" + g.label + "' placed on the start cell");
    for (std::size_t j = 0; j < i; ++j) {
      if (goals[j].cell == g.cell || goals[j].label == g.label) {
        throw ValidationError("duplicate goal '" + g.label + "'");
      }
    }
  }
}

CorridorEnv::CorridorEnv(CorridorLayout layout) : layout_(std::move(layout)) {
  layout_.validate();
  state_ = initial_state();
}

bool CorridorEnv::in_grid(Cell c) const noexcept {
  return c.x >= 0 && c.y >= 0 && c.x < layout_.width && c.y < layout_.height;
}

StateId CorridorEnv::state_id(Cell c) const {
  if (!in_grid(c)) throw ContractViolation("cell outside the corridor grid");
  return StateId{static_cast<std::uint32_t>(c.x + c.y * layout_.width)};
}

Cell CorridorEnv::cell_of(StateId s) const {
  if (s.index >= static_cast<std::uint32_t>(num_states())) {
    throw ContractViolation("state id outside the corridor grid");
  }
  const int idx = static_cast<int>(s.index);
  return Cell{idx % layout_.width, idx / layout_.width};
}

std::optional<std::size_t> CorridorEnv::goal_index_at(Cell c) const {
  for (std::size_t i = 0; i < layout_.goals.size(); ++i) {
    if (layout_.goals[i].cell == c) return i;
  }
  return std::nullopt;
}

const CorridorGoal& CorridorEnv::goal(const std::string& label) const {
  for (const auto& g : layout_.goals) {
    if (g.label == label) return g;
  }
  throw ValidationError("unknown goal '" + label + "'");
}

CorridorStep CorridorEnv::step(const CorridorState& state, ActionId action) const {
  if (state.done) throw ContractViolation("step called on a finished corridor episode");
  if (action.index >= ActionId::kCount) throw ContractViolation("invalid action");

  Cell next{state.agent.x + actions::kDx[action.index], state.agent.y + actions::kDy[action.index]};
  if (!in_grid(next)) next = state.agent;

  CorridorStep out;
  out.state.agent = next;
  out.state.steps_elapsed = state.steps_elapsed + 1;
  out.reward = -layout_.step_penalty;
  bool reached = false;
  if (auto g = goal_index_at(next)) {
    out.reward += layout_.goals[*g].reward;
    out.goal = layout_.goals[*g].label;
    reached = true;
  }
  out.state.done = reached || out.state.steps_elapsed >= layout_.horizon;
  // Only goal arrivals are terminal for the world model; a horizon cut is not
  // a property of the dynamics.
  out.transition = Transition{state_id(state.agent), action, out.reward, state_id(next), reached};
  return out;
}

std::vector<ActionId> CorridorEnv::shortest_path(Cell from, const std::string& goal_label) const {
  const Cell target = goal(goal_label).cell;
  if (!in_grid(from)) throw ValidationError("shortest_path: start cell outside the grid");
  if (from == target) return {};

  const int n = num_states();
  std::vector<int> parent(n, -1);
  std::vector<int> via(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<Cell> frontier{from};
  seen[state_id(from).index] = 1;

  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop_front();
    for (ActionId a : actions::kAll) {
      const Cell nb{c.x + actions::kDx[a.index], c.y + actions::kDy[a.index]};
      if (!in_grid(nb)) continue;
      const auto id = state_id(nb).index;
      if (seen[id]) continue;
      seen[id] = 1;
      parent[id] = static_cast<int>(state_id(c).index);
      via[id] = a.index;
      if (nb == target) {
        std::vector<ActionId> path;
        for (int cur = static_cast<int>(id); cur != static_cast<int>(state_id(from).index); cur = parent[cur]) {
          path.push_back(ActionId{static_cast<std::uint8_t>(via[cur])});
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      // Other goals end the episode, so a path cannot pass through them.
      if (!goal_index_at(nb)) frontier.push_back(nb);
    }
  }
  throw ValidationError("goal '" + goal_label + "' unreachable from the given cell");
}

CorridorState CorridorEnv::reset() {
  state_ = initial_state();
  return state_;
}

StepOutcome CorridorEnv::step(ActionId action) {
  CorridorStep s = step(state_, action);
  state_ = s.state;
  return StepOutcome{s.reward, s.state.done, s.transition, std::move(s.goal)};
}

}  // namespace membudget
