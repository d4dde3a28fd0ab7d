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

#include "membudget/tabular_model.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "membudget/csv.hpp"
#include "membudget/errors.hpp"

namespace membudget {

TabularModel TabularModel::fit(std::span<const Transition> transitions, const MemoryBudget& budget) {
  if (transitions.size() > static_cast<std::size_t>(std::max(budget.model_units, 0))) {
    throw BudgetViolation("world model offered " + std::to_string(transitions.size()) +
                          " transitions but holds only " + std::to_string(budget.model_units));
  }
  TabularModel model;
  for (const auto& t : transitions) {
    auto& entry = model.table_[key(t.state, t.action)];
    ++entry.total;
    auto& out = entry.successors[t.next_state.index];
    ++out.count;
    out.reward_sum += t.reward;
    out.terminal = out.terminal || t.terminal;
  }
  model.stored_ = transitions.size();
  return model;
}

const std::map<std::uint32_t, TabularModel::Outcome>* TabularModel::outcomes(StateId s, ActionId a) const {
  auto it = table_.find(key(s, a));
  return it == table_.end() ? nullptr : &it->second.successors;
}

std::uint64_t TabularModel::count(StateId s, ActionId a) const {
  auto it = table_.find(key(s, a));
  return it == table_.end() ? 0 : it->second.total;
}

std::uint64_t TabularModel::count(StateId s, ActionId a, StateId next) const {
  const auto* succ = outcomes(s, a);
  if (!succ) return 0;
  auto it = succ->find(next.index);
  return it == succ->end() ? 0 : it->second.count;
}

double TabularModel::probability(StateId s, ActionId a, StateId next) const {
  const auto total = count(s, a);
  return total == 0 ? 0.0 : static_cast<double>(count(s, a, next)) / static_cast<double>(total);
}

std::optional<double> TabularModel::mean_reward(StateId s, ActionId a, StateId next) const {
  const auto* succ = outcomes(s, a);
  if (!succ) return std::nullopt;
  auto it = succ->find(next.index);
  if (it == succ->end()) return std::nullopt;
  return it->second.mean_reward();
}

std::optional<ModelStep> TabularModel::sample_next(StateId s, ActionId a, SeededRng& rng) const {
  auto it = table_.find(key(s, a));
  if (it == table_.end()) return std::nullopt;
  const auto& entry = it->second;
  const auto& succ = entry.successors;
  auto pick = succ.begin();
  if (succ.size() > 1) {
    auto r = rng.uniform_below(entry.total);
    while (r >= pick->second.count) {
      r -= pick->second.count;
      ++pick;
    }
  }
  return ModelStep{StateId{pick->first}, pick->second.mean_reward(), pick->second.terminal};
}

std::vector<ActionId> TabularModel::known_actions(StateId s) const {
  std::vector<ActionId> out;
  auto it = table_.lower_bound(key(s, ActionId{0}));
  for (; it != table_.end() && (it->first >> 8) == s.index; ++it) {
    out.push_back(ActionId{static_cast<std::uint8_t>(it->first & 0xFF)});
  }
  return out;
}

void TabularModel::write_csv(std::ostream& out) const {
  out << "state,action,next_state,count,mean_reward,terminal\n";
  for (const auto& [k, entry] : table_) {
    for (const auto& [next, o] : entry.successors) {
      out << (k >> 8) << ',' << (k & 0xFF) << ',' << next << ',' << o.count << ','
          << csv::format_double(o.mean_reward()) << ',' << (o.terminal ? 1 : 0) << '\n';
    }
  }
}

}  // namespace membudget
