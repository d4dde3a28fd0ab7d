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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "membudget/budget.hpp"
#include "membudget/rng.hpp"
#include "membudget/types.hpp"

namespace membudget {

struct ModelStep {
  StateId next;
  double reward{0.0};
  bool terminal{false};
};

/// Count-based maximum-likelihood model of the dynamics:
///   p(s' | s, a) = count(s, a, s') / count(s, a)
///   r(s, a, s')  = mean reward observed on that triple
/// Unobserved (s, a) pairs stay unknown; there is no smoothing prior.
class TabularModel {
 public:
  struct Outcome {
    std::uint64_t count{0};
    double reward_sum{0.0};
    bool terminal{false};

    [[nodiscard]] double mean_reward() const { return reward_sum / static_cast<double>(count); }
  };

  TabularModel() = default;

  /// Throws BudgetViolation when more transitions are supplied than the
  /// budget grants the model.
  static TabularModel fit(std::span<const Transition> transitions, const MemoryBudget& budget);

  [[nodiscard]] std::size_t stored_transitions() const noexcept { return stored_; }
  [[nodiscard]] std::size_t known_pairs() const noexcept { return table_.size(); }

  [[nodiscard]] std::uint64_t count(StateId s, ActionId a) const;
  [[nodiscard]] std::uint64_t count(StateId s, ActionId a, StateId next) const;
  [[nodiscard]] double probability(StateId s, ActionId a, StateId next) const;
  [[nodiscard]] std::optional<double> mean_reward(StateId s, ActionId a, StateId next) const;

  /// Draws s' in proportion to its count. std::nullopt means the pair was
  /// never observed; that is an ordinary outcome, not an error.
  std::optional<ModelStep> sample_next(StateId s, ActionId a, SeededRng& rng) const;

  /// Actions with at least one observation at s, ascending.
  [[nodiscard]] std::vector<ActionId> known_actions(StateId s) const;

  /// Successor table of a pair, or nullptr if unobserved.
  [[nodiscard]] const std::map<std::uint32_t, Outcome>* outcomes(StateId s, ActionId a) const;

  /// CSV with header "state,action,next_state,count,mean_reward,terminal".
  void write_csv(std::ostream& out) const;

 private:
  static constexpr std::uint64_t key(StateId s, ActionId a) noexcept {
    return (std::uint64_t{s.index} << 8) | a.index;
  }

  struct PairEntry {
    std::uint64_t total{0};
    std::map<std::uint32_t, Outcome> successors;
  };

  std::map<std::uint64_t, PairEntry> table_;
  std::size_t stored_{0};
};

}  // namespace membudget
