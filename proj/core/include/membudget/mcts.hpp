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
#include <cmath>
#include <cstdint>
#include <vector>

#include "membudget/budget.hpp"
#include "membudget/corridor.hpp"
#include "membudget/rng.hpp"
#include "membudget/tabular_model.hpp"
#include "membudget/types.hpp"

namespace membudget {

struct MctsOptions {
  int horizon{100};
  double uct_c{std::sqrt(2.0)};
  /// Iterations run = iteration_factor * max(1, plan units).
  int iteration_factor{4};

  friend bool operator==(const MctsOptions&, const MctsOptions&) = default;
};

/// Statistics of one action at a node. Returns are measured from the node
/// onward, undiscounted.
struct EdgeStats {
  std::uint64_t visits{0};
  double value_sum{0.0};
  bool terminal{false};
  /// Child node per distinct sampled successor.
  std::vector<std::int32_t> children;

  [[nodiscard]] double mean() const { return visits ? value_sum / static_cast<double>(visits) : 0.0; }
};

/// A materialised tree node; each one costs one plan unit.
/// visit_count always equals the sum of the edge visit counts.
struct SearchNode {
  StateId state;
  int depth{0};
  std::uint64_t visit_count{0};
  double value_sum{0.0};
  std::array<EdgeStats, ActionId::kCount> edges;
};

class SearchTree {
 public:
  SearchTree() = default;
  explicit SearchTree(int node_budget) : node_budget_(node_budget) {}

  [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }
  [[nodiscard]] const SearchNode& root() const { return nodes_.front(); }
  [[nodiscard]] const SearchNode& node(std::int32_t i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] const std::vector<SearchNode>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] int node_budget() const noexcept { return node_budget_; }
  [[nodiscard]] int nodes_used() const noexcept { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] std::uint64_t iterations() const noexcept { return iterations_; }

 private:
  friend class TreeBuilder;

  std::vector<SearchNode> nodes_;
  int node_budget_{0};
  std::uint64_t iterations_{0};
};

/// Open-loop action sequence, computed once and then only read.
struct Plan {
  std::vector<ActionId> actions;
};

/// Budgeted UCT search over the learned model from s0.
///
/// Each iteration descends by UCT (untried known actions first, lowest
/// index wins ties), materialises at most one new node while nodes_used <
/// plan_units, finishes with a uniform-random rollout through the model and
/// backs up the undiscounted return. Rollouts end at terminal transitions,
/// at unknown (s, a) pairs (keeping the reward gathered so far) or when the
/// horizon is spent. Once the node budget is full, iterations only refine
/// existing statistics. A zero plan budget yields an empty tree; a root with
/// no known action yields a root-only tree.
SearchTree build_tree(const TabularModel& model, StateId s0, const MemoryBudget& budget,
                      const MctsOptions& options, SeededRng& rng);

/// Greedy descent along the most visited action (lowest index on ties),
/// stopping at the horizon, after a terminal edge, or where the tree ends.
Plan extract_plan(const SearchTree& tree, int horizon);

/// Runs the plan from a reset environment, then acts uniformly at random
/// until the episode ends.
EpisodeResult execute_plan(CorridorEnv& env, const Plan& plan, SeededRng& rng);

}  // namespace membudget
