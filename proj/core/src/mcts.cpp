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

#include "membudget/mcts.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "membudget/episode.hpp"
#include "membudget/errors.hpp"

namespace membudget {

class TreeBuilder {
 public:
  TreeBuilder(const TabularModel& model, const MemoryBudget& budget, const MctsOptions& options, SeededRng& rng)
      : model_(model), options_(options), rng_(rng), tree_(budget.plan_units) {}

  SearchTree run(StateId s0, std::uint64_t iterations) {
    if (tree_.node_budget_ <= 0) return std::move(tree_);
    add_node(s0, 0);
    if (model_.known_actions(s0).empty()) return std::move(tree_);
    for (std::uint64_t i = 0; i < iterations; ++i) iterate();
    return std::move(tree_);
  }

 private:
  struct PathStep {
    std::int32_t node;
    ActionId action;
    double reward;
  };

  std::int32_t add_node(StateId s, int depth) {
    if (tree_.nodes_used() >= tree_.node_budget_) {
      throw std::logic_error("search tree exceeded its node budget");
    }
    SearchNode n;
    n.state = s;
    n.depth = depth;
    tree_.nodes_.push_back(n);
    return static_cast<std::int32_t>(tree_.nodes_.size() - 1);
  }

  ActionId select(const SearchNode& node, const std::vector<ActionId>& known) const {
    for (ActionId a : known) {
      if (node.edges[a.index].visits == 0) return a;
    }
    const double log_n = std::log(static_cast<double>(node.visit_count));
    ActionId best = known.front();
    double best_score = -std::numeric_limits<double>::infinity();
    for (ActionId a : known) {
      const auto& e = node.edges[a.index];
      const double score = e.mean() + options_.uct_c * std::sqrt(log_n / static_cast<double>(e.visits));
      if (score > best_score) {
        best_score = score;
        best = a;
      }
    }
    return best;
  }

  double rollout(StateId s, int steps_left) {
    double total = 0.0;
    for (int t = 0; t < steps_left; ++t) {
      const ActionId a{static_cast<std::uint8_t>(rng_.uniform_below(ActionId::kCount))};
      auto step = model_.sample_next(s, a, rng_);
      if (!step) break;
      total += step->reward;
      if (step->terminal) break;
      s = step->next;
    }
    return total;
  }

  void iterate() {
    path_.clear();
    std::int32_t current = 0;
    double tail = 0.0;
    int depth = 0;
    while (depth < options_.horizon) {
      const SearchNode& node = tree_.nodes_[static_cast<std::size_t>(current)];
      const auto known = model_.known_actions(node.state);
      if (known.empty()) break;
      const ActionId a = select(node, known);
      // Known pairs always sample successfully.
      const ModelStep step = *model_.sample_next(node.state, a, rng_);
      path_.push_back({current, a, step.reward});
      ++depth;
      auto& edge = tree_.nodes_[static_cast<std::size_t>(current)].edges[a.index];
      if (step.terminal) {
        edge.terminal = true;
        break;
      }
      std::int32_t child = -1;
      for (auto c : edge.children) {
        if (tree_.nodes_[static_cast<std::size_t>(c)].state == step.next) {
          child = c;
          break;
        }
      }
      if (child >= 0) {
        current = child;
        continue;
      }
      if (tree_.nodes_used() < tree_.node_budget_) {
        child = add_node(step.next, depth);
        tree_.nodes_[static_cast<std::size_t>(current)].edges[a.index].children.push_back(child);
      }
      tail = rollout(step.next, options_.horizon - depth);
      break;
    }

    double ret = tail;
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
      ret += it->reward;
      auto& node = tree_.nodes_[static_cast<std::size_t>(it->node)];
      auto& edge = node.edges[it->action.index];
      ++edge.visits;
      edge.value_sum += ret;
      ++node.visit_count;
      node.value_sum += ret;
    }
    ++tree_.iterations_;
  }

  const TabularModel& model_;
  MctsOptions options_;
  SeededRng& rng_;
  SearchTree tree_;
  std::vector<PathStep> path_;
};

SearchTree build_tree(const TabularModel& model, StateId s0, const MemoryBudget& budget,
                      const MctsOptions& options, SeededRng& rng) {
  if (budget.plan_units < 0) throw ValidationError("plan units must be non-negative");
  if (options.horizon < 1) throw ValidationError("planning horizon must be >= 1");
  if (options.iteration_factor < 1) throw ValidationError("iteration factor must be >= 1");
  const auto iterations =
      static_cast<std::uint64_t>(options.iteration_factor) * static_cast<std::uint64_t>(std::max(1, budget.plan_units));
  return TreeBuilder(model, budget, options, rng).run(s0, iterations);
}

Plan extract_plan(const SearchTree& tree, int horizon) {
  Plan plan;
  if (tree.empty()) return plan;
  std::int32_t current = 0;
  while (static_cast<int>(plan.actions.size()) < horizon) {
    const SearchNode& node = tree.node(current);
    int best = -1;
    for (int a = 0; a < ActionId::kCount; ++a) {
      const auto v = node.edges[static_cast<std::size_t>(a)].visits;
      if (v > 0 && (best < 0 || v > node.edges[static_cast<std::size_t>(best)].visits)) best = a;
    }
    if (best < 0) break;
    plan.actions.push_back(ActionId{static_cast<std::uint8_t>(best)});
    const auto& edge = node.edges[static_cast<std::size_t>(best)];
    if (edge.terminal || edge.children.empty()) break;
    std::int32_t next = edge.children.front();
    for (auto c : edge.children) {
      if (tree.node(c).visit_count > tree.node(next).visit_count) next = c;
    }
    current = next;
  }
  return plan;
}

EpisodeResult execute_plan(CorridorEnv& env, const Plan& plan, SeededRng& rng) {
  auto policy = [&plan](StateId, int t, SeededRng& r) -> int {
    if (static_cast<std::size_t>(t) < plan.actions.size()) return plan.actions[static_cast<std::size_t>(t)].index;
    return static_cast<int>(r.uniform_below(ActionId::kCount));
  };
  return run_episode(env, policy, env.layout().horizon, rng);
}

}  // namespace membudget
