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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "membudget/datasets.hpp"
#include "membudget/mcts.hpp"
#include "membudget/sweep.hpp"
#include "membudget/tabular_model.hpp"
#include "test_support.hpp"

namespace membudget {
namespace {

TabularModel model_of(const std::string& name, int model_units, std::uint64_t seed = 0) {
  CorridorEnv env;
  SeededRng rng(seed);
  auto stream = generate(DatasetSpec::parse(name), env, rng);
  const auto kept = reservoir_select(stream, model_units, rng);
  return TabularModel::fit(kept, make_split(model_units, 0));
}

TEST(BuildTree, ZeroPlanBudgetGivesEmptyTreeAndPlan) {
  const auto m = model_of("oa", 500);
  SeededRng rng(0);
  const auto tree = build_tree(m, StateId{0}, make_split(500, 0), MctsOptions{}, rng);
  EXPECT_TRUE(tree.empty());
  EXPECT_TRUE(extract_plan(tree, 100).actions.empty());
}

TEST(BuildTree, UnknownRootGivesRootOnlyTree) {
  const auto m = model_of("o0", 15);
  SeededRng rng(0);
  const auto tree = build_tree(m, StateId{31}, make_split(100, 50), MctsOptions{}, rng);
  EXPECT_EQ(tree.nodes_used(), 1);
  EXPECT_TRUE(extract_plan(tree, 100).actions.empty());
}

TEST(BuildTree, SingleTrajectoryPlanEqualsBfsPath) {
  CorridorEnv env;
  for (int i = 0; i < 4; ++i) {
    const auto name = "o" + std::to_string(i);
    const auto m = model_of(name, 485);
    const auto& goal = env.layout().goals[static_cast<std::size_t>(3 - i)];
    const auto oracle = env.shortest_path({0, 0}, goal.label);
    for (int n_pi : {static_cast<int>(oracle.size()) + 1, 16, 60}) {
      SeededRng rng(static_cast<std::uint64_t>(n_pi));
      const auto tree = build_tree(m, StateId{0}, make_split(500, n_pi), MctsOptions{}, rng);
      EXPECT_EQ(extract_plan(tree, 100).actions, oracle) << name << " n_pi=" << n_pi;
    }
  }
}

TEST(BuildTree, PinkPlanScoresOptimalReturn) {
  const auto m = model_of("o0", 485);
  SeededRng rng(1);
  const auto tree = build_tree(m, StateId{0}, make_split(500, 15), MctsOptions{}, rng);
  CorridorEnv env;
  EXPECT_EQ(execute_plan(env, extract_plan(tree, 100), rng).undiscounted_return, 0.65);
}

TEST(BuildTree, BudgetAndBackupConservation) {
  SeededRng rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const int n_pi = static_cast<int>(rng.uniform_below(200));
    const auto m = model_of("ra300", 500 - n_pi, static_cast<std::uint64_t>(trial));
    MctsOptions opts;
    opts.iteration_factor = 1 + static_cast<int>(rng.uniform_below(6));
    const auto tree = build_tree(m, StateId{0}, make_split(500, n_pi), opts, rng);
    ASSERT_LE(tree.nodes_used(), n_pi);
    if (tree.empty()) continue;
    EXPECT_EQ(tree.root().visit_count, tree.iterations());
    EXPECT_EQ(tree.iterations(), static_cast<std::uint64_t>(opts.iteration_factor * std::max(1, n_pi)));
    for (const auto& node : tree.nodes()) {
      std::uint64_t edge_visits = 0;
      for (const auto& e : node.edges) edge_visits += e.visits;
      EXPECT_EQ(edge_visits, node.visit_count);
    }
  }
}

TEST(BuildTree, BestReachableGoalGrowsWithPlanBudget) {
  double previous = -2;
  for (int n_pi : {4, 8, 12, 16}) {
    double best = -2;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto run = run_allocation(DatasetSpec::parse("oa"), CorridorEnv{}, 500, n_pi, MctsOptions{}, seed);
      best = std::max(best, run.result.undiscounted_return);
    }
    EXPECT_GE(best, previous) << n_pi;
    previous = best;
  }
  EXPECT_GT(previous, -1.0);
}

TEST(ExtractPlan, FollowsOnlyVisitedAction) {
  const auto m = model_of("o3", 3);
  SeededRng rng(0);
  const auto tree = build_tree(m, StateId{0}, make_split(10, 5), MctsOptions{}, rng);
  const auto plan = extract_plan(tree, 100);
  ASSERT_FALSE(plan.actions.empty());
  EXPECT_EQ(plan.actions.front(), CorridorEnv{}.shortest_path({0, 0}, "orange").front());
  EXPECT_LE(extract_plan(tree, 1).actions.size(), 1u);
}

TEST(ExecutePlan, Examples) {
  CorridorEnv env;
  SeededRng rng(0);
  EXPECT_EQ(execute_plan(env, Plan{env.shortest_path({0, 0}, "pink")}, rng).undiscounted_return, 0.65);
  EXPECT_EQ(execute_plan(env, Plan{std::vector<ActionId>(100, actions::kUp)}, rng).undiscounted_return, -1.0);
}

TEST(ExecutePlan, EmptyPlanMatchesIndependentRandomWalk) {
  CorridorEnv env;
  SeededRng rng(11);
  std::vector<double> returns;
  for (int i = 0; i < 2000; ++i) returns.push_back(execute_plan(env, Plan{}, rng).undiscounted_return);
  const double mean = std::accumulate(returns.begin(), returns.end(), 0.0) / returns.size();
  double var = 0;
  for (double r : returns) var += (r - mean) * (r - mean);
  const double se = std::sqrt(var / returns.size()) / std::sqrt(double(returns.size()));
  const double oracle = testing::random_walk_mean_return(50000, 99);
  EXPECT_GT(mean, -1.0);
  EXPECT_LT(mean, 0.17);
  EXPECT_NEAR(mean, oracle, 4 * se + 0.01);
}

TEST(Sweep, ParallelMatchesSerial) {
  SweepOptions opts;
  opts.plan_grid = {0, 10, 250};
  opts.seeds = 4;
  opts.master_seed = 77;
  const std::vector<DatasetSpec> ds{DatasetSpec::parse("oa"), DatasetSpec::parse("ra100")};
  const auto serial = sweep_allocation(ds, CorridorEnv{}, opts);
  opts.jobs = 3;
  EXPECT_EQ(sweep_allocation(ds, CorridorEnv{}, opts), serial);
  EXPECT_EQ(serial.size(), 2u * 3u * 4u);
}

}  // namespace
}  // namespace membudget
