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

#include <vector>

#include "membudget/corridor.hpp"
#include "membudget/errors.hpp"
#include "test_support.hpp"

namespace membudget {
namespace {

EpisodeResult follow(CorridorEnv& env, const std::vector<ActionId>& path) {
  SeededRng rng(0);
  auto policy = [&](StateId, int t, SeededRng&) {
    return t < static_cast<int>(path.size()) ? static_cast<int>(path[static_cast<std::size_t>(t)].index) : 0;
  };
  return run_episode(env, policy, env.layout().horizon, rng);
}

TEST(Corridor, ResetAndEncoding) {
  CorridorEnv env;
  const auto s = env.reset();
  EXPECT_EQ(s.agent, (Cell{0, 0}));
  EXPECT_EQ(env.reset(), s);
  EXPECT_EQ(env.current_state().index, 0u);
  EXPECT_EQ(env.state_id(Cell{3, 1}).index, 19u);
  EXPECT_EQ(env.cell_of(StateId{19}), (Cell{3, 1}));
}

TEST(Corridor, StepExamples) {
  CorridorEnv env;
  auto r = env.step(CorridorState{{0, 0}, 0, false}, actions::kRight);
  EXPECT_EQ(r.state.agent, (Cell{1, 0}));
  EXPECT_EQ(r.reward, -0.01);
  r = env.step(CorridorState{{1, 1}, 0, false}, actions::kRight);
  EXPECT_TRUE(r.state.done);
  EXPECT_DOUBLE_EQ(r.reward, 0.19);
  EXPECT_EQ(r.goal, "orange");
  r = env.step(CorridorState{{0, 0}, 0, false}, actions::kUp);
  EXPECT_EQ(r.state.agent, (Cell{0, 0}));
  EXPECT_EQ(r.reward, -0.01);
  EXPECT_THROW((void)env.step(CorridorState{{0, 0}, 0, true}, actions::kUp), ContractViolation);
}

TEST(Corridor, StepIsPure) {
  CorridorEnv env;
  SeededRng rng(1);
  for (int i = 0; i < 500; ++i) {
    const CorridorState s{{static_cast<int>(rng.uniform_below(16)), static_cast<int>(rng.uniform_below(2))}, 0, false};
    const auto a = ActionId{static_cast<std::uint8_t>(rng.uniform_below(4))};
    const auto x = env.step(s, a);
    const auto y = env.step(s, a);
    EXPECT_EQ(x.state, y.state);
    EXPECT_EQ(x.reward, y.reward);
    EXPECT_EQ(x.transition, y.transition);
  }
}

TEST(Corridor, ShortestPathLengthsMatchBfsOracle) {
  CorridorEnv env;
  std::vector<Cell> goal_cells;
  for (const auto& g : env.layout().goals) goal_cells.push_back(g.cell);
  for (const auto& g : env.layout().goals) {
    const int oracle = testing::bfs_distance(16, 2, {0, 0}, g.cell, goal_cells);
    EXPECT_EQ(static_cast<int>(env.shortest_path({0, 0}, g.label).size()), oracle) << g.label;
  }
  EXPECT_EQ(env.shortest_path({0, 0}, "pink").size(), 15u);
  EXPECT_EQ(env.shortest_path({0, 0}, "orange").size(), 3u);
  EXPECT_TRUE(env.shortest_path({14, 1}, "pink").empty());
}

TEST(Corridor, OracleReturnsAndMonotonicity) {
  CorridorEnv env;
  double previous = -2;
  const double expected[] = {0.17, 0.33, 0.49, 0.65};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& g = env.layout().goals[i];
    const auto path = env.shortest_path({0, 0}, g.label);
    const auto res = follow(env, path);
    EXPECT_EQ(res.undiscounted_return, expected[i]);
    EXPECT_EQ(res.undiscounted_return, testing::oracle_return(static_cast<int>(path.size()), g.reward, 0.01));
    EXPECT_EQ(res.steps, static_cast<int>(path.size()));
    EXPECT_EQ(res.reached_goal, g.label);
    EXPECT_GT(res.undiscounted_return, previous);
    previous = res.undiscounted_return;
  }
}

TEST(Corridor, NoGoalEpisodeIsExactlyMinusOne) {
  CorridorEnv env;
  const auto res = follow(env, std::vector<ActionId>(100, actions::kUp));
  EXPECT_EQ(res.undiscounted_return, -1.0);
  EXPECT_EQ(res.steps, 100);
  // Shuttling left and right along the top row never touches a goal either.
  std::vector<ActionId> shuttle;
  for (int i = 0; i < 50; ++i) {
    shuttle.push_back(actions::kRight);
    shuttle.push_back(actions::kLeft);
  }
  EXPECT_EQ(follow(env, shuttle).undiscounted_return, -1.0);
}

TEST(CorridorLayout, ValidationRejectsBadLayouts) {
  auto layout = CorridorLayout::standard();
  layout.goals.push_back({"orange", {3, 1}, 0.1});
  EXPECT_THROW(layout.validate(), ValidationError);
  layout = CorridorLayout::standard();
  layout.goals[0].cell = {40, 1};
  EXPECT_THROW(CorridorEnv{layout}, ValidationError);
  layout = CorridorLayout::standard();
  layout.goals[0].cell = layout.start;
  EXPECT_THROW(layout.validate(), ValidationError);
}

}  // namespace
}  // namespace membudget
