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

#include <sstream>
#include <vector>

#include "membudget/datasets.hpp"
#include "membudget/errors.hpp"
#include "test_support.hpp"

namespace membudget {
namespace {

TEST(DatasetSpec, NamesRoundTrip) {
  for (const char* name : {"o0", "o1", "o2", "o3", "oa", "ra100", "ronly5000", "ronly0"}) {
    EXPECT_EQ(DatasetSpec::parse(name).name(), name);
  }
  EXPECT_THROW(DatasetSpec::parse("o4"), ValidationError);
  EXPECT_THROW(DatasetSpec::parse("ra"), ValidationError);
  EXPECT_THROW(DatasetSpec::parse("ra-5"), ValidationError);
}

TEST(Generate, OptimalStreams) {
  CorridorEnv env;
  SeededRng rng(0);
  auto o0 = generate(DatasetSpec::parse("o0"), env, rng).drain();
  ASSERT_EQ(o0.size(), 15u);
  EXPECT_TRUE(o0.back().terminal);
  EXPECT_EQ(env.cell_of(o0.back().next_state), (Cell{14, 1}));
  EXPECT_EQ(generate(DatasetSpec::parse("oa"), env, rng).size(), 36u);
  EXPECT_EQ(generate(DatasetSpec::parse("ronly0"), env, rng).size(), 0u);
  EXPECT_EQ(generate(DatasetSpec::parse("ra50"), env, rng).size(), 86u);
}

TEST(Generate, OptimalStreamsReplayToTheirReturns) {
  CorridorEnv env;
  const double expected[] = {0.65, 0.49, 0.33, 0.17};
  for (int i = 0; i < 4; ++i) {
    SeededRng rng(0);
    const auto data = generate(DatasetSpec::parse("o" + std::to_string(i)), env, rng).drain();
    SeededRng unused(0);
    auto policy = [&](StateId, int t, SeededRng&) {
      return static_cast<int>(data[static_cast<std::size_t>(t)].action.index);
    };
    const auto res = run_episode(env, policy, static_cast<int>(data.size()), unused);
    EXPECT_EQ(res.undiscounted_return, expected[i]);
    CompensatedSum logged;
    for (const auto& t : data) logged.add(t.reward);
    EXPECT_EQ(logged.value(), expected[i]);
  }
}

TEST(Generate, RandomWalkTransitionsAreRealDynamics) {
  CorridorEnv env;
  SeededRng rng(8);
  for (const auto& t : random_walk_transitions(env, 2000, rng)) {
    const auto step = env.step(CorridorState{env.cell_of(t.state), 0, false}, t.action);
    ASSERT_EQ(step.transition.next_state, t.next_state);
    ASSERT_EQ(step.reward, t.reward);
    ASSERT_EQ(step.state.done, t.terminal);
  }
}

std::vector<Transition> numbered(int n) {
  std::vector<Transition> v;
  for (int i = 0; i < n; ++i) v.push_back(Transition{StateId{static_cast<std::uint32_t>(i)}, actions::kUp, 0, {}, false});
  return v;
}

TEST(ReservoirSelect, Examples) {
  SeededRng rng(1);
  TransitionStream all(numbered(10));
  EXPECT_EQ(reservoir_select(all, 10, rng).size(), 10u);
  TransitionStream none(numbered(10));
  EXPECT_TRUE(reservoir_select(none, 0, rng).empty());
}

TEST(ReservoirSelect, SinglePassAndSizeIsMin) {
  SeededRng rng(2);
  for (int n : {0, 1, 5, 40, 300}) {
    for (int cap : {0, 1, 7, 40, 500}) {
      TransitionStream s(numbered(n));
      const auto kept = reservoir_select(s, cap, rng);
      EXPECT_EQ(s.consumed(), static_cast<std::size_t>(n));
      EXPECT_EQ(kept.size(), static_cast<std::size_t>(std::min(n, cap)));
      EXPECT_FALSE(s.next());
    }
  }
}

TEST(ReservoirSelect, InclusionWithinThreeSigma) {
  SeededRng rng(3);
  const int n = 50, cap = 5, reps = 20000;
  std::vector<int> hits(n, 0);
  for (int r = 0; r < reps; ++r) {
    TransitionStream s(numbered(n));
    for (const auto& t : reservoir_select(s, cap, rng)) ++hits[t.state.index];
  }
  const double p = double(cap) / n;
  const double sigma = std::sqrt(reps * p * (1 - p));
  for (int h : hits) EXPECT_NEAR(h, reps * p, 3.5 * sigma);
}

TEST(TransitionsCsv, RoundTrip) {
  CorridorEnv env;
  SeededRng rng(4);
  const auto data = generate(DatasetSpec::parse("ra200"), env, rng).drain();
  std::stringstream ss;
  write_transitions_csv(ss, data);
  EXPECT_EQ(read_transitions_csv(ss), data);
  std::stringstream bad("state,action\n1,2\n");
  EXPECT_THROW(read_transitions_csv(bad), ValidationError);
}

}  // namespace
}  // namespace membudget
