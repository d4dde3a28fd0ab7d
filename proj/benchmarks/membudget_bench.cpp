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

#include <benchmark/benchmark.h>

#include "membudget/datasets.hpp"
#include "membudget/jellybean.hpp"
#include "membudget/mcts.hpp"
#include "membudget/ptdqn.hpp"
#include "membudget/tabular_model.hpp"

namespace membudget {
namespace {

void BM_BuildTree(benchmark::State& state) {
  const int n_pi = static_cast<int>(state.range(0));
  CorridorEnv env;
  SeededRng rng(1);
  auto stream = generate(DatasetSpec::parse("ra1000"), env, rng);
  const auto budget = make_split(500, n_pi);
  const auto model = TabularModel::fit(reservoir_select(stream, budget.model_units, rng), budget);
  for (auto _ : state) {
    auto tree = build_tree(model, StateId{0}, budget, MctsOptions{}, rng);
    benchmark::DoNotOptimize(tree.nodes_used());
  }
  state.SetItemsProcessed(state.iterations() * 4 * std::max(1, n_pi));
}
BENCHMARK(BM_BuildTree)->Arg(10)->Arg(250)->Arg(480);

void BM_ReservoirSelect(benchmark::State& state) {
  CorridorEnv env;
  SeededRng rng(2);
  const auto data = generate(DatasetSpec::parse("ra5000"), env, rng).drain();
  for (auto _ : state) {
    TransitionStream stream(data);
    benchmark::DoNotOptimize(reservoir_select(stream, static_cast<int>(state.range(0)), rng));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_ReservoirSelect)->Arg(250)->Arg(500);

void BM_QForward(benchmark::State& state) {
  SeededRng rng(3);
  const auto pair = QPair::random(make_pt_split(default_hidden_widths(), 52, 0.1), rng);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(kObservationWidth, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pair.q_values(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QForward)->Arg(1)->Arg(16);

void BM_TransientUpdate(benchmark::State& state) {
  SeededRng rng(4);
  auto pair = QPair::random(make_pt_split(default_hidden_widths(), 52, 0.1), rng);
  ReplayBuffer buffer(52);
  JellybeanWorld world(WorldConfig{}, 4);
  auto obs = world.observe();
  for (int i = 0; i < 52; ++i) {
    auto step = world.step(ActionId{static_cast<std::uint8_t>(i % 4)});
    buffer.push(Experience{obs, ActionId{static_cast<std::uint8_t>(i % 4)}, step.reward, step.observation});
    obs = step.observation;
  }
  for (auto _ : state) {
    const auto batch = TrainingBatch::gather(buffer, buffer.sample_indices(16, rng));
    benchmark::DoNotOptimize(transient_update(pair, batch, 0.9, 0.01));
  }
}
BENCHMARK(BM_TransientUpdate);

void BM_JellybeanStep(benchmark::State& state) {
  JellybeanWorld world(WorldConfig{}, 5);
  SeededRng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(world.step(ActionId{static_cast<std::uint8_t>(rng.uniform_below(4))}));
  }
}
BENCHMARK(BM_JellybeanStep);

}  // namespace
}  // namespace membudget

BENCHMARK_MAIN();
