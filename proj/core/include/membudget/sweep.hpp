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
#include <string>
#include <vector>

#include "membudget/corridor.hpp"
#include "membudget/datasets.hpp"
#include "membudget/mcts.hpp"

namespace membudget {

struct SweepOptions {
  int total_memory{kDefaultTotalMemory};
  std::vector<int> plan_grid;
  int seeds{20};
  std::uint64_t master_seed{0};
  MctsOptions mcts;
  int jobs{1};
};

/// One evaluation episode of one (dataset, N_pi, seed) cell.
struct SweepRow {
  std::string dataset;
  int n_pi{0};
  int seed{0};
  double episode_return{0.0};
  int steps{0};
  std::string goal;  // empty when no goal was reached

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// What one pipeline run produced, for inspection in tests.
struct AllocationRun {
  MemoryBudget budget;
  std::size_t stream_size{0};
  std::size_t model_transitions{0};
  int tree_nodes{0};
  Plan plan;
  EpisodeResult result;
};

/// Seed of one cell; a pure function of its identity, never of scheduling.
std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& dataset, int n_pi, int seed_index);

/// The whole memory-constrained agent pipeline for one cell: generate the
/// dataset, keep N - n_pi transitions by reservoir sampling, fit the model,
/// search with an n_pi node budget, extract the plan and evaluate it once.
AllocationRun run_allocation(const DatasetSpec& dataset, const CorridorEnv& env, int total_memory, int n_pi,
                             const MctsOptions& mcts, std::uint64_t seed);

/// Every dataset x grid value x seed, rows ordered by dataset, grid, seed.
std::vector<SweepRow> sweep_allocation(const std::vector<DatasetSpec>& datasets, const CorridorEnv& env,
                                       const SweepOptions& options);

/// CSV with header "dataset,n_pi,seed,return,steps,goal".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace membudget
