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

#include "membudget/sweep.hpp"

#include <istream>
#include <ostream>

#include "membudget/csv.hpp"
#include "membudget/errors.hpp"
#include "membudget/parallel.hpp"
#include "membudget/rng.hpp"
#include "membudget/tabular_model.hpp"

namespace membudget {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t master_seed, const std::string& dataset, int n_pi, int seed_index) {
  return derive_seed(master_seed, fnv1a(dataset), static_cast<std::uint64_t>(n_pi),
                     static_cast<std::uint64_t>(seed_index));
}

AllocationRun run_allocation(const DatasetSpec& dataset, const CorridorEnv& env, int total_memory, int n_pi,
                             const MctsOptions& mcts, std::uint64_t seed) {
  SeededRng master(seed);
  SeededRng data_rng = master.fork();
  SeededRng select_rng = master.fork();
  SeededRng search_rng = master.fork();
  SeededRng eval_rng = master.fork();

  AllocationRun run;
  run.budget = make_split(total_memory, n_pi);
  TransitionStream stream = generate(dataset, env, data_rng);
  run.stream_size = stream.size();
  const auto kept = reservoir_select(stream, run.budget.model_units, select_rng);
  const auto model = TabularModel::fit(kept, run.budget);
  run.model_transitions = model.stored_transitions();

  const StateId s0 = env.state_id(env.layout().start);
  const SearchTree tree = build_tree(model, s0, run.budget, mcts, search_rng);
  run.tree_nodes = tree.nodes_used();
  run.plan = extract_plan(tree, mcts.horizon);

  CorridorEnv eval_env(env.layout());
  run.result = execute_plan(eval_env, run.plan, eval_rng);
  return run;
}

std::vector<SweepRow> sweep_allocation(const std::vector<DatasetSpec>& datasets, const CorridorEnv& env,
                                       const SweepOptions& options) {
  if (options.seeds < 1) throw ValidationError("seed count must be >= 1");
  for (int n_pi : options.plan_grid) {
    if (n_pi < 0 || n_pi > options.total_memory) {
      throw ValidationError("plan grid value " + std::to_string(n_pi) + " outside [0, " +
                            std::to_string(options.total_memory) + "]");
    }
  }
  const std::size_t per_dataset = options.plan_grid.size() * static_cast<std::size_t>(options.seeds);
  std::vector<SweepRow> rows(datasets.size() * per_dataset);
  parallel_for(rows.size(), options.jobs, [&](std::size_t i) {
    const auto& ds = datasets[i / per_dataset];
    const std::size_t rest = i % per_dataset;
    const int n_pi = options.plan_grid[rest / static_cast<std::size_t>(options.seeds)];
    const int seed_index = static_cast<int>(rest % static_cast<std::size_t>(options.seeds));
    const std::string name = ds.name();
    const auto run = run_allocation(ds, env, options.total_memory, n_pi, options.mcts,
                                    cell_seed(options.master_seed, name, n_pi, seed_index));
    rows[i] = SweepRow{name, n_pi, seed_index, run.result.undiscounted_return, run.result.steps,
                       run.result.reached_goal.value_or("")};
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "dataset,n_pi,seed,return,steps,goal\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.n_pi << ',' << r.seed << ',' << csv::format_double(r.episode_return) << ','
        << r.steps << ',' << r.goal << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      csv::split(line) != std::vector<std::string_view>{"dataset", "n_pi", "seed", "return", "steps", "goal"}) {
    throw ValidationError("sweep CSV must start with 'dataset,n_pi,seed,return,steps,goal'");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 6) throw ValidationError("sweep CSV row needs 6 fields: " + line);
    rows.push_back(SweepRow{std::string(f[0]), static_cast<int>(csv::parse_int(f[1])),
                            static_cast<int>(csv::parse_int(f[2])), csv::parse_double(f[3]),
                            static_cast<int>(csv::parse_int(f[4])), std::string(f[5])});
  }
  return rows;
}

}  // namespace membudget
