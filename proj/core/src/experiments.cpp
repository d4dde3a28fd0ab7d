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

#include "membudget/experiments.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>

#include "membudget/csv.hpp"
#include "membudget/errors.hpp"
#include "membudget/parallel.hpp"

namespace membudget {

std::uint64_t master_seed_from_env(std::uint64_t fallback) {
  const char* value = std::getenv("MEMBUDGET_SEED");
  if (!value || !*value) return fallback;
  const auto parsed = csv::parse_int(value);
  if (parsed < 0) throw ValidationError("MEMBUDGET_SEED must be a non-negative integer");
  return static_cast<std::uint64_t>(parsed);
}

std::vector<RawPoint> raw_points(const std::vector<SweepRow>& rows) {
  std::vector<RawPoint> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(RawPoint{r.dataset, static_cast<double>(r.n_pi), r.seed, r.episode_return});
  return out;
}

std::vector<RawPoint> raw_points(const std::vector<TraceRow>& rows) {
  std::vector<RawPoint> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(RawPoint{r.label, static_cast<double>(r.step), r.seed, r.reward_smoothed});
  return out;
}

MctsExperiment run_mcts_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<DatasetSpec> datasets;
  for (const auto& name : config.datasets) datasets.push_back(DatasetSpec::parse(name));
  SweepOptions options;
  options.total_memory = config.total_memory;
  options.plan_grid = config.plan_grid;
  options.seeds = config.seeds;
  options.master_seed = config.master_seed;
  options.mcts = config.mcts;
  options.jobs = config.jobs;
  MctsExperiment out;
  out.raw = sweep_allocation(datasets, CorridorEnv(config.corridor), options);
  out.aggregate = aggregate(raw_points(out.raw));
  return out;
}

std::uint64_t ptdqn_run_seed(std::uint64_t master_seed, int seed_index) {
  return derive_seed(master_seed, 0x50545F44514EULL, static_cast<std::uint64_t>(seed_index));
}

namespace {

void append_trace(std::vector<TraceRow>& rows, const std::vector<double>& smoothed, int seed,
                  const std::string& label, int stride) {
  for (std::size_t t = 0; t < smoothed.size(); ++t) {
    // Keep the last step so the final value always appears.
    if (t % static_cast<std::size_t>(stride) == 0 || t + 1 == smoothed.size()) {
      rows.push_back(TraceRow{static_cast<std::int64_t>(t), seed, label, smoothed[t]});
    }
  }
}

}  // namespace

PtdqnExperiment run_ptdqn_experiment(const ExperimentConfig& config) {
  config.validate();
  PtdqnExperiment out;
  const auto n_fractions = config.permanent_fractions.size();
  const auto n_seeds = static_cast<std::size_t>(config.seeds);
  out.runs.resize(n_fractions * n_seeds);
  parallel_for(out.runs.size(), config.jobs, [&](std::size_t i) {
    const double fraction = config.permanent_fractions[i / n_seeds];
    const int seed = static_cast<int>(i % n_seeds);
    const auto split = make_pt_split(config.hidden_widths, config.buffer_capacity, fraction);
    out.runs[i] = PtdqnRun{fraction, seed,
                           run_continual(config.world, split, config.agent, config.total_steps,
                                         ptdqn_run_seed(config.master_seed, seed))};
  });
  for (const auto& run : out.runs) {
    append_trace(out.raw, run.trace.smoothed, run.seed, csv::format_double(run.permanent_fraction),
                 config.trace_stride);
  }
  out.aggregate = aggregate(raw_points(out.raw));
  return out;
}

BaselineExperiment run_baseline_experiment(const ExperimentConfig& config) {
  config.validate();
  BaselineExperiment out;
  const auto n = static_cast<std::size_t>(config.seeds);
  out.corridor.resize(n);
  std::vector<ContinualTrace> traces(n);
  parallel_for(n, config.jobs, [&](std::size_t i) {
    const int seed = static_cast<int>(i);
    CorridorEnv env(config.corridor);
    SeededRng rng(cell_seed(config.master_seed, "random", 0, seed));
    const auto result = execute_plan(env, Plan{}, rng);
    out.corridor[i] = SweepRow{"random", 0, seed, result.undiscounted_return, result.steps,
                               result.reached_goal.value_or("")};
    traces[i] = run_random_baseline(config.world, config.total_steps, ptdqn_run_seed(config.master_seed, seed),
                                    config.agent.smoothing_window);
  });
  for (std::size_t i = 0; i < n; ++i) {
    append_trace(out.jellybean, traces[i].smoothed, static_cast<int>(i), "random", config.trace_stride);
  }
  return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "step,seed,permanent_fraction,reward_smoothed\n";
  for (const auto& r : rows) {
    out << r.step << ',' << r.seed << ',' << r.label << ',' << csv::format_double(r.reward_smoothed) << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      csv::split(line) != std::vector<std::string_view>{"step", "seed", "permanent_fraction", "reward_smoothed"}) {
    throw ValidationError("trace CSV must start with 'step,seed,permanent_fraction,reward_smoothed'");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 4) throw ValidationError("trace CSV row needs 4 fields: " + line);
    rows.push_back(TraceRow{csv::parse_int(f[0]), static_cast<int>(csv::parse_int(f[1])), std::string(f[2]),
                            csv::parse_double(f[3])});
  }
  return rows;
}

}  // namespace membudget
