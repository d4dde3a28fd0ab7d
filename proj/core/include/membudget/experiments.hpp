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
#include <optional>
#include <string>
#include <vector>

#include "membudget/aggregate.hpp"
#include "membudget/config.hpp"
#include "membudget/ptdqn.hpp"
#include "membudget/sweep.hpp"

namespace membudget {

/// Master seed: MEMBUDGET_SEED from the environment when set, else fallback.
/// Throws ValidationError when the variable is not an unsigned integer.
std::uint64_t master_seed_from_env(std::uint64_t fallback);

struct MctsExperiment {
  std::vector<SweepRow> raw;
  std::vector<AggregateRow> aggregate;
};

MctsExperiment run_mcts_experiment(const ExperimentConfig& config);
std::vector<RawPoint> raw_points(const std::vector<SweepRow>& rows);

/// One row of a smoothed reward trace. label is the permanent fraction
/// (shortest decimal form) or "random" for the baseline policy.
struct TraceRow {
  std::int64_t step{0};
  int seed{0};
  std::string label;
  double reward_smoothed{0.0};

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct PtdqnRun {
  double permanent_fraction{0.0};
  int seed{0};
  ContinualTrace trace;
};

struct PtdqnExperiment {
  std::vector<PtdqnRun> runs;
  std::vector<TraceRow> raw;
  std::vector<AggregateRow> aggregate;
};

/// Seed of PT-DQN run seed_index. Shared by all fractions so that every
/// split faces the same world.
std::uint64_t ptdqn_run_seed(std::uint64_t master_seed, int seed_index);

PtdqnExperiment run_ptdqn_experiment(const ExperimentConfig& config);
std::vector<RawPoint> raw_points(const std::vector<TraceRow>& rows);

struct BaselineExperiment {
  /// Corridor episodes with an empty plan (pure random walk).
  std::vector<SweepRow> corridor;
  /// Uniform-random policy in the continual world.
  std::vector<TraceRow> jellybean;
};

BaselineExperiment run_baseline_experiment(const ExperimentConfig& config);

/// CSV with header "step,seed,permanent_fraction,reward_smoothed".
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_trace_csv(std::istream& in);

}  // namespace membudget
