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
#include <deque>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "membudget/budget.hpp"
#include "membudget/jellybean.hpp"
#include "membudget/mlp.hpp"
#include "membudget/rng.hpp"
#include "membudget/types.hpp"

namespace membudget {

inline constexpr int kObservationWidth = Observation::kSize;
inline constexpr int kActionCount = ActionId::kCount;

/// Permanent and transient value networks; Q = Q_perm + Q_trans entrywise.
struct QPair {
  Mlp permanent;
  Mlp transient;

  /// Both networks see the full observation and emit four action values.
  static QPair random(const PtSplit& split, SeededRng& rng, int input = kObservationWidth);

  [[nodiscard]] Eigen::MatrixXd q_values(const Eigen::MatrixXd& obs) const;
  [[nodiscard]] Eigen::Vector4d q_values(const Observation& obs) const;

  friend bool operator==(const QPair&, const QPair&) = default;
};

Eigen::Map<const Eigen::VectorXd> as_vector(const Observation& obs);

struct Experience {
  Observation obs;
  ActionId action;
  double reward{0.0};
  Observation next_obs;
};

/// Fixed-capacity FIFO of experiences; the oldest entry is evicted first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void push(Experience e);
  [[nodiscard]] int capacity() const noexcept { return capacity_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(items_.size()); }
  [[nodiscard]] bool empty() const noexcept { return items_.empty(); }
  /// 0 is the oldest retained experience.
  [[nodiscard]] const Experience& operator[](int i) const { return items_.at(static_cast<std::size_t>(i)); }
  /// Indices drawn uniformly with replacement.
  [[nodiscard]] std::vector<int> sample_indices(int batch, SeededRng& rng) const;

 private:
  int capacity_;
  std::deque<Experience> items_;
};

/// Column-stacked minibatch.
struct TrainingBatch {
  Eigen::MatrixXd obs;
  Eigen::MatrixXd next_obs;
  std::vector<int> actions;
  Eigen::VectorXd rewards;

  static TrainingBatch gather(const ReplayBuffer& buffer, const std::vector<int>& indices);
  static TrainingBatch from(const std::vector<Experience>& experiences);
  [[nodiscard]] int size() const noexcept { return static_cast<int>(actions.size()); }
};

/// r + gamma * max_a' Q(s', a') using the combined value.
Eigen::VectorXd td_targets(const QPair& pair, const TrainingBatch& batch, double gamma);

/// Mean half squared TD error of the combined Q against fixed targets:
///   L = 1/(2B) * sum_i (Q(s_i, a_i) - y_i)^2
double transient_loss(const QPair& pair, const TrainingBatch& batch, const Eigen::VectorXd& targets);
/// dL/d(transient parameters) with targets held fixed.
MlpGradients transient_gradient(const QPair& pair, const TrainingBatch& batch, const Eigen::VectorXd& targets);

/// One SGD step on the transient network toward the TD targets; the
/// permanent network is not touched. Returns the per-sample TD errors
/// measured before the step.
std::vector<double> transient_update(QPair& pair, const TrainingBatch& batch, double gamma, double learning_rate);

/// L = 1/(2B) * sum_i ||Q_perm(s_i) - targets_i||^2 over all four actions.
double consolidation_loss(const QPair& pair, const Eigen::MatrixXd& obs, const Eigen::MatrixXd& targets);
MlpGradients consolidation_gradient(const QPair& pair, const Eigen::MatrixXd& obs, const Eigen::MatrixXd& targets);

struct ConsolidationOptions {
  double learning_rate{0.01};
  /// Factor applied to the transient output layer afterwards.
  double transient_decay{0.0};
  int steps{20};
  int batch_size{16};
};

/// Regresses the permanent network toward the combined values of buffered
/// observations (targets frozen per minibatch), then multiplies the
/// transient output layer by transient_decay. Does nothing when the
/// permanent network is degenerate. Returns the loss of each minibatch
/// before its step.
std::vector<double> consolidate(QPair& pair, const ReplayBuffer& buffer, const ConsolidationOptions& options,
                                SeededRng& rng);

/// Epsilon-greedy over the combined values; ties go to the lowest index.
ActionId act(const QPair& pair, const Observation& obs, double epsilon, SeededRng& rng);
/// Greedy choice over four values, lowest index on ties.
ActionId greedy_action(const Eigen::Vector4d& q);

struct AgentConfig {
  double gamma{0.9};
  double lr_transient{0.01};
  double lr_permanent{0.01};
  double epsilon_start{1.0};
  double epsilon_end{0.05};
  std::int64_t epsilon_decay_steps{2000};
  int batch_size{16};
  /// Steps between consolidations; 0 means swap_period / 10.
  std::int64_t consolidation_period{0};
  double transient_decay{0.0};
  int consolidation_steps{20};
  int smoothing_window{1000};

  void validate() const;
  [[nodiscard]] double epsilon_at(std::int64_t t) const;

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

struct ContinualTrace {
  std::vector<double> rewards;
  /// Mean of the last smoothing_window rewards (fewer at the start).
  std::vector<double> smoothed;
  QPair final_pair;
};

/// Trailing windowed mean.
std::vector<double> smooth(const std::vector<double>& rewards, int window);

/// Trains a PT-DQN agent in a fresh world for total_steps steps.
ContinualTrace run_continual(const WorldConfig& world, const PtSplit& split, const AgentConfig& config,
                             std::int64_t total_steps, std::uint64_t seed);

/// Same world and horizon under a uniformly random policy, no learning.
ContinualTrace run_random_baseline(const WorldConfig& world, std::int64_t total_steps, std::uint64_t seed,
                                   int smoothing_window);

/// World seed used by run_continual and run_random_baseline for a run seed.
std::uint64_t world_seed_for(std::uint64_t seed);

}  // namespace membudget
