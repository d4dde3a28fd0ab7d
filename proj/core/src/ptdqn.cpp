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

#include "membudget/ptdqn.hpp"

#include <algorithm>
#include <cmath>

#include "membudget/errors.hpp"

namespace membudget {

QPair QPair::random(const PtSplit& split, SeededRng& rng, int input) {
  QPair pair;
  pair.permanent = Mlp::random(input, split.permanent_widths, kActionCount, rng);
  pair.transient = Mlp::random(input, split.transient_widths, kActionCount, rng);
  return pair;
}

Eigen::MatrixXd QPair::q_values(const Eigen::MatrixXd& obs) const {
  return permanent.forward(obs) + transient.forward(obs);
}

Eigen::Vector4d QPair::q_values(const Observation& obs) const {
  const Eigen::MatrixXd x = as_vector(obs);
  return q_values(x);
}

Eigen::Map<const Eigen::VectorXd> as_vector(const Observation& obs) {
  return Eigen::Map<const Eigen::VectorXd>(obs.values.data(), Observation::kSize);
}

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw ValidationError("replay buffer capacity must be >= 1");
}

void ReplayBuffer::push(Experience e) {
  if (size() == capacity_) items_.pop_front();
  items_.push_back(std::move(e));
}

std::vector<int> ReplayBuffer::sample_indices(int batch, SeededRng& rng) const {
  if (items_.empty()) throw ContractViolation("sampling from an empty replay buffer");
  std::vector<int> out(static_cast<std::size_t>(batch));
  for (auto& i : out) i = static_cast<int>(rng.uniform_below(items_.size()));
  return out;
}

TrainingBatch TrainingBatch::gather(const ReplayBuffer& buffer, const std::vector<int>& indices) {
  TrainingBatch b;
  const auto n = static_cast<Eigen::Index>(indices.size());
  b.obs.resize(kObservationWidth, n);
  b.next_obs.resize(kObservationWidth, n);
  b.rewards.resize(n);
  b.actions.reserve(indices.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const Experience& e = buffer[indices[static_cast<std::size_t>(j)]];
    b.obs.col(j) = as_vector(e.obs);
    b.next_obs.col(j) = as_vector(e.next_obs);
    b.rewards(j) = e.reward;
    b.actions.push_back(e.action.index);
  }
  return b;
}

TrainingBatch TrainingBatch::from(const std::vector<Experience>& experiences) {
  ReplayBuffer tmp(std::max<int>(1, static_cast<int>(experiences.size())));
  std::vector<int> idx;
  for (const auto& e : experiences) {
    idx.push_back(tmp.size());
    tmp.push(e);
  }
  return gather(tmp, idx);
}

Eigen::VectorXd td_targets(const QPair& pair, const TrainingBatch& batch, double gamma) {
  const Eigen::MatrixXd next_q = pair.q_values(batch.next_obs);
  return batch.rewards + gamma * next_q.colwise().maxCoeff().transpose();
}

namespace {

// Residuals Q(s_i, a_i) - y_i and the transient forward cache.
Eigen::VectorXd td_residuals(const QPair& pair, const TrainingBatch& batch, const Eigen::VectorXd& targets,
                             Mlp::Cache* cache) {
  Eigen::MatrixXd q = pair.permanent.forward(batch.obs);
  if (cache) {
    q += pair.transient.forward(batch.obs, *cache);
  } else {
    q += pair.transient.forward(batch.obs);
  }
  Eigen::VectorXd r(batch.size());
  for (int i = 0; i < batch.size(); ++i) r(i) = q(batch.actions[static_cast<std::size_t>(i)], i) - targets(i);
  return r;
}

}  // namespace

double transient_loss(const QPair& pair, const TrainingBatch& batch, const Eigen::VectorXd& targets) {
  const auto r = td_residuals(pair, batch, targets, nullptr);
  return r.squaredNorm() / (2.0 * batch.size());
}

MlpGradients transient_gradient(const QPair& pair, const TrainingBatch& batch, const Eigen::VectorXd& targets) {
  Mlp::Cache cache;
  const auto r = td_residuals(pair, batch, targets, &cache);
  Eigen::MatrixXd d_out = Eigen::MatrixXd::Zero(kActionCount, batch.size());
  for (int i = 0; i < batch.size(); ++i) d_out(batch.actions[static_cast<std::size_t>(i)], i) = r(i) / batch.size();
  return pair.transient.backward(cache, d_out);
}

std::vector<double> transient_update(QPair& pair, const TrainingBatch& batch, double gamma, double learning_rate) {
  if (batch.size() == 0) throw ContractViolation("transient_update needs a non-empty batch");
  const Eigen::VectorXd targets = td_targets(pair, batch, gamma);
  Mlp::Cache cache;
  const auto r = td_residuals(pair, batch, targets, &cache);
  Eigen::MatrixXd d_out = Eigen::MatrixXd::Zero(kActionCount, batch.size());
  for (int i = 0; i < batch.size(); ++i) d_out(batch.actions[static_cast<std::size_t>(i)], i) = r(i) / batch.size();
  pair.transient.sgd_step(pair.transient.backward(cache, d_out), learning_rate);
  return {r.data(), r.data() + r.size()};
}

double consolidation_loss(const QPair& pair, const Eigen::MatrixXd& obs, const Eigen::MatrixXd& targets) {
  return (pair.permanent.forward(obs) - targets).squaredNorm() / (2.0 * static_cast<double>(obs.cols()));
}

MlpGradients consolidation_gradient(const QPair& pair, const Eigen::MatrixXd& obs, const Eigen::MatrixXd& targets) {
  Mlp::Cache cache;
  const Eigen::MatrixXd out = pair.permanent.forward(obs, cache);
  return pair.permanent.backward(cache, (out - targets) / static_cast<double>(obs.cols()));
}

std::vector<double> consolidate(QPair& pair, const ReplayBuffer& buffer, const ConsolidationOptions& options,
                                SeededRng& rng) {
  std::vector<double> losses;
  if (pair.permanent.degenerate()) return losses;
  if (buffer.empty()) throw ContractViolation("consolidation needs a non-empty buffer");
  for (int s = 0; s < options.steps; ++s) {
    const auto batch = TrainingBatch::gather(buffer, buffer.sample_indices(options.batch_size, rng));
    const Eigen::MatrixXd targets = pair.q_values(batch.obs);
    Mlp::Cache cache;
    const Eigen::MatrixXd out = pair.permanent.forward(batch.obs, cache);
    const Eigen::MatrixXd diff = out - targets;
    losses.push_back(diff.squaredNorm() / (2.0 * batch.size()));
    pair.permanent.sgd_step(pair.permanent.backward(cache, diff / static_cast<double>(batch.size())),
                            options.learning_rate);
  }
  pair.transient.scale_output_layer(options.transient_decay);
  return losses;
}

ActionId greedy_action(const Eigen::Vector4d& q) {
  int best = 0;
  for (int a = 1; a < kActionCount; ++a) {
    if (q(a) > q(best)) best = a;
  }
  return ActionId{static_cast<std::uint8_t>(best)};
}

ActionId act(const QPair& pair, const Observation& obs, double epsilon, SeededRng& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
  if (rng.uniform01() < epsilon) return ActionId{static_cast<std::uint8_t>(rng.uniform_below(kActionCount))};
  return greedy_action(pair.q_values(obs));
}

void AgentConfig::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ValidationError("gamma must lie in [0, 1)");
  if (!(transient_decay >= 0.0 && transient_decay <= 1.0)) throw ValidationError("transient decay must lie in [0, 1]");
  auto prob = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!prob(epsilon_start) || !prob(epsilon_end)) throw ValidationError("epsilon must lie in [0, 1]");
  if (epsilon_decay_steps < 0) throw ValidationError("epsilon decay steps must be non-negative");
  if (batch_size < 1) throw ValidationError("batch size must be >= 1");
  if (consolidation_period < 0) throw ValidationError("consolidation period must be non-negative");
  if (consolidation_steps < 0) throw ValidationError("consolidation steps must be non-negative");
  if (smoothing_window < 1) throw ValidationError("smoothing window must be >= 1");
  if (lr_transient < 0.0 || lr_permanent < 0.0) throw ValidationError("learning rates must be non-negative");
}

double AgentConfig::epsilon_at(std::int64_t t) const {
  if (epsilon_decay_steps == 0 || t >= epsilon_decay_steps) return epsilon_end;
  const double frac = static_cast<double>(t) / static_cast<double>(epsilon_decay_steps);
  return epsilon_start + (epsilon_end - epsilon_start) * frac;
}

std::vector<double> smooth(const std::vector<double>& rewards, int window) {
  if (window < 1) throw ValidationError("smoothing window must be >= 1");
  std::vector<double> out(rewards.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < rewards.size(); ++t) {
    sum += rewards[t];
    if (t >= static_cast<std::size_t>(window)) sum -= rewards[t - static_cast<std::size_t>(window)];
    out[t] = sum / static_cast<double>(std::min<std::size_t>(t + 1, static_cast<std::size_t>(window)));
  }
  return out;
}

std::uint64_t world_seed_for(std::uint64_t seed) { return derive_seed(seed, 1); }

ContinualTrace run_continual(const WorldConfig& world_config, const PtSplit& split, const AgentConfig& config,
                             std::int64_t total_steps, std::uint64_t seed) {
  config.validate();
  if (total_steps < 0) throw ValidationError("total steps must be non-negative");
  if (split.buffer_capacity < 1) throw ValidationError("PT-DQN needs a replay buffer of at least one slot");
  JellybeanWorld world(world_config, world_seed_for(seed));
  SeededRng init_rng(derive_seed(seed, 2));
  SeededRng rng(derive_seed(seed, 3));

  ContinualTrace trace;
  trace.final_pair = QPair::random(split, init_rng);
  QPair& pair = trace.final_pair;
  ReplayBuffer buffer(split.buffer_capacity);
  const std::int64_t period =
      config.consolidation_period > 0 ? config.consolidation_period : std::max<std::int64_t>(1, world_config.swap_period / 10);
  const ConsolidationOptions consolidation{config.lr_permanent, config.transient_decay, config.consolidation_steps,
                                           config.batch_size};

  trace.rewards.reserve(static_cast<std::size_t>(total_steps));
  Observation obs = world.observe();
  for (std::int64_t t = 0; t < total_steps; ++t) {
    const ActionId a = act(pair, obs, config.epsilon_at(t), rng);
    auto step = world.step(a);
    trace.rewards.push_back(step.reward);
    buffer.push(Experience{obs, a, step.reward, step.observation});
    obs = step.observation;

    if (buffer.size() >= config.batch_size) {
      const auto batch = TrainingBatch::gather(buffer, buffer.sample_indices(config.batch_size, rng));
      transient_update(pair, batch, config.gamma, config.lr_transient);
    }
    if (!pair.permanent.degenerate() && (t + 1) % period == 0) {
      consolidate(pair, buffer, consolidation, rng);
    }
  }
  trace.smoothed = smooth(trace.rewards, config.smoothing_window);
  return trace;
}

ContinualTrace run_random_baseline(const WorldConfig& world_config, std::int64_t total_steps, std::uint64_t seed,
                                   int smoothing_window) {
  JellybeanWorld world(world_config, world_seed_for(seed));
  SeededRng rng(derive_seed(seed, 3));
  ContinualTrace trace;
  trace.rewards.reserve(static_cast<std::size_t>(std::max<std::int64_t>(total_steps, 0)));
  for (std::int64_t t = 0; t < total_steps; ++t) {
    trace.rewards.push_back(world.move(ActionId{static_cast<std::uint8_t>(rng.uniform_below(kActionCount))}));
  }
  trace.smoothed = smooth(trace.rewards, smoothing_window);
  return trace;
}

}  // namespace membudget
