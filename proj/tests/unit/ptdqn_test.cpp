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
#include <random>

#include "membudget/errors.hpp"
#include "membudget/ptdqn.hpp"
#include "test_support.hpp"

namespace membudget {
namespace {

TrainingBatch random_batch(SeededRng& rng, int input, int size) {
  TrainingBatch b;
  b.obs = Eigen::MatrixXd(input, size);
  b.next_obs = Eigen::MatrixXd(input, size);
  b.rewards = Eigen::VectorXd(size);
  for (int j = 0; j < size; ++j) {
    for (int i = 0; i < input; ++i) {
      b.obs(i, j) = rng.uniform(-1, 1);
      b.next_obs(i, j) = rng.uniform(-1, 1);
    }
    b.actions.push_back(static_cast<int>(rng.uniform_below(4)));
    b.rewards(j) = rng.uniform(-1, 2);
  }
  return b;
}

QPair small_pair(SeededRng& rng, int input = 6) {
  const auto split = make_pt_split({1 + static_cast<int>(rng.uniform_below(8)), 1 + static_cast<int>(rng.uniform_below(8))},
                                   4, rng.uniform(0.2, 0.8));
  return QPair::random(split, rng, input);
}

TEST(QPair, CombinedValueIsSumOfNetworks) {
  SeededRng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto pair = small_pair(rng);
    const Eigen::MatrixXd x = Eigen::MatrixXd::Random(6, 4);
    EXPECT_EQ(pair.q_values(x), (pair.permanent.forward(x) + pair.transient.forward(x)).eval());
  }
  const auto zero_perm = QPair::random(make_pt_split(default_hidden_widths(), 52, 0.0), rng);
  Observation obs;
  obs.values[10] = 1;
  EXPECT_TRUE(zero_perm.permanent.forward(as_vector(obs)).isZero(0));
}

TEST(TransientUpdate, HandComputedStep) {
  QPair pair{Mlp(2, {0}, 4), Mlp(2, {1}, 4)};
  pair.transient.weight(0) << 1.0, 0.0;
  pair.transient.weight(1) << 1.0, 2.0, 3.0, 4.0;
  TrainingBatch b;
  b.obs = Eigen::MatrixXd(2, 1);
  b.obs << 2.0, 1.0;
  b.next_obs = Eigen::MatrixXd::Zero(2, 1);
  b.actions = {1};
  b.rewards = Eigen::VectorXd::Constant(1, 1.0);
  // h = 2, Q(s, 1) = 4, target 1, delta 3.
  const auto residuals = transient_update(pair, b, 0.9, 0.01);
  ASSERT_EQ(residuals.size(), 1u);
  EXPECT_DOUBLE_EQ(residuals[0], 3.0);
  EXPECT_DOUBLE_EQ(pair.transient.weight(1)(1, 0), 2.0 - 0.01 * 6.0);
  EXPECT_DOUBLE_EQ(pair.transient.weight(1)(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(pair.transient.bias(1)(1), -0.03);
  EXPECT_DOUBLE_EQ(pair.transient.weight(0)(0, 0), 1.0 - 0.01 * 12.0);
  EXPECT_DOUBLE_EQ(pair.transient.weight(0)(0, 1), -0.01 * 6.0);
  EXPECT_DOUBLE_EQ(pair.transient.bias(0)(0), -0.06);
}

TEST(TransientUpdate, NeverTouchesPermanent) {
  SeededRng rng(2);
  for (int t = 0; t < 30; ++t) {
    auto pair = small_pair(rng);
    const Mlp before = pair.permanent;
    (void)transient_update(pair, random_batch(rng, 6, 5), 0.9, 0.1);
    EXPECT_EQ(pair.permanent, before);
  }
}

TEST(TransientGradient, ZeroAtFixedPoint) {
  SeededRng rng(3);
  auto pair = small_pair(rng);
  const auto b = random_batch(rng, 6, 7);
  const Eigen::MatrixXd q = pair.q_values(b.obs);
  Eigen::VectorXd targets(b.size());
  for (int j = 0; j < b.size(); ++j) targets(j) = q(b.actions[static_cast<std::size_t>(j)], j);
  const auto g = transient_gradient(pair, b, targets);
  for (const auto& w : g.weights) EXPECT_TRUE(w.isZero(0));
  EXPECT_EQ(transient_loss(pair, b, targets), 0.0);
}

double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-7});
}

template <typename Loss>
void check_against_fd(Mlp& net, const MlpGradients& g, Loss&& loss) {
  const double h = 1e-6;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    for (Eigen::Index i = 0; i < net.weight(l).size(); ++i) {
      double& p = net.weight(l).data()[i];
      const double keep = p;
      p = keep + h;
      const double up = loss();
      p = keep - h;
      const double down = loss();
      p = keep;
      const double fd = (up - down) / (2 * h);
      // Kinks of the ReLU make single coordinates unreliable when an input
      // sits within h of zero; the absolute floor absorbs those.
      if (std::abs(fd) > 1e-5) ASSERT_LT(relative_error(g.weights[l].data()[i], fd), 1e-4);
    }
    for (Eigen::Index i = 0; i < net.bias(l).size(); ++i) {
      double& p = net.bias(l)(i);
      const double keep = p;
      p = keep + h;
      const double up = loss();
      p = keep - h;
      const double down = loss();
      p = keep;
      const double fd = (up - down) / (2 * h);
      if (std::abs(fd) > 1e-5) ASSERT_LT(relative_error(g.biases[l](i), fd), 1e-4);
    }
  }
}

TEST(Gradients, MatchFiniteDifferences) {
  SeededRng rng(4);
  for (int t = 0; t < 25; ++t) {
    auto pair = small_pair(rng);
    const auto b = random_batch(rng, 6, 4);
    const auto targets = td_targets(pair, b, 0.9);
    check_against_fd(pair.transient, transient_gradient(pair, b, targets),
                     [&] { return transient_loss(pair, b, targets); });
    const Eigen::MatrixXd cons_targets = Eigen::MatrixXd::Random(4, 4);
    check_against_fd(pair.permanent, consolidation_gradient(pair, b.obs, cons_targets),
                     [&] { return consolidation_loss(pair, b.obs, cons_targets); });
  }
}

ReplayBuffer filled_buffer(SeededRng& rng, int n) {
  ReplayBuffer buf(n);
  for (int i = 0; i < n; ++i) {
    Experience e;
    for (auto& v : e.obs.values) v = rng.bernoulli(0.05);
    e.next_obs = e.obs;
    e.action = ActionId{static_cast<std::uint8_t>(i % 4)};
    e.reward = 0.1;
    buf.push(e);
  }
  return buf;
}

TEST(Consolidate, FullDecayZeroesTransientOutputs) {
  SeededRng rng(5);
  auto pair = QPair::random(make_pt_split({8, 8}, 10, 0.5), rng);
  const auto buf = filled_buffer(rng, 10);
  ConsolidationOptions opts;
  opts.transient_decay = 0.0;
  const auto losses = consolidate(pair, buf, opts, rng);
  EXPECT_EQ(losses.size(), static_cast<std::size_t>(opts.steps));
  EXPECT_TRUE(pair.transient.forward(as_vector(buf[3].obs)).isZero(0));
}

TEST(Consolidate, NoDecayAndNoLearningIsNoOp) {
  SeededRng rng(6);
  auto pair = QPair::random(make_pt_split({8, 8}, 10, 0.5), rng);
  const QPair before = pair;
  ConsolidationOptions opts;
  opts.transient_decay = 1.0;
  opts.learning_rate = 0.0;
  (void)consolidate(pair, filled_buffer(rng, 10), opts, rng);
  EXPECT_EQ(pair, before);
}

TEST(Consolidate, ReducesRegressionLoss) {
  SeededRng rng(7);
  auto pair = QPair::random(make_pt_split({8, 8}, 10, 0.5), rng);
  ConsolidationOptions opts;
  opts.transient_decay = 1.0;
  opts.learning_rate = 0.05;
  opts.steps = 300;
  const auto losses = consolidate(pair, filled_buffer(rng, 10), opts, rng);
  EXPECT_LT(losses.back(), losses.front());
}

TEST(Consolidate, SkippedWithoutPermanentNetwork) {
  SeededRng rng(8);
  auto pair = QPair::random(make_pt_split({8, 8}, 10, 0.0), rng);
  const QPair before = pair;
  EXPECT_TRUE(consolidate(pair, filled_buffer(rng, 10), ConsolidationOptions{}, rng).empty());
  EXPECT_EQ(pair, before);
}

TEST(Act, GreedyAndTies) {
  EXPECT_EQ(greedy_action(Eigen::Vector4d(1, 3, 2, 0)), actions::kDown);
  EXPECT_EQ(greedy_action(Eigen::Vector4d(2, 2, 0, 0)), actions::kUp);
  QPair zero{Mlp(kObservationWidth, {2}, 4), Mlp(kObservationWidth, {2}, 4)};
  SeededRng rng(9);
  EXPECT_EQ(act(zero, Observation{}, 0.0, rng), actions::kUp);
}

TEST(Act, FullExplorationIsUniform) {
  SeededRng rng(10);
  const auto pair = QPair::random(make_pt_split({4}, 1, 0.5), rng);
  std::vector<std::uint64_t> counts(4, 0);
  for (int i = 0; i < 10000; ++i) ++counts[act(pair, Observation{}, 1.0, rng).index];
  EXPECT_LT(testing::chi_square_uniform(counts), testing::chi_square_critical_001(3));
}

TEST(ReplayBuffer, Fifo) {
  ReplayBuffer buf(5);
  for (int i = 0; i < 5 + 3; ++i) {
    Experience e;
    e.reward = i;
    buf.push(e);
  }
  EXPECT_EQ(buf.size(), 5);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(buf[i].reward, i + 3);
  EXPECT_THROW(ReplayBuffer(0), ValidationError);
}

TEST(AgentConfig, EpsilonScheduleAndValidation) {
  AgentConfig c;
  EXPECT_EQ(c.epsilon_at(0), 1.0);
  EXPECT_DOUBLE_EQ(c.epsilon_at(1000), 0.525);
  EXPECT_EQ(c.epsilon_at(2000), 0.05);
  EXPECT_EQ(c.epsilon_at(100000), 0.05);
  c.gamma = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Smooth, TrailingMean) {
  const auto s = smooth({1, 2, 3, 4}, 2);
  EXPECT_EQ(s, (std::vector<double>{1, 1.5, 2.5, 3.5}));
}

TEST(RunContinual, DeterministicPerSeed) {
  WorldConfig w;
  w.swap_period = 100;
  AgentConfig c;
  c.smoothing_window = 50;
  const auto split = make_pt_split({6, 4}, 20, 0.5);
  const auto a = run_continual(w, split, c, 400, 3);
  const auto b = run_continual(w, split, c, 400, 3);
  EXPECT_EQ(a.rewards, b.rewards);
  EXPECT_EQ(a.final_pair, b.final_pair);
  EXPECT_EQ(a.rewards.size(), 400u);
}

// Mean reward per step of a uniform walk, recomputed with the world's
// public interface and an unrelated action source.
TEST(RandomBaseline, MatchesMonteCarloEncounterRate) {
  WorldConfig w;
  w.green_density = 0.05;
  w.cluster_center_density = 0.003;
  w.swap_period = 1000;
  const int steps = 4000, runs = 40;
  std::vector<double> lib, oracle;
  for (int s = 0; s < runs; ++s) {
    const auto t = run_random_baseline(w, steps, static_cast<std::uint64_t>(s), 100);
    lib.push_back(std::accumulate(t.rewards.begin(), t.rewards.end(), 0.0) / steps);
    JellybeanWorld world(w, static_cast<std::uint64_t>(1000 + s));
    std::mt19937 gen(static_cast<unsigned>(s));
    double total = 0;
    for (int i = 0; i < steps; ++i) total += world.move(ActionId{static_cast<std::uint8_t>(gen() % 4)});
    oracle.push_back(total / steps);
  }
  auto mean_se = [](const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::pair{m, std::sqrt(ss / (v.size() - 1) / v.size())};
  };
  const auto [lm, lse] = mean_se(lib);
  const auto [om, ose] = mean_se(oracle);
  EXPECT_NEAR(lm, om, 4 * std::hypot(lse, ose));
}

}  // namespace
}  // namespace membudget
