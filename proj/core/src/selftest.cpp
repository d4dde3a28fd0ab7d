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

#include "membudget/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "membudget/budget.hpp"
#include "membudget/corridor.hpp"
#include "membudget/datasets.hpp"
#include "membudget/jellybean.hpp"
#include "membudget/mcts.hpp"
#include "membudget/ptdqn.hpp"
#include "membudget/tabular_model.hpp"

namespace membudget {
namespace {

bool oracle_returns() {
  CorridorEnv env;
  const double expected[] = {0.17, 0.33, 0.49, 0.65};
  for (std::size_t i = 0; i < env.layout().goals.size(); ++i) {
    const auto path = env.shortest_path(env.layout().start, env.layout().goals[i].label);
    SeededRng rng(0);
    auto policy = [&](StateId, int t, SeededRng&) { return static_cast<int>(path[static_cast<std::size_t>(t)].index); };
    if (run_episode(env, policy, static_cast<int>(path.size()), rng).undiscounted_return != expected[i]) return false;
  }
  SeededRng rng(0);
  auto bump = [](StateId, int, SeededRng&) { return static_cast<int>(actions::kUp.index); };
  return run_episode(env, bump, 100, rng).undiscounted_return == -1.0;
}

bool budget_split() {
  for (int n_pi = 0; n_pi <= kDefaultTotalMemory; ++n_pi) {
    const auto b = make_split(kDefaultTotalMemory, n_pi);
    if (b.model_units + b.plan_units != b.total) return false;
  }
  return verify_budget(make_pt_split(default_hidden_widths(), kDefaultBufferCapacity, 0.1));
}

bool tree_budget() {
  CorridorEnv env;
  SeededRng rng(7);
  auto stream = generate(DatasetSpec{DatasetKind::kRa, 200, 0}, env, rng);
  for (int n_pi : {0, 1, 5, 17, 60}) {
    const auto budget = make_split(100, n_pi);
    TransitionStream copy = stream;
    const auto kept = reservoir_select(copy, budget.model_units, rng);
    const auto model = TabularModel::fit(kept, budget);
    const auto tree = build_tree(model, StateId{0}, budget, MctsOptions{}, rng);
    if (tree.nodes_used() > n_pi || model.stored_transitions() > static_cast<std::size_t>(budget.model_units)) {
      return false;
    }
  }
  return true;
}

bool mle_counts() {
  SeededRng rng(1);
  const std::vector<Transition> data = {
      {StateId{0}, actions::kRight, -0.01, StateId{1}, false},
      {StateId{0}, actions::kRight, -0.01, StateId{2}, false},
      {StateId{0}, actions::kRight, -0.01, StateId{1}, false},
  };
  const auto model = TabularModel::fit(data, make_split(3, 0));
  return model.count(StateId{0}, actions::kRight) == 3 &&
         model.count(StateId{0}, actions::kRight, StateId{1}) == 2 && !model.sample_next(StateId{5}, actions::kUp, rng);
}

bool phase_schedule() {
  return phase(0, 150000) == PhaseRewards{-1, 2} && phase(149999, 150000) == PhaseRewards{-1, 2} &&
         phase(150000, 150000) == PhaseRewards{2, -1} && phase(300000, 150000) == PhaseRewards{-1, 2};
}

bool pt_additivity() {
  SeededRng rng(3);
  const auto split = make_pt_split({6, 5}, 4, 0.5);
  const auto pair = QPair::random(split, rng, 10);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(10, 3);
  const Eigen::MatrixXd sum = pair.permanent.forward(x) + pair.transient.forward(x);
  return pair.q_values(x) == sum;
}

bool transient_gradient_check() {
  SeededRng rng(11);
  const auto split = make_pt_split({5, 4}, 4, 0.4);
  auto pair = QPair::random(split, rng, kObservationWidth);
  std::vector<Experience> exps(3);
  for (auto& e : exps) {
    for (auto& v : e.obs.values) v = rng.bernoulli(0.1) ? 1.0 : 0.0;
    for (auto& v : e.next_obs.values) v = rng.bernoulli(0.1) ? 1.0 : 0.0;
    e.action = ActionId{static_cast<std::uint8_t>(rng.uniform_below(4))};
    e.reward = rng.uniform(-1, 2);
  }
  const auto batch = TrainingBatch::from(exps);
  const auto targets = td_targets(pair, batch, 0.9);
  const auto grads = transient_gradient(pair, batch, targets);
  const double h = 1e-6;
  for (std::size_t l = 0; l < pair.transient.layer_count(); ++l) {
    auto& b = pair.transient.bias(l);
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      const double keep = b(i);
      b(i) = keep + h;
      const double up = transient_loss(pair, batch, targets);
      b(i) = keep - h;
      const double down = transient_loss(pair, batch, targets);
      b(i) = keep;
      const double fd = (up - down) / (2 * h);
      if (std::fabs(fd - grads.biases[l](i)) > 1e-6 + 1e-4 * std::fabs(fd)) return false;
    }
  }
  return true;
}

}  // namespace

bool run_selftest(std::ostream& log) {
  const std::vector<std::pair<std::string, std::function<bool()>>> checks = {
      {"corridor oracle returns", oracle_returns},
      {"memory split conservation", budget_split},
      {"tree and model budgets", tree_budget},
      {"MLE counts", mle_counts},
      {"reward phase schedule", phase_schedule},
      {"PT combined-Q additivity", pt_additivity},
      {"transient gradient vs finite differences", transient_gradient_check},
  };
  bool ok = true;
  for (const auto& [name, check] : checks) {
    bool passed = false;
    try {
      passed = check();
    } catch (const std::exception& e) {
      log << "error: " << e.what() << '\n';
    }
    log << (passed ? "PASS " : "FAIL ") << name << '\n';
    ok = ok && passed;
  }
  return ok;
}

}  // namespace membudget
