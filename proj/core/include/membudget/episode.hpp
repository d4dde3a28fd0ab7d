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

#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include "membudget/errors.hpp"
#include "membudget/rng.hpp"
#include "membudget/types.hpp"

namespace membudget {

/// Neumaier-compensated running sum. Episode returns are accumulated with
/// it so that e.g. one hundred -0.01 penalties total exactly -1.0.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  [[nodiscard]] double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_{0.0};
  double compensation_{0.0};
};

/// Sum of gamma^t * r_t. Empty input yields 0.
double discounted_return(std::span<const double> rewards, double gamma);

struct StepOutcome {
  double reward{0.0};
  bool done{false};
  Transition transition;
  std::optional<std::string> goal;
};

template <typename E>
concept SteppableEnv = requires(E& env, ActionId a) {
  { env.reset() };
  { env.step(a) } -> std::same_as<StepOutcome>;
  { env.current_state() } -> std::convertible_to<StateId>;
};

/// A policy: (current state, steps taken so far, rng) -> raw action index.
/// The index is range-checked by run_episode.
template <typename P>
concept ActionSource = std::invocable<P&, StateId, int, SeededRng&> &&
    std::convertible_to<std::invoke_result_t<P&, StateId, int, SeededRng&>, int>;

/// Resets env and steps it until it reports done or horizon steps were taken.
/// Rewards are summed undiscounted.
template <SteppableEnv Env, ActionSource Policy>
EpisodeResult run_episode(Env& env, Policy&& policy, int horizon, SeededRng& rng) {
  if (horizon < 1) throw ContractViolation("run_episode: horizon must be >= 1");
  env.reset();
  EpisodeResult result;
  CompensatedSum total;
  for (int t = 0; t < horizon; ++t) {
    const ActionId action = checked_action(static_cast<int>(policy(env.current_state(), t, rng)));
    StepOutcome out = env.step(action);
    total.add(out.reward);
    ++result.steps;
    if (out.done) {
      result.reached_goal = std::move(out.goal);
      break;
    }
  }
  result.undiscounted_return = total.value();
  return result;
}

}  // namespace membudget
