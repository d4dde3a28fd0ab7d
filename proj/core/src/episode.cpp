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

#include "membudget/episode.hpp"

#include <cmath>
#include <string>

namespace membudget {

std::string_view actions::name(ActionId a) {
  static constexpr std::string_view kNames[] = {"up", "down", "right", "left"};
  return a.index < 4 ? kNames[a.index] : std::string_view{"invalid"};
}

ActionId checked_action(int index) {
  if (index < 0 || index >= ActionId::kCount) {
    throw ContractViolation("action index " + std::to_string(index) + " outside [0, 4)");
  }
  return ActionId{static_cast<std::uint8_t>(index)};
}

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double discounted_return(std::span<const double> rewards, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("discount factor must lie in [0, 1]");
  CompensatedSum total;
  double weight = 1.0;
  for (double r : rewards) {
    total.add(weight * r);
    weight *= gamma;
  }
  return total.value();
}

}  // namespace membudget
