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

#include <vector>

namespace membudget {

/// Memory units.
///
/// A unit is one stored transition (world model), one search-tree node
/// (plan), one hidden neuron or one replay-buffer slot (PT-DQN). Reward
/// estimates, visit counters and other bookkeeping are not charged.
inline constexpr int kDefaultTotalMemory = 500;

/// Split of a total budget N between the world model and the plan.
/// Invariant: model_units + plan_units == total, both non-negative.
struct MemoryBudget {
  int total{0};
  int model_units{0};
  int plan_units{0};

  friend bool operator==(const MemoryBudget&, const MemoryBudget&) = default;
};

/// Gives plan_units to the plan and the remainder to the model.
/// Throws ValidationError unless 0 <= plan_units <= total.
MemoryBudget make_split(int total, int plan_units);

struct LayerAllocation {
  std::vector<int> permanent;
  std::vector<int> transient;
};

/// Per-layer split of hidden widths: permanent = round-half-up(fraction * width),
/// transient takes the remainder.
LayerAllocation allocate_pt_layers(const std::vector<int>& hidden_widths, double permanent_fraction);

/// Hidden-unit/buffer split of a PT-DQN agent. The fixed output layer is
/// never counted.
struct PtSplit {
  std::vector<int> hidden_widths;
  int buffer_capacity{0};
  double permanent_fraction{0.0};
  std::vector<int> permanent_widths;
  std::vector<int> transient_widths;

  /// Units charged: all hidden neurons plus buffer slots.
  [[nodiscard]] int units() const;
};

PtSplit make_pt_split(std::vector<int> hidden_widths, int buffer_capacity, double permanent_fraction);

/// True iff the split is internally consistent (per-layer permanent +
/// transient == base width) and charges exactly total units.
bool verify_budget(const PtSplit& split, int total = kDefaultTotalMemory);

/// Default base network hidden layers and buffer for the N = 500 budget.
std::vector<int> default_hidden_widths();
inline constexpr int kDefaultBufferCapacity = 52;

}  // namespace membudget
