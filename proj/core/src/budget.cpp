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

#include "membudget/budget.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "membudget/errors.hpp"

namespace membudget {

MemoryBudget make_split(int total, int plan_units) {
  if (total < 0) throw ValidationError("total memory must be non-negative");
  if (plan_units < 0 || plan_units > total) {
    throw ValidationError("plan units " + std::to_string(plan_units) + " outside [0, " +
                          std::to_string(total) + "]");
  }
  return MemoryBudget{total, total - plan_units, plan_units};
}

LayerAllocation allocate_pt_layers(const std::vector<int>& hidden_widths, double permanent_fraction) {
  if (!(permanent_fraction >= 0.0 && permanent_fraction <= 1.0)) {
    throw ValidationError("permanent fraction must lie in [0, 1]");
  }
  LayerAllocation out;
  out.permanent.reserve(hidden_widths.size());
  out.transient.reserve(hidden_widths.size());
  for (int width : hidden_widths) {
    if (width <= 0) throw ValidationError("hidden widths must be positive");
    // The 1e-9 nudge keeps products such as 0.35 * 10 on the half-up side.
    int perm = static_cast<int>(std::floor(permanent_fraction * width + 0.5 + 1e-9));
    perm = std::min(perm, width);
    out.permanent.push_back(perm);
    out.transient.push_back(width - perm);
  }
  return out;
}

int PtSplit::units() const {
  return std::accumulate(hidden_widths.begin(), hidden_widths.end(), 0) + buffer_capacity;
}

PtSplit make_pt_split(std::vector<int> hidden_widths, int buffer_capacity, double permanent_fraction) {
  if (buffer_capacity < 0) throw ValidationError("buffer capacity must be non-negative");
  auto layers = allocate_pt_layers(hidden_widths, permanent_fraction);
  return PtSplit{std::move(hidden_widths), buffer_capacity, permanent_fraction,
                 std::move(layers.permanent), std::move(layers.transient)};
}

bool verify_budget(const PtSplit& split, int total) {
  const auto n = split.hidden_widths.size();
  if (split.permanent_widths.size() != n || split.transient_widths.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (split.permanent_widths[i] < 0 || split.transient_widths[i] < 0) return false;
    if (split.permanent_widths[i] + split.transient_widths[i] != split.hidden_widths[i]) return false;
  }
  return split.buffer_capacity >= 0 && split.units() == total;
}

std::vector<int> default_hidden_widths() { return {128, 256, 64}; }

}  // namespace membudget
