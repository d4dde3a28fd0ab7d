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
#include <span>
#include <string>
#include <vector>

namespace membudget {

/// Mean and standard error of one cell. The standard error is
/// sigma / sqrt(n) with the population standard deviation, and is absent
/// for a single value.
struct Summary {
  std::size_t n{0};
  double mean{0.0};
  std::optional<double> standard_error;
};

Summary summarize(std::span<const double> values);

/// One raw observation of a sweep: which line (group), where on the x axis,
/// which seed, and the metric.
struct RawPoint {
  std::string group;
  double x{0.0};
  int seed{0};
  double value{0.0};
};

struct AggregateRow {
  std::string group;
  double x{0.0};
  Summary summary;
};

/// Groups by (group, x) keeping first-appearance order of groups and
/// ascending x within a group.
std::vector<AggregateRow> aggregate(const std::vector<RawPoint>& raw);

/// CSV with header "group,x,n,mean,se"; se is empty when absent.
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

}  // namespace membudget
