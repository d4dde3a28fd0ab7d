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

#include "membudget/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "membudget/csv.hpp"
#include "membudget/errors.hpp"

namespace membudget {

Summary summarize(std::span<const double> values) {
  Summary s;
  s.n = values.size();
  if (s.n == 0) throw ValidationError("cannot summarise an empty cell");
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n >= 2) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    const double sigma = std::sqrt(sq / static_cast<double>(s.n));
    s.standard_error = sigma / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

std::vector<AggregateRow> aggregate(const std::vector<RawPoint>& raw) {
  std::vector<std::string> group_order;
  std::map<std::string, std::map<double, std::vector<double>>> cells;
  for (const auto& p : raw) {
    if (!cells.contains(p.group)) group_order.push_back(p.group);
    cells[p.group][p.x].push_back(p.value);
  }
  std::vector<AggregateRow> out;
  for (const auto& g : group_order) {
    for (const auto& [x, values] : cells[g]) out.push_back(AggregateRow{g, x, summarize(values)});
  }
  return out;
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "group,x,n,mean,se\n";
  for (const auto& r : rows) {
    out << r.group << ',' << csv::format_double(r.x) << ',' << r.summary.n << ','
        << csv::format_double(r.summary.mean) << ',';
    if (r.summary.standard_error) out << csv::format_double(*r.summary.standard_error);
    out << '\n';
  }
}

}  // namespace membudget
