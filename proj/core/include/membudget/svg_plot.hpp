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

#include <string>
#include <vector>

#include "membudget/aggregate.hpp"

namespace membudget {

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width{800};
  int height{500};
};

/// One line per group of the aggregate rows, with a shaded band of
/// +-1 standard error where available. Throws ValidationError on empty input.
std::string render_line_chart(const std::vector<AggregateRow>& rows, const PlotOptions& options);

}  // namespace membudget
