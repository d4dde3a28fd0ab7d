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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "membudget/corridor.hpp"
#include "membudget/jellybean.hpp"
#include "membudget/mcts.hpp"
#include "membudget/ptdqn.hpp"

namespace membudget {

enum class ExperimentKind { kMctsSweep, kPtdqnSweep, kBaseline };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);

/// Everything one harness invocation needs. Defaults reproduce the
/// allocation sweep at N = 500 and the N = 500 PT-DQN split study.
struct ExperimentConfig {
  ExperimentKind kind{ExperimentKind::kMctsSweep};
  int seeds{20};
  std::uint64_t master_seed{0};
  int jobs{1};
  std::filesystem::path out_dir{"results"};

  // [budget]
  int total_memory{500};
  std::vector<int> plan_grid{0, 10, 50, 100, 150, 250, 350, 450, 480, 500};
  std::vector<double> permanent_fractions{0.0, 0.1, 0.5};
  std::vector<int> hidden_widths{128, 256, 64};
  int buffer_capacity{52};

  // [datasets]
  std::vector<std::string> datasets{"o0", "o1", "o2", "o3", "oa", "ra100", "ra500", "ra1000", "ra5000", "ronly1000"};

  MctsOptions mcts;
  CorridorLayout corridor{CorridorLayout::standard()};

  // [ptdqn]
  WorldConfig world;
  AgentConfig agent;
  std::int64_t total_steps{600000};
  int trace_stride{1};

  /// Throws ValidationError when a value is out of range.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses the sectioned key = value format (see configs/*.cfg). Lines
/// starting with '#' or ';' are comments; lists are comma separated.
/// Unknown sections or keys are rejected.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Serialises every field, so parse_config(write_config(c)) == c.
void write_config(std::ostream& out, const ExperimentConfig& config);

}  // namespace membudget
