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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "membudget/rng.hpp"
#include "membudget/types.hpp"

namespace membudget {

/// Item colours double as observation channel indices.
enum class ItemColor : std::uint8_t { kRed = 0, kGreen = 1, kBlue = 2 };

struct WorldConfig {
  double green_density{0.02};
  double cluster_center_density{0.001};
  int cluster_radius{3};
  int cluster_item_count{12};
  int chunk_size{32};
  std::int64_t swap_period{150000};
  double green_reward{0.1};
  /// Red/blue rewards during even phases; odd phases swap them.
  double red_reward{-1.0};
  double blue_reward{2.0};

  /// Throws ValidationError on densities outside [0, 1], swap_period < 1,
  /// or a cluster radius the 3x3 chunk neighbourhood cannot cover.
  void validate() const;

  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

struct PhaseRewards {
  double red{0.0};
  double blue{0.0};

  friend bool operator==(const PhaseRewards&, const PhaseRewards&) = default;
};

/// Red/blue rewards in force at step t: the configured pair when
/// floor(t / swap_period) is even, swapped when it is odd.
PhaseRewards phase(std::int64_t t, std::int64_t swap_period, double red_reward = -1.0, double blue_reward = 2.0);

/// Egocentric 11x11 window, channels (red, green, blue), agent at the centre.
/// Flattened as ((row * 11) + col) * 3 + channel with row = dy + 5 and
/// col = dx + 5; dy grows downward.
struct Observation {
  static constexpr int kRadius = 5;
  static constexpr int kSide = 2 * kRadius + 1;
  static constexpr int kChannels = 3;
  static constexpr int kSize = kSide * kSide * kChannels;

  std::array<double, kSize> values{};

  static constexpr int index(int dx, int dy, int channel) {
    return ((dy + kRadius) * kSide + (dx + kRadius)) * kChannels + channel;
  }
  [[nodiscard]] double at(int dx, int dy, ItemColor c) const {
    return values[static_cast<std::size_t>(index(dx, dy, static_cast<int>(c)))];
  }

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Infinite, lazily generated gridworld.
///
/// Space is tiled into chunk_size x chunk_size chunks. A chunk's contents
/// depend only on (world seed, chunk coordinates): every cell independently
/// holds a green item with probability green_density; every cell may also be
/// a cluster centre (probability cluster_center_density) whose colour (red
/// or blue) comes from a hash of its position and which scatters
/// cluster_item_count items uniformly over the square of radius
/// cluster_radius around it. Cluster items override greens and may spill
/// into neighbouring chunks. Items never respawn once collected.
class JellybeanWorld {
 public:
  JellybeanWorld(WorldConfig config, std::uint64_t seed);

  struct StepResult {
    Observation observation;
    double reward{0.0};
  };

  /// Moves one cell, collects whatever item is there. Never terminal.
  StepResult step(ActionId action);
  /// Same as step() without building the observation.
  double move(ActionId action);

  [[nodiscard]] Observation observe() const;
  [[nodiscard]] std::optional<ItemColor> item_at(std::int64_t x, std::int64_t y) const;
  [[nodiscard]] double reward_for(ItemColor c, std::int64_t t) const;

  [[nodiscard]] std::int64_t x() const noexcept { return x_; }
  [[nodiscard]] std::int64_t y() const noexcept { return y_; }
  [[nodiscard]] std::int64_t steps() const noexcept { return t_; }
  [[nodiscard]] const WorldConfig& config() const noexcept { return config_; }
  [[nodiscard]] std::size_t chunks_generated() const noexcept { return chunks_.size(); }

  /// The current window as text: '.' empty, 'R' 'G' 'B' items, '@' agent.
  [[nodiscard]] std::string render_ascii() const;

  /// Items of a chunk regenerated from scratch, ignoring consumption.
  /// Keys are local cell indices ly * chunk_size + lx.
  [[nodiscard]] std::unordered_map<int, ItemColor> generate_chunk(std::int64_t cx, std::int64_t cy) const;

 private:
  struct Chunk {
    std::unordered_map<int, ItemColor> items;
  };
  struct Center {
    std::int64_t x;
    std::int64_t y;
    ItemColor color;
  };

  [[nodiscard]] std::vector<Center> centers_of(std::int64_t cx, std::int64_t cy) const;
  Chunk& chunk(std::int64_t cx, std::int64_t cy) const;
  [[nodiscard]] std::int64_t floor_div(std::int64_t v) const;

  WorldConfig config_;
  std::uint64_t seed_;
  std::int64_t x_{0};
  std::int64_t y_{0};
  std::int64_t t_{0};
  mutable std::unordered_map<std::uint64_t, Chunk> chunks_;
};

}  // namespace membudget
