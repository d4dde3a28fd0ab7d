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

#include "membudget/jellybean.hpp"

#include "membudget/errors.hpp"

namespace membudget {
namespace {

enum : std::uint64_t { kTagGreen = 1, kTagCenters = 2, kTagColor = 3, kTagScatter = 4 };

constexpr std::uint64_t as_word(std::int64_t v) noexcept { return static_cast<std::uint64_t>(v); }

constexpr std::uint64_t chunk_key(std::int64_t cx, std::int64_t cy) noexcept {
  return (as_word(cx) << 32) ^ (as_word(cy) & 0xFFFFFFFFULL);
}

}  // namespace

void WorldConfig::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(green_density) || !prob(cluster_center_density)) {
    throw ValidationError("item densities must lie in [0, 1]");
  }
  if (swap_period < 1) throw ValidationError("swap period must be >= 1");
  if (chunk_size < 1) throw ValidationError("chunk size must be >= 1");
  if (cluster_radius < 0 || cluster_radius > chunk_size) {
    throw ValidationError("cluster radius must lie in [0, chunk_size]");
  }
  if (cluster_item_count < 0) throw ValidationError("cluster item count must be non-negative");
}

PhaseRewards phase(std::int64_t t, std::int64_t swap_period, double red_reward, double blue_reward) {
  if (t < 0) throw ContractViolation("phase: step counter must be non-negative");
  if (swap_period < 1) throw ValidationError("swap period must be >= 1");
  if ((t / swap_period) % 2 == 0) return {red_reward, blue_reward};
  return {blue_reward, red_reward};
}

JellybeanWorld::JellybeanWorld(WorldConfig config, std::uint64_t seed) : config_(config), seed_(seed) {
  config_.validate();
}

std::int64_t JellybeanWorld::floor_div(std::int64_t v) const {
  const std::int64_t s = config_.chunk_size;
  return v >= 0 ? v / s : -((-v + s - 1) / s);
}

std::vector<JellybeanWorld::Center> JellybeanWorld::centers_of(std::int64_t cx, std::int64_t cy) const {
  std::vector<Center> out;
  if (config_.cluster_center_density <= 0.0) return out;
  SeededRng rng(derive_seed(seed_, kTagCenters, as_word(cx), as_word(cy)));
  const int s = config_.chunk_size;
  for (int ly = 0; ly < s; ++ly) {
    for (int lx = 0; lx < s; ++lx) {
      if (!rng.bernoulli(config_.cluster_center_density)) continue;
      const std::int64_t wx = cx * s + lx;
      const std::int64_t wy = cy * s + ly;
      const bool red = (derive_seed(seed_, kTagColor, as_word(wx), as_word(wy)) & 1U) == 0;
      out.push_back({wx, wy, red ? ItemColor::kRed : ItemColor::kBlue});
    }
  }
  return out;
}

std::unordered_map<int, ItemColor> JellybeanWorld::generate_chunk(std::int64_t cx, std::int64_t cy) const {
  std::unordered_map<int, ItemColor> items;
  const int s = config_.chunk_size;
  if (config_.green_density > 0.0) {
    SeededRng rng(derive_seed(seed_, kTagGreen, as_word(cx), as_word(cy)));
    for (int i = 0; i < s * s; ++i) {
      if (rng.bernoulli(config_.green_density)) items[i] = ItemColor::kGreen;
    }
  }
  const std::int64_t x0 = cx * s;
  const std::int64_t y0 = cy * s;
  const auto span = static_cast<std::uint64_t>(2 * config_.cluster_radius + 1);
  for (std::int64_t ny = cy - 1; ny <= cy + 1; ++ny) {
    for (std::int64_t nx = cx - 1; nx <= cx + 1; ++nx) {
      for (const Center& c : centers_of(nx, ny)) {
        SeededRng scatter(derive_seed(seed_, kTagScatter, as_word(c.x), as_word(c.y)));
        for (int k = 0; k < config_.cluster_item_count; ++k) {
          const std::int64_t ix = c.x + static_cast<std::int64_t>(scatter.uniform_below(span)) - config_.cluster_radius;
          const std::int64_t iy = c.y + static_cast<std::int64_t>(scatter.uniform_below(span)) - config_.cluster_radius;
          if (ix < x0 || iy < y0 || ix >= x0 + s || iy >= y0 + s) continue;
          items[static_cast<int>((iy - y0) * s + (ix - x0))] = c.color;
        }
      }
    }
  }
  return items;
}

JellybeanWorld::Chunk& JellybeanWorld::chunk(std::int64_t cx, std::int64_t cy) const {
  const auto key = chunk_key(cx, cy);
  auto it = chunks_.find(key);
  if (it == chunks_.end()) it = chunks_.emplace(key, Chunk{generate_chunk(cx, cy)}).first;
  return it->second;
}

std::optional<ItemColor> JellybeanWorld::item_at(std::int64_t x, std::int64_t y) const {
  const std::int64_t cx = floor_div(x);
  const std::int64_t cy = floor_div(y);
  const auto& items = chunk(cx, cy).items;
  const int s = config_.chunk_size;
  auto it = items.find(static_cast<int>((y - cy * s) * s + (x - cx * s)));
  if (it == items.end()) return std::nullopt;
  return it->second;
}

double JellybeanWorld::reward_for(ItemColor c, std::int64_t t) const {
  if (c == ItemColor::kGreen) return config_.green_reward;
  const auto p = phase(t, config_.swap_period, config_.red_reward, config_.blue_reward);
  return c == ItemColor::kRed ? p.red : p.blue;
}

double JellybeanWorld::move(ActionId action) {
  if (action.index >= ActionId::kCount) throw ContractViolation("invalid action");
  x_ += actions::kDx[action.index];
  y_ += actions::kDy[action.index];
  double reward = 0.0;
  const std::int64_t cx = floor_div(x_);
  const std::int64_t cy = floor_div(y_);
  auto& items = chunk(cx, cy).items;
  const int s = config_.chunk_size;
  auto it = items.find(static_cast<int>((y_ - cy * s) * s + (x_ - cx * s)));
  if (it != items.end()) {
    reward = reward_for(it->second, t_);
    items.erase(it);
  }
  ++t_;
  return reward;
}

JellybeanWorld::StepResult JellybeanWorld::step(ActionId action) {
  const double reward = move(action);
  return {observe(), reward};
}

Observation JellybeanWorld::observe() const {
  Observation obs;
  constexpr int r = Observation::kRadius;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (auto item = item_at(x_ + dx, y_ + dy)) {
        obs.values[static_cast<std::size_t>(Observation::index(dx, dy, static_cast<int>(*item)))] = 1.0;
      }
    }
  }
  return obs;
}

std::string JellybeanWorld::render_ascii() const {
  std::string out;
  constexpr int r = Observation::kRadius;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      char ch = '.';
      if (auto item = item_at(x_ + dx, y_ + dy)) {
        ch = *item == ItemColor::kRed ? 'R' : *item == ItemColor::kGreen ? 'G' : 'B';
      }
      if (dx == 0 && dy == 0) ch = '@';
      out.push_back(ch);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace membudget
