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

#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace membudget::testing {

int bfs_distance(int width, int height, Cell from, Cell to, const std::vector<Cell>& blocked) {
  std::vector<int> dist(static_cast<std::size_t>(width * height), -1);
  auto idx = [&](Cell c) { return static_cast<std::size_t>(c.y * width + c.x); };
  std::deque<Cell> q{from};
  dist[idx(from)] = 0;
  while (!q.empty()) {
    const Cell c = q.front();
    q.pop_front();
    if (c == to) return dist[idx(c)];
    if (c != from && std::find(blocked.begin(), blocked.end(), c) != blocked.end()) continue;
    const int dx[] = {1, -1, 0, 0};
    const int dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const Cell n{c.x + dx[k], c.y + dy[k]};
      if (n.x < 0 || n.y < 0 || n.x >= width || n.y >= height || dist[idx(n)] >= 0) continue;
      dist[idx(n)] = dist[idx(c)] + 1;
      q.push_back(n);
    }
  }
  return -1;
}

double oracle_return(int distance, double goal_reward, double penalty) {
  // Integer cents avoid the rounding of repeated subtraction.
  const long cents = std::lround(goal_reward * 100) - distance * std::lround(penalty * 100);
  return static_cast<double>(cents) / 100.0;
}

std::map<std::tuple<std::uint32_t, std::uint8_t, std::uint32_t>, std::uint64_t> brute_counts(
    const std::vector<Transition>& data) {
  std::map<std::tuple<std::uint32_t, std::uint8_t, std::uint32_t>, std::uint64_t> out;
  for (const auto& t : data) ++out[{t.state.index, t.action.index, t.next_state.index}];
  return out;
}

double chi_square_uniform(const std::vector<std::uint64_t>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  return stat;
}

double chi_square_critical_001(int dof) {
  const double k = dof;
  const double z = 3.090232306167813;  // upper 0.001 normal quantile
  const double h = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - h + z * std::sqrt(h), 3);
}

double random_walk_mean_return(int episodes, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> pick(0, 3);
  const int gx[] = {2, 6, 10, 14};
  const int greward[] = {20, 40, 60, 80};
  long long total_cents = 0;
  for (int e = 0; e < episodes; ++e) {
    int x = 0, y = 0;
    long cents = 0;
    for (int t = 0; t < 100; ++t) {
      const int a = pick(gen);
      const int nx = x + (a == 2) - (a == 3);
      const int ny = y + (a == 1) - (a == 0);
      if (nx >= 0 && nx < 16 && ny >= 0 && ny < 2) {
        x = nx;
        y = ny;
      }
      cents -= 1;
      bool done = false;
      for (int g = 0; g < 4; ++g) {
        if (y == 1 && x == gx[g]) {
          cents += greward[g];
          done = true;
        }
      }
      if (done) break;
    }
    total_cents += cents;
  }
  return static_cast<double>(total_cents) / 100.0 / episodes;
}

}  // namespace membudget::testing
