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

#include "membudget/datasets.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>

#include "membudget/csv.hpp"
#include "membudget/errors.hpp"

namespace membudget {
namespace {

// Goals ordered best-first by reward; O0 targets the first.
std::vector<std::string> goals_best_first(const CorridorEnv& env) {
  const auto& goals = env.layout().goals;
  std::vector<std::size_t> order(goals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return goals[a].reward > goals[b].reward; });
  std::vector<std::string> labels;
  for (auto i : order) labels.push_back(goals[i].label);
  return labels;
}

std::vector<Transition> trajectory_to(const CorridorEnv& env, const std::string& label) {
  std::vector<Transition> out;
  CorridorState state = env.initial_state();
  for (ActionId a : env.shortest_path(state.agent, label)) {
    auto step = env.step(state, a);
    out.push_back(step.transition);
    state = step.state;
  }
  return out;
}

std::vector<Transition> all_trajectories(const CorridorEnv& env) {
  std::vector<Transition> out;
  for (const auto& g : env.layout().goals) {
    auto t = trajectory_to(env, g.label);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

}  // namespace

std::string DatasetSpec::name() const {
  switch (kind) {
    case DatasetKind::kO0: return "o0";
    case DatasetKind::kO1: return "o1";
    case DatasetKind::kO2: return "o2";
    case DatasetKind::kO3: return "o3";
    case DatasetKind::kOa: return "oa";
    case DatasetKind::kRa: return "ra" + std::to_string(noise_count);
    case DatasetKind::kRonly: return "ronly" + std::to_string(noise_count);
  }
  return "?";
}

DatasetSpec DatasetSpec::parse(const std::string& name, std::uint64_t seed) {
  static const std::pair<const char*, DatasetKind> kFixed[] = {
      {"o0", DatasetKind::kO0}, {"o1", DatasetKind::kO1}, {"o2", DatasetKind::kO2},
      {"o3", DatasetKind::kO3}, {"oa", DatasetKind::kOa}};
  for (const auto& [n, k] : kFixed) {
    if (name == n) return DatasetSpec{k, 0, seed};
  }
  auto with_count = [&](std::string_view prefix, DatasetKind kind) -> std::optional<DatasetSpec> {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    const auto count = csv::parse_int(std::string_view(name).substr(prefix.size()));
    if (count < 0) throw ValidationError("dataset noise count must be non-negative");
    return DatasetSpec{kind, static_cast<int>(count), seed};
  };
  if (auto s = with_count("ronly", DatasetKind::kRonly)) return *s;
  if (auto s = with_count("ra", DatasetKind::kRa)) return *s;
  throw ValidationError("unknown dataset '" + name + "'");
}

std::optional<Transition> TransitionStream::next() {
  if (cursor_ >= items_.size()) return std::nullopt;
  return items_[cursor_++];
}

std::vector<Transition> TransitionStream::drain() {
  std::vector<Transition> rest(items_.begin() + static_cast<std::ptrdiff_t>(cursor_), items_.end());
  cursor_ = items_.size();
  return rest;
}

std::vector<Transition> random_walk_transitions(const CorridorEnv& env, int count, SeededRng& rng) {
  std::vector<Transition> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  while (static_cast<int>(out.size()) < count) {
    CorridorState state = env.initial_state();
    while (!state.done && static_cast<int>(out.size()) < count) {
      const ActionId a{static_cast<std::uint8_t>(rng.uniform_below(ActionId::kCount))};
      auto step = env.step(state, a);
      out.push_back(step.transition);
      state = step.state;
    }
  }
  return out;
}

TransitionStream generate(const DatasetSpec& spec, const CorridorEnv& env, SeededRng& rng) {
  if (spec.noise_count < 0) throw ValidationError("dataset noise count must be non-negative");
  const auto ranked = goals_best_first(env);
  auto optimal = [&](std::size_t rank) {
    if (rank >= ranked.size()) throw ValidationError("layout has fewer goals than the dataset needs");
    return trajectory_to(env, ranked[rank]);
  };
  switch (spec.kind) {
    case DatasetKind::kO0: return TransitionStream(optimal(0));
    case DatasetKind::kO1: return TransitionStream(optimal(1));
    case DatasetKind::kO2: return TransitionStream(optimal(2));
    case DatasetKind::kO3: return TransitionStream(optimal(3));
    case DatasetKind::kOa: return TransitionStream(all_trajectories(env));
    case DatasetKind::kRa: {
      auto items = all_trajectories(env);
      auto noise = random_walk_transitions(env, spec.noise_count, rng);
      items.insert(items.end(), noise.begin(), noise.end());
      return TransitionStream(std::move(items));
    }
    case DatasetKind::kRonly: return TransitionStream(random_walk_transitions(env, spec.noise_count, rng));
  }
  return {};
}

std::vector<Transition> reservoir_select(TransitionStream& stream, int capacity, SeededRng& rng) {
  if (capacity < 0) throw ValidationError("reservoir capacity must be non-negative");
  const auto k = static_cast<std::uint64_t>(capacity);
  std::vector<Transition> reservoir;
  reservoir.reserve(std::min<std::size_t>(k, stream.size()));
  std::uint64_t seen = 0;
  while (auto item = stream.next()) {
    if (seen < k) {
      reservoir.push_back(*item);
    } else if (k > 0) {
      const auto j = rng.uniform_below(seen + 1);
      if (j < k) reservoir[j] = *item;
    }
    ++seen;
  }
  return reservoir;
}

void write_transitions_csv(std::ostream& out, std::span<const Transition> transitions) {
  out << "state,action,reward,next_state,terminal\n";
  for (const auto& t : transitions) {
    out << t.state.index << ',' << int{t.action.index} << ',' << csv::format_double(t.reward) << ','
        << t.next_state.index << ',' << (t.terminal ? 1 : 0) << '\n';
  }
}

std::vector<Transition> read_transitions_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || csv::split(line) != std::vector<std::string_view>{"state", "action", "reward",
                                                                                   "next_state", "terminal"}) {
    throw ValidationError("transition CSV must start with 'state,action,reward,next_state,terminal'");
  }
  std::vector<Transition> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 5) throw ValidationError("transition CSV row needs 5 fields: " + line);
    const auto state = csv::parse_int(f[0]);
    const auto next = csv::parse_int(f[3]);
    const auto term = csv::parse_int(f[4]);
    if (state < 0 || next < 0 || (term != 0 && term != 1)) throw ValidationError("bad transition row: " + line);
    Transition t;
    t.state = StateId{static_cast<std::uint32_t>(state)};
    try {
      t.action = checked_action(static_cast<int>(csv::parse_int(f[1])));
    } catch (const ContractViolation&) {
      throw ValidationError("action out of range: " + line);
    }
    t.reward = csv::parse_double(f[2]);
    t.next_state = StateId{static_cast<std::uint32_t>(next)};
    t.terminal = term == 1;
    out.push_back(t);
  }
  return out;
}

}  // namespace membudget
