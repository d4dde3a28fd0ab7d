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

#include "membudget/config.hpp"

#include <fstream>
#include <functional>
#include <type_traits>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "membudget/csv.hpp"
#include "membudget/datasets.hpp"
#include "membudget/errors.hpp"

namespace membudget {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (auto f : csv::split(text)) {
    auto t = trim(f);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

template <typename T>
T parse_scalar(const std::string& key, const std::string& text) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      return csv::parse_double(trim(text));
    } else if constexpr (std::is_same_v<T, bool>) {
      const auto t = trim(text);
      if (t == "true" || t == "1") return true;
      if (t == "false" || t == "0") return false;
      throw ValidationError("not a boolean");
    } else {
      const auto v = csv::parse_int(trim(text));
      if constexpr (std::is_unsigned_v<T>) {
        if (v < 0) throw ValidationError("negative");
      }
      return static_cast<T>(v);
    }
  } catch (const ValidationError& e) {
    throw ValidationError("config key '" + key + "': cannot parse '" + text + "'");
  }
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) out.push_back(parse_scalar<T>(key, item));
  return out;
}

Cell parse_cell(const std::string& key, const std::string& text) {
  const auto parts = parse_list<int>(key, text);
  if (parts.size() != 2) throw ValidationError("config key '" + key + "' expects 'x,y'");
  return Cell{parts[0], parts[1]};
}

// label:x:y:reward entries, comma separated.
std::vector<CorridorGoal> parse_goals(const std::string& key, const std::string& text) {
  std::vector<CorridorGoal> goals;
  for (const auto& item : split_list(text)) {
    std::vector<std::string> f;
    std::stringstream ss(item);
    for (std::string part; std::getline(ss, part, ':');) f.push_back(trim(part));
    if (f.size() != 4) throw ValidationError("config key '" + key + "' expects label:x:y:reward entries");
    goals.push_back(CorridorGoal{f[0], Cell{parse_scalar<int>(key, f[1]), parse_scalar<int>(key, f[2])},
                                 parse_scalar<double>(key, f[3])});
  }
  return goals;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) {
      out += csv::format_double(v[i]);
    } else if constexpr (std::is_same_v<T, std::string>) {
      out += v[i];
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

#define MB_FIELD(section, name, member, type)                                                           {                                                                                                       section "." name, [](ExperimentConfig& c, const std::string& v) { c.member = parse_scalar<type>(                                                                            section "." name, v); }       }

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"experiment.kind", [](ExperimentConfig& c, const std::string& v) { c.kind = parse_experiment_kind(trim(v)); }},
      MB_FIELD("experiment", "seeds", seeds, int),
      MB_FIELD("experiment", "master_seed", master_seed, std::uint64_t),
      MB_FIELD("experiment", "jobs", jobs, int),
      {"experiment.out", [](ExperimentConfig& c, const std::string& v) { c.out_dir = trim(v); }},

      MB_FIELD("budget", "total_memory", total_memory, int),
      {"budget.plan_grid", [](ExperimentConfig& c, const std::string& v) { c.plan_grid = parse_list<int>("budget.plan_grid", v); }},
      {"budget.permanent_fractions",
       [](ExperimentConfig& c, const std::string& v) {
         c.permanent_fractions = parse_list<double>("budget.permanent_fractions", v);
       }},
      {"budget.hidden_widths",
       [](ExperimentConfig& c, const std::string& v) { c.hidden_widths = parse_list<int>("budget.hidden_widths", v); }},
      MB_FIELD("budget", "buffer_capacity", buffer_capacity, int),

      {"datasets.names", [](ExperimentConfig& c, const std::string& v) { c.datasets = split_list(v); }},

      MB_FIELD("mcts", "horizon", mcts.horizon, int),
      MB_FIELD("mcts", "uct_c", mcts.uct_c, double),
      MB_FIELD("mcts", "iteration_factor", mcts.iteration_factor, int),

      MB_FIELD("corridor", "width", corridor.width, int),
      MB_FIELD("corridor", "height", corridor.height, int),
      {"corridor.start", [](ExperimentConfig& c, const std::string& v) { c.corridor.start = parse_cell("corridor.start", v); }},
      {"corridor.goals", [](ExperimentConfig& c, const std::string& v) { c.corridor.goals = parse_goals("corridor.goals", v); }},
      MB_FIELD("corridor", "step_penalty", corridor.step_penalty, double),
      MB_FIELD("corridor", "horizon", corridor.horizon, int),

      MB_FIELD("jellybean", "green_density", world.green_density, double),
      MB_FIELD("jellybean", "cluster_center_density", world.cluster_center_density, double),
      MB_FIELD("jellybean", "cluster_radius", world.cluster_radius, int),
      MB_FIELD("jellybean", "cluster_item_count", world.cluster_item_count, int),
      MB_FIELD("jellybean", "chunk_size", world.chunk_size, int),
      MB_FIELD("jellybean", "swap_period", world.swap_period, std::int64_t),
      MB_FIELD("jellybean", "green_reward", world.green_reward, double),
      MB_FIELD("jellybean", "red_reward", world.red_reward, double),
      MB_FIELD("jellybean", "blue_reward", world.blue_reward, double),

      MB_FIELD("ptdqn", "total_steps", total_steps, std::int64_t),
      MB_FIELD("ptdqn", "trace_stride", trace_stride, int),
      MB_FIELD("ptdqn", "gamma", agent.gamma, double),
      MB_FIELD("ptdqn", "lr_transient", agent.lr_transient, double),
      MB_FIELD("ptdqn", "lr_permanent", agent.lr_permanent, double),
      MB_FIELD("ptdqn", "epsilon_start", agent.epsilon_start, double),
      MB_FIELD("ptdqn", "epsilon_end", agent.epsilon_end, double),
      MB_FIELD("ptdqn", "epsilon_decay_steps", agent.epsilon_decay_steps, std::int64_t),
      MB_FIELD("ptdqn", "batch_size", agent.batch_size, int),
      MB_FIELD("ptdqn", "consolidation_period", agent.consolidation_period, std::int64_t),
      MB_FIELD("ptdqn", "transient_decay", agent.transient_decay, double),
      MB_FIELD("ptdqn", "consolidation_steps", agent.consolidation_steps, int),
      MB_FIELD("ptdqn", "smoothing_window", agent.smoothing_window, int),
  };
  return table;
}

#undef MB_FIELD

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kMctsSweep: return "mcts-sweep";
    case ExperimentKind::kPtdqnSweep: return "ptdqn-sweep";
    case ExperimentKind::kBaseline: return "baseline";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
  if (text == "mcts-sweep") return ExperimentKind::kMctsSweep;
  if (text == "ptdqn-sweep") return ExperimentKind::kPtdqnSweep;
  if (text == "baseline") return ExperimentKind::kBaseline;
  throw ValidationError("unknown experiment kind '" + text + "'");
}

void ExperimentConfig::validate() const {
  if (seeds < 1) throw ValidationError("seed count must be >= 1");
  if (jobs < 1) throw ValidationError("jobs must be >= 1");
  if (total_memory < 0) throw ValidationError("total memory must be non-negative");
  for (int n_pi : plan_grid) {
    if (n_pi < 0 || n_pi > total_memory) {
      throw ValidationError("plan grid value " + std::to_string(n_pi) + " outside [0, " +
                            std::to_string(total_memory) + "]");
    }
  }
  for (double f : permanent_fractions) {
    if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("permanent fractions must lie in [0, 1]");
  }
  for (int w : hidden_widths) {
    if (w < 1) throw ValidationError("hidden widths must be positive");
  }
  if (buffer_capacity < 1) throw ValidationError("buffer capacity must be >= 1");
  for (const auto& d : datasets) DatasetSpec::parse(d);
  if (mcts.horizon < 1 || mcts.iteration_factor < 1 || !(mcts.uct_c >= 0.0)) {
    throw ValidationError("mcts horizon and iteration factor must be >= 1 and uct_c >= 0");
  }
  corridor.validate();
  world.validate();
  agent.validate();
  if (total_steps < 0) throw ValidationError("total steps must be non-negative");
  if (trace_stride < 1) throw ValidationError("trace stride must be >= 1");
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string("config syntax error: ") + e.message() + " (line " +
                          std::to_string(e.line()) + ")");
  }
  ExperimentConfig config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ValidationError("config key '" + section + "' must live inside a [section]");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      auto it = setters().find(full);
      if (it == setters().end()) throw ValidationError("unknown config key '" + full + "'");
      it->second(config, value.get_value<std::string>());
    }
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
  auto goals = [&] {
    std::string s;
    for (std::size_t i = 0; i < c.corridor.goals.size(); ++i) {
      const auto& g = c.corridor.goals[i];
      if (i) s += ',';
      s += g.label + ':' + std::to_string(g.cell.x) + ':' + std::to_string(g.cell.y) + ':' +
           csv::format_double(g.reward);
    }
    return s;
  };
  const auto d = [](double v) { return csv::format_double(v); };
  out << "[experiment]\n"
      << "kind = " << to_string(c.kind) << "\nseeds = " << c.seeds << "\nmaster_seed = " << c.master_seed
      << "\njobs = " << c.jobs << "\nout = " << c.out_dir.string() << "\n\n"
      << "[budget]\n"
      << "total_memory = " << c.total_memory << "\nplan_grid = " << join(c.plan_grid)
      << "\npermanent_fractions = " << join(c.permanent_fractions) << "\nhidden_widths = " << join(c.hidden_widths)
      << "\nbuffer_capacity = " << c.buffer_capacity << "\n\n"
      << "[datasets]\nnames = " << join(c.datasets) << "\n\n"
      << "[mcts]\nhorizon = " << c.mcts.horizon << "\nuct_c = " << d(c.mcts.uct_c)
      << "\niteration_factor = " << c.mcts.iteration_factor << "\n\n"
      << "[corridor]\nwidth = " << c.corridor.width << "\nheight = " << c.corridor.height << "\nstart = "
      << c.corridor.start.x << ',' << c.corridor.start.y << "\ngoals = " << goals()
      << "\nstep_penalty = " << d(c.corridor.step_penalty) << "\nhorizon = " << c.corridor.horizon << "\n\n"
      << "[jellybean]\ngreen_density = " << d(c.world.green_density)
      << "\ncluster_center_density = " << d(c.world.cluster_center_density)
      << "\ncluster_radius = " << c.world.cluster_radius << "\ncluster_item_count = " << c.world.cluster_item_count
      << "\nchunk_size = " << c.world.chunk_size << "\nswap_period = " << c.world.swap_period
      << "\ngreen_reward = " << d(c.world.green_reward) << "\nred_reward = " << d(c.world.red_reward)
      << "\nblue_reward = " << d(c.world.blue_reward) << "\n\n"
      << "[ptdqn]\ntotal_steps = " << c.total_steps << "\ntrace_stride = " << c.trace_stride
      << "\ngamma = " << d(c.agent.gamma) << "\nlr_transient = " << d(c.agent.lr_transient)
      << "\nlr_permanent = " << d(c.agent.lr_permanent) << "\nepsilon_start = " << d(c.agent.epsilon_start)
      << "\nepsilon_end = " << d(c.agent.epsilon_end) << "\nepsilon_decay_steps = " << c.agent.epsilon_decay_steps
      << "\nbatch_size = " << c.agent.batch_size << "\nconsolidation_period = " << c.agent.consolidation_period
      << "\ntransient_decay = " << d(c.agent.transient_decay)
      << "\nconsolidation_steps = " << c.agent.consolidation_steps
      << "\nsmoothing_window = " << c.agent.smoothing_window << "\n";
}

}  // namespace membudget
