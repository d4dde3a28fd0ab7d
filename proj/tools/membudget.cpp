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

// membudget: command-line front end for the allocation sweep, the PT-DQN
// split study and their plots.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "membudget/checkpoint.hpp"
#include "membudget/config.hpp"
#include "membudget/csv.hpp"
#include "membudget/datasets.hpp"
#include "membudget/errors.hpp"
#include "membudget/experiments.hpp"
#include "membudget/jellybean.hpp"
#include "membudget/selftest.hpp"
#include "membudget/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace membudget;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<int> seeds;
  std::optional<int> jobs;
  std::optional<std::string> out;
  std::optional<int> total_memory;
  std::vector<int> plan_units;
  std::vector<double> permanent_fractions;
  std::optional<int> buffer_capacity;
  std::optional<std::int64_t> steps;
  std::optional<std::int64_t> swap_period;
  std::vector<std::string> datasets;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Experiment config file")->check(CLI::ExistingFile);
  cmd->add_option("--seeds", f.seeds, "Number of seeds per cell");
  cmd->add_option("--jobs", f.jobs, "Worker threads");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--total-memory", f.total_memory, "Total memory units N");
}

ExperimentConfig resolve(const CommonFlags& f, ExperimentKind kind) {
  ExperimentConfig c = f.config_path.empty() ? ExperimentConfig{} : load_config(f.config_path);
  if (!f.config_path.empty() && c.kind != kind) {
    throw ValidationError("config '" + f.config_path + "' is for experiment kind '" + to_string(c.kind) +
                          "', not '" + to_string(kind) + "'");
  }
  c.kind = kind;
  c.master_seed = master_seed_from_env(c.master_seed);
  if (f.seeds) c.seeds = *f.seeds;
  if (f.jobs) c.jobs = *f.jobs;
  if (f.out) c.out_dir = *f.out;
  if (f.total_memory) c.total_memory = *f.total_memory;
  if (!f.plan_units.empty()) c.plan_grid = f.plan_units;
  if (!f.permanent_fractions.empty()) c.permanent_fractions = f.permanent_fractions;
  if (f.buffer_capacity) c.buffer_capacity = *f.buffer_capacity;
  if (f.steps) c.total_steps = *f.steps;
  if (f.swap_period) c.world.swap_period = *f.swap_period;
  if (!f.datasets.empty()) c.datasets = f.datasets;
  c.validate();
  return c;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

template <typename Fn>
std::string to_text(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

void save_common(const ExperimentConfig& c, const std::string& stem, const std::string& raw_csv,
                 const std::vector<AggregateRow>& agg) {
  fs::create_directories(c.out_dir);
  write_file(c.out_dir / (stem + "_raw.csv"), raw_csv);
  write_file(c.out_dir / (stem + "_aggregate.csv"), to_text([&](std::ostream& o) { write_aggregate_csv(o, agg); }));
  write_file(c.out_dir / (stem + "_config.cfg"), to_text([&](std::ostream& o) { write_config(o, c); }));
}

PlotOptions mcts_plot_options() { return {"Return vs planning memory", "plan units", "mean return", 800, 500}; }
PlotOptions ptdqn_plot_options() { return {"Smoothed reward per step", "step", "reward per step", 800, 500}; }

int cmd_gen_data(const std::string& dataset, std::uint64_t seed, const std::string& out_path) {
  const auto spec = DatasetSpec::parse(dataset);
  CorridorEnv env;
  SeededRng rng(master_seed_from_env(seed));
  auto stream = generate(spec, env, rng);
  const auto all = stream.drain();
  const auto text = to_text([&](std::ostream& o) { write_transitions_csv(o, all); });
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
  return 0;
}

int cmd_sweep_mcts(const CommonFlags& f) {
  const auto c = resolve(f, ExperimentKind::kMctsSweep);
  const auto result = run_mcts_experiment(c);
  save_common(c, "mcts", to_text([&](std::ostream& o) { write_sweep_csv(o, result.raw); }), result.aggregate);
  write_file(c.out_dir / "mcts.svg", render_line_chart(result.aggregate, mcts_plot_options()));
  for (const auto& row : result.aggregate) {
    std::cout << row.group << " n_pi=" << row.x << " mean=" << csv::format_double(row.summary.mean);
    if (row.summary.standard_error) std::cout << " se=" << csv::format_double(*row.summary.standard_error);
    std::cout << '\n';
  }
  return 0;
}

int cmd_run_ptdqn(const CommonFlags& f, bool render_ascii, bool checkpoints) {
  const auto c = resolve(f, ExperimentKind::kPtdqnSweep);
  if (render_ascii) {
    std::cout << JellybeanWorld(c.world, world_seed_for(ptdqn_run_seed(c.master_seed, 0))).render_ascii() << '\n';
  }
  const auto result = run_ptdqn_experiment(c);
  save_common(c, "ptdqn", to_text([&](std::ostream& o) { write_trace_csv(o, result.raw); }), result.aggregate);
  std::vector<AggregateRow> plotted;
  for (const auto& row : result.aggregate) {
    if (static_cast<std::int64_t>(row.x) % std::max<std::int64_t>(1, c.total_steps / 400) == 0) plotted.push_back(row);
  }
  write_file(c.out_dir / "ptdqn.svg", render_line_chart(plotted, ptdqn_plot_options()));
  if (checkpoints) {
    for (const auto& run : result.runs) {
      const auto name = "pt_f" + csv::format_double(run.permanent_fraction) + "_s" + std::to_string(run.seed) + ".mbqp";
      write_file(c.out_dir / "checkpoints" / name,
                 to_text([&](std::ostream& o) { save_checkpoint(o, run.trace.final_pair); }));
    }
  }
  for (const auto& run : result.runs) {
    std::cout << "fraction=" << csv::format_double(run.permanent_fraction) << " seed=" << run.seed
              << " final_smoothed=" << csv::format_double(run.trace.smoothed.back()) << '\n';
  }
  return 0;
}

int cmd_baseline(const CommonFlags& f) {
  const auto c = resolve(f, ExperimentKind::kBaseline);
  const auto result = run_baseline_experiment(c);
  fs::create_directories(c.out_dir);
  write_file(c.out_dir / "baseline_corridor.csv", to_text([&](std::ostream& o) { write_sweep_csv(o, result.corridor); }));
  write_file(c.out_dir / "baseline_jellybean.csv",
             to_text([&](std::ostream& o) { write_trace_csv(o, result.jellybean); }));
  write_file(c.out_dir / "baseline_config.cfg", to_text([&](std::ostream& o) { write_config(o, c); }));
  std::vector<double> corridor;
  for (const auto& r : result.corridor) corridor.push_back(r.episode_return);
  const auto s = summarize(corridor);
  std::cout << "corridor random-walk mean return " << csv::format_double(s.mean) << '\n';
  return 0;
}

// Raw sweep CSVs and trace CSVs carry different headers; the header decides
// which kind the file holds.
int cmd_plot(const std::string& input, const std::string& kind, const std::string& out_path) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + input);
  std::string header;
  std::getline(in, header);
  in.seekg(0);
  const bool is_sweep = header.rfind("dataset,", 0) == 0;
  const bool is_trace = header.rfind("step,", 0) == 0;
  if (!is_sweep && !is_trace) throw ValidationError(input + " is neither a sweep nor a trace CSV");
  if ((kind == "mcts" && !is_sweep) || (kind == "ptdqn" && !is_trace)) {
    throw ValidationError("--kind " + kind + " does not match the contents of " + input);
  }
  std::string svg;
  if (is_sweep) {
    const auto rows = read_sweep_csv(in);
    if (rows.empty()) throw ValidationError(input + " has no rows");
    svg = render_line_chart(aggregate(raw_points(rows)), mcts_plot_options());
  } else {
    const auto rows = read_trace_csv(in);
    if (rows.empty()) throw ValidationError(input + " has no rows");
    svg = render_line_chart(aggregate(raw_points(rows)), ptdqn_plot_options());
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << svg;
  } else {
    write_file(out_path, svg);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memory-budgeted planning and PT-DQN experiments"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-data", "Write a corridor dataset as CSV");
  std::string dataset = "oa";
  std::uint64_t data_seed = 0;
  std::string data_out;
  gen->add_option("--dataset", dataset, "o0|o1|o2|o3|oa|ra<X>|ronly<X>");
  gen->add_option("--seed", data_seed, "Random-walk seed");
  gen->add_option("--out", data_out, "Output file (stdout when omitted)");

  CommonFlags mcts_flags;
  auto* sweep = app.add_subcommand("sweep-mcts", "Sweep the model/plan memory split");
  add_common(sweep, mcts_flags);
  sweep->add_option("--plan-units", mcts_flags.plan_units, "Plan-unit grid (N_pi values)")->delimiter(',');
  sweep->add_option("--dataset", mcts_flags.datasets, "Datasets to sweep")->delimiter(',');

  CommonFlags pt_flags;
  bool render_ascii = false;
  bool checkpoints = false;
  auto* pt = app.add_subcommand("run-ptdqn", "Train PT-DQN agents on the continual world");
  add_common(pt, pt_flags);
  pt->add_option("--permanent-fraction", pt_flags.permanent_fractions, "Permanent share of hidden units")
      ->delimiter(',');
  pt->add_option("--buffer-capacity", pt_flags.buffer_capacity, "Replay buffer slots");
  pt->add_option("--steps", pt_flags.steps, "Environment steps per run");
  pt->add_option("--swap-period", pt_flags.swap_period, "Steps between reward swaps");
  pt->add_flag("--render-ascii", render_ascii, "Print the first world window before training");
  pt->add_flag("--checkpoints", checkpoints, "Dump final weights of every run");

  CommonFlags base_flags;
  auto* base = app.add_subcommand("baseline", "Random-policy baselines for both tasks");
  add_common(base, base_flags);
  base->add_option("--steps", base_flags.steps, "Environment steps per run");
  base->add_option("--swap-period", base_flags.swap_period, "Steps between reward swaps");

  auto* plot = app.add_subcommand("plot", "Render an SVG chart from a raw CSV");
  std::string plot_input;
  std::string plot_kind = "auto";
  std::string plot_out;
  plot->add_option("--input", plot_input, "Raw sweep or trace CSV")->required();
  plot->add_option("--kind", plot_kind, "mcts|ptdqn|auto")->check(CLI::IsMember({"mcts", "ptdqn", "auto"}));
  plot->add_option("--out", plot_out, "SVG file (stdout when omitted)");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*gen) return cmd_gen_data(dataset, data_seed, data_out);
    if (*sweep) return cmd_sweep_mcts(mcts_flags);
    if (*pt) return cmd_run_ptdqn(pt_flags, render_ascii, checkpoints);
    if (*base) return cmd_baseline(base_flags);
    if (*plot) return cmd_plot(plot_input, plot_kind, plot_out);
    if (*selftest) return run_selftest(std::cout) ? 0 : kExitRuntime;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
