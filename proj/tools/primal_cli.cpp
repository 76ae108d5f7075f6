// Command-line front end for the sensor-network simulation library, and a
// worked example of driving it: single runs, declarative parameter sweeps,
// the canned studies, and the communication-profile catalog.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "primal/primal.hpp"

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out)
    throw primal::ConfigError("cannot write to '" + (dir / name).string() +
                              "'");
  return out;
}

void report_progress(int done, int total) {
  if (done == total || done % 25 == 0)
    std::cerr << "\r" << done << "/" << total << " runs" << std::flush;
  if (done == total) std::cerr << "\n";
}

int cmd_run(const std::optional<std::string>& config_path,
            const std::optional<std::uint64_t>& seed,
            const std::string& out_dir) {
  primal::SimConfig cfg;
  if (config_path) cfg = primal::load_config(*config_path);
  if (seed) cfg.seed = *seed;

  const fs::path dir(out_dir);
  fs::create_directories(dir);

  const primal::RunResult result = primal::run_simulation(cfg);

  {
    auto out = open_output(dir, "run.csv");
    primal::write_run_csv(result.record, out);
  }
  {
    auto out = open_output(dir, "config.txt");
    primal::save_config(result.config, out);
  }
  {
    auto out = open_output(dir, "alarms.csv");
    primal::dump_alarm_log(result.alarm_log, out);
  }

  const primal::Metrics m = primal::compute_metrics(result.confusion);
  std::cout << "iterations=" << result.record.size()
            << " precision=" << m.precision << " recall=" << m.recall
            << " f_measure=" << m.f_measure
            << " total_comm=" << result.ledger.total_comm()
            << " total_privacy=" << result.ledger.total_privacy() << "\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir) {
  const primal::SweepSpec spec = primal::load_sweep_spec(spec_path);
  const auto cells = primal::expand_cells(spec);

  const fs::path dir(out_dir);
  fs::create_directories(dir);

  const auto summaries =
      primal::run_cells(cells, spec.replications, report_progress);
  {
    auto out = open_output(dir, "sweep.csv");
    primal::write_sweep_csv(summaries, out);
  }
  {
    auto out = open_output(dir, "final.csv");
    primal::write_final_csv(summaries, out);
  }
  std::cout << cells.size() << " cells x " << spec.replications
            << " replications -> " << (dir / "sweep.csv").string() << ", "
            << (dir / "final.csv").string() << "\n";
  return 0;
}

int cmd_experiment(const std::string& name, const std::string& out_dir) {
  const primal::Experiment exp = primal::find_experiment(name);

  const fs::path dir(out_dir);
  fs::create_directories(dir);

  const auto summaries =
      primal::run_cells(exp.cells, exp.replications, report_progress);
  {
    auto out = open_output(dir, "sweep.csv");
    primal::write_sweep_csv(summaries, out);
  }
  {
    auto out = open_output(dir, "final.csv");
    primal::write_final_csv(summaries, out);
  }
  std::cout << exp.name << ": " << exp.cells.size() << " cells x "
            << exp.replications << " replications -> "
            << (dir / "sweep.csv").string() << ", "
            << (dir / "final.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-aware event detection in simulated sensor networks"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one simulation");
  std::optional<std::string> run_config;
  std::optional<std::uint64_t> run_seed;
  std::string run_out;
  run->add_option("--config", run_config, "Configuration file (key = value)");
  run->add_option("--seed", run_seed, "Override the configured seed");
  run->add_option("--out", run_out, "Output directory")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string sweep_spec;
  std::string sweep_out;
  sweep->add_option("--spec", sweep_spec, "Sweep description file")
      ->required();
  sweep->add_option("--out", sweep_out, "Output directory")->required();

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "Run one of the canned studies");
  std::string exp_name;
  std::string exp_out;
  experiment
      ->add_option("name", exp_name,
                   "calibration | parameters | criteria | profiles")
      ->required();
  experiment->add_option("--out", exp_out, "Output directory")->required();

  // profiles
  auto* profiles =
      app.add_subcommand("profiles", "Communication profile catalog");
  bool profiles_list = false;
  profiles->add_flag("--list", profiles_list, "Print the catalog as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_config, run_seed, run_out);
    if (sweep->parsed()) return cmd_sweep(sweep_spec, sweep_out);
    if (experiment->parsed()) return cmd_experiment(exp_name, exp_out);
    if (profiles->parsed()) {
      primal::dump_profiles(std::cout);
      return 0;
    }
  } catch (const primal::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
