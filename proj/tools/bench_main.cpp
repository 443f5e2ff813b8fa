// Experiment harness CLI: JSON specs in, deterministic CSV tables out.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "proxsmooth/bench.hpp"

namespace pb = proxsmooth::bench;

namespace {

int run_spec(pb::ExperimentSpec spec, const std::string& out_override,
             const std::optional<std::uint64_t>& seed_override, int threads) {
  if (!out_override.empty()) spec.output_dir = out_override;
  if (seed_override) spec.base_seed = *seed_override;
  const int failures = pb::run_and_write(spec, threads);
  std::cout << "wrote " << spec.output_dir << "/results.csv, summary.csv, timings.csv\n";
  if (failures > 0) {
    std::cerr << failures << " trial(s) diverged\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bench: seeded experiment batches for the composite-smoothing solver"};
  app.require_subcommand(1);

  std::string spec_path, out_dir, results_path, summary_out;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  int trials_dispersion = 100;
  int trials_mimo = 50;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "Output directory (overrides the spec)");
    cmd->add_option("--seed", seed, "Base seed (overrides the spec)");
    cmd->add_option("--threads", threads, "Trial-level worker threads")->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "Run a JSON experiment spec");
  run->add_option("spec", spec_path, "Path to the experiment spec JSON")->required();
  add_common(run);

  auto* summ = app.add_subcommand("summarize", "Aggregate a results.csv into per-group statistics");
  summ->add_option("results", results_path, "Path to results.csv")->required();
  summ->add_option("--out", summary_out, "Summary CSV path (default: stdout)");

  auto* demo_d = app.add_subcommand("demo-dispersion", "Canned dispersion study at desk scale");
  demo_d->add_option("--trials", trials_dispersion, "Trials per size")->check(CLI::PositiveNumber);
  add_common(demo_d);

  auto* demo_m = app.add_subcommand("demo-mimo", "Canned PSK detection study at desk scale");
  demo_m->add_option("--trials", trials_mimo, "Trials per size")->check(CLI::PositiveNumber);
  add_common(demo_m);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_spec(pb::load_spec_file(spec_path), out_dir, seed, threads);
    }
    if (summ->parsed()) {
      std::ifstream in(results_path);
      if (!in) {
        std::cerr << "cannot open " << results_path << "\n";
        return 2;
      }
      const auto rows = pb::read_results_csv(in);
      const auto summary = pb::summarize(rows);
      if (summary_out.empty()) {
        pb::write_summary_csv(std::cout, summary);
      } else {
        std::ofstream out(summary_out, std::ios::binary);
        pb::write_summary_csv(out, summary);
      }
      return 0;
    }
    if (demo_d->parsed()) {
      return run_spec(pb::demo_dispersion_spec(trials_dispersion), out_dir, seed, threads);
    }
    if (demo_m->parsed()) {
      return run_spec(pb::demo_mimo_spec(trials_mimo), out_dir, seed, threads);
    }
  } catch (const pb::spec_error& e) {
    std::cerr << "spec validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
