#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proxsmooth/solver.hpp"

namespace proxsmooth::bench {

class spec_error : public std::runtime_error {
 public:
  spec_error(const std::string& field_path, const std::string& what)
      : std::runtime_error(field_path + ": " + what), field_path(field_path) {}
  std::string field_path;
};

enum class Family { kDispersion, kMimoBer, kMimoSpeed };

const char* to_string(Family f);

struct SizeSpec {
  // Dispersion: d, m, d_V. MIMO: U, B, M, snr_db (one entry per SNR point;
  // snr lists in the JSON spec are expanded at parse time).
  int d = 0, m = 0, d_V = 0;
  int U = 0, B = 0, M = 0;
  double snr_db = 0.0;

  std::string label(Family family) const;
};

struct ModelSpec {
  enum class Kind { kProposed, kModulus, kSoav, kLmmse, kSubgradient };

  Kind kind = Kind::kProposed;
  // Polar-model weights; also used by the subgradient baseline, which runs
  // on the same polar model.
  double lambda_r = 1e-5;
  double lambda_theta = 1e-5;
  double r_lb = 0.1;
  // SOAV weight.
  double lambda = 1e-5;
  SubgradientRule rule = SubgradientRule::kEtaSqrt;

  std::string label() const;
};

struct ExperimentSpec {
  Family family = Family::kDispersion;
  std::vector<SizeSpec> sizes;
  int trials = 1;
  SolverConfig solver;
  std::vector<ModelSpec> models;
  std::uint64_t base_seed = 1;
  std::string output_dir = "out";
  bool write_traces = false;

  void validate() const;
};

/// Parses the JSON experiment spec; throws spec_error carrying the offending
/// field path.
ExperimentSpec parse_spec_json(const std::string& json_text);
ExperimentSpec load_spec_file(const std::string& path);

/// Canned desk-scale specs mirroring the dispersion and detection studies.
ExperimentSpec demo_dispersion_spec(int trials);
ExperimentSpec demo_mimo_spec(int trials);

struct ResultRow {
  std::string family;
  std::string size;
  std::string model;
  std::uint64_t trial_seed = 0;
  double cost_final = 0.0;
  std::optional<double> measure_final;
  long iterations = 0;
  double wallclock_sec = 0.0;  // measured; reported via timings.csv only
  std::string termination;
  std::optional<double> ber;
};

struct SummaryRow {
  std::string family;
  std::string size;
  std::string model;
  long count = 0;
  double cost_mean = 0.0, cost_std = 0.0;
  std::optional<double> measure_mean, measure_std;
  double iter_mean = 0.0, iter_std = 0.0;
  std::optional<double> ber_mean, ber_std;
};

struct RunOutput {
  std::vector<ResultRow> rows;
  std::vector<std::string> failures;  // one message per failed trial
};

/// Runs every (size, model, trial) combination; trial t uses seed
/// base_seed + t, identical across models so comparisons are paired.
/// Deterministic at any thread count: rows come back in task order.
RunOutput run_experiment(const ExperimentSpec& spec, int threads = 1);

/// Per-group (family, size, model) sample means and standard deviations
/// (n - 1 denominator; groups keep first-appearance order).
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

// CSV round-trip. Doubles are printed in shortest round-trip form; missing
// optional values are empty fields. results.csv and summary.csv contain only
// deterministic payload; measured wall times go to timings.csv.
void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_timings_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& is);

/// Runs the experiment and writes results.csv, summary.csv, timings.csv,
/// run_meta.json and optional per-trial traces under spec.output_dir.
/// Returns the number of failed trials.
int run_and_write(const ExperimentSpec& spec, int threads);

std::string format_double(double v);

}  // namespace proxsmooth::bench
