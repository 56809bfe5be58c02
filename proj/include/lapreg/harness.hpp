#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lapreg/bounds.hpp"
#include "lapreg/solver.hpp"
#include "lapreg/types.hpp"

namespace lapreg {

/// Experiment configuration. Loadable from a JSON object with exactly
/// these keys (all optional, unknown keys rejected).
struct ExperimentConfig {
  Index m = 100;
  Index k = 10;
  std::vector<Index> n_grid = {100, 200, 300, 400, 500,
                               600, 700, 800, 900, 1000};
  double sigma = 2.2360679774997896;  // sqrt(5)
  double bandwidth = 0.5;
  std::vector<double> threshold_grid = {0.0};
  std::vector<double> alpha_grid;  // default: 20 points log-spaced [1e-6, 1e2]
  double D = 2.0;
  int trials = 20;
  std::uint64_t master_seed = 8675309;
  std::string out_dir = "out";

  ExperimentConfig();
};

/// 20 logarithmically spaced points spanning [1e-6, 1e2].
std::vector<double> default_alpha_grid();

/// Parses and validates a JSON config file. Unknown keys, wrong types,
/// or violated grid invariants raise config_error.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);
void validate(const ExperimentConfig& cfg);

/// One row of the trial CSV schema. Fields of failed trials are NaN and
/// status names the failure; sweeps never abort on one bad cell.
struct TrialRow {
  std::string kind;
  Index n = 0;
  double threshold = 0.0;
  double alpha = 0.0;
  int trial = 0;
  double empirical_error = 0.0;
  double bound_value = 0.0;
  double lambda2 = 0.0;
  double kappa = 0.0;
  double misalignment = 0.0;
  double assumption1_ratio = 0.0;
  double residual = 0.0;
  std::uint64_t trial_seed = 0;
  std::string status = "ok";
};

/// graph -> Laplacian -> instance -> solve -> bound -> report, fully
/// deterministic from (master_seed, n, threshold, trial).
TrialRow run_trial(const ExperimentConfig& cfg, Index n, double threshold,
                   double alpha, RegularizerKind kind, int trial);

/// Replays a trial from an explicit seed, as recorded in a CSV row.
TrialRow run_trial_seeded(const ExperimentConfig& cfg, Index n,
                          double threshold, double alpha, RegularizerKind kind,
                          int trial, std::uint64_t trial_seed);

struct TuneResult {
  double best_alpha = 0.0;
  std::vector<std::pair<double, double>> table;  // (alpha, mean error)
  int instances_used = 0;
};

/// Grid search for the alpha minimizing mean empirical error over fresh
/// instances (shared across the grid and across estimator kinds, so
/// comparisons are paired). Ties break toward the smaller alpha.
TuneResult tune_alpha(const ExperimentConfig& cfg, RegularizerKind kind,
                      Index n);

struct SweepSummaryRow {
  std::string kind;
  Index n = 0;
  double alpha = 0.0;
  double mean_empirical_error = 0.0;
  double std_empirical_error = 0.0;
  double mean_bound_value = 0.0;
  double std_bound_value = 0.0;
  int ok_trials = 0;
};

struct SweepResult {
  std::vector<TrialRow> rows;
  std::vector<SweepSummaryRow> summary;
};

/// Sample-size sweep at the first threshold: per kind and per n, trials
/// repetitions at the per-(kind, n) tuned alpha. Writes sweep_n.csv,
/// sweep_n_summary.csv and one two-curve SVG per kind under out_dir.
SweepResult sweep_sample_size(const ExperimentConfig& cfg);

struct CompareRow {
  Index n = 0;
  int trial = 0;
  double alpha_laplacian = 0.0;
  double alpha_ridge = 0.0;
  double error_laplacian = 0.0;
  double error_ridge = 0.0;
  double error_diff = 0.0;  // laplacian - ridge
  bool laplacian_win = false;
  std::uint64_t trial_seed = 0;
  std::string status = "ok";
};

struct CompareSummaryRow {
  Index n = 0;
  int ok_trials = 0;
  double mean_error_diff = 0.0;
  int laplacian_wins = 0;
  int ridge_wins = 0;
  int ties = 0;
};

struct CompareResult {
  std::vector<CompareRow> rows;
  std::vector<CompareSummaryRow> summary;
};

/// Paired comparison (identical seeds, hence identical data) of both
/// estimators at their per-n tuned alpha, with a sign-test win count.
/// Writes compare.csv and compare_summary.csv.
CompareResult compare_estimators(const ExperimentConfig& cfg);

struct DensityRow {
  double threshold = 0.0;
  int trial = 0;
  Index n = 0;
  double alpha = 0.0;
  double lambda2 = 0.0;
  double empirical_error = 0.0;
  double bound_value = 0.0;
  std::uint64_t trial_seed = 0;
  std::string status = "ok";
};

struct DensitySummaryRow {
  double threshold = 0.0;
  int ok_trials = 0;
  int skipped_trials = 0;
  double mean_lambda2 = 0.0;
  double mean_empirical_error = 0.0;
  double mean_bound_value = 0.0;
};

struct DensityResult {
  std::vector<DensityRow> rows;
  std::vector<DensitySummaryRow> summary;
};

/// Graph-density sweep at n = n_grid.front() and the recommended alpha
/// (fixed across thresholds so the Fiedler value is the only moving part
/// of the bound). Disconnected cells are skipped with a status; if every
/// cell is disconnected the sweep raises config_error. Writes
/// sweep_density.csv and sweep_density_summary.csv.
DensityResult sweep_density(const ExperimentConfig& cfg);

struct DiagnosticsRow {
  int trial = 0;
  Index n = 0;
  double alpha = 0.0;
  DiagnosticsReport report;
  bool exact_lower_holds = false;    // curvature >= exact Fiedler lower bound
  bool dropped_lower_holds = false;  // curvature >= lambda2 ||Delta||_F^2
  bool grad_within_rate = false;     // sup-norm <= rate
  bool gram_event = false;  // gram_min >= s_min/9 and gram_max <= 9 s_max
  std::uint64_t trial_seed = 0;
  std::string status = "ok";
};

struct DiagnosticsSummary {
  int rows = 0;
  int ok_rows = 0;
  double exact_lower_freq = 0.0;
  double dropped_lower_freq = 0.0;
  double mean_assumption1_ratio = 0.0;
  double grad_rate_violation_freq = 0.0;
  double gram_event_freq = 0.0;
};

struct DiagnosticsResult {
  std::vector<DiagnosticsRow> rows;
  DiagnosticsSummary summary;
};

/// Inequality diagnostics over fresh trials at n = n_grid.front() and the
/// recommended alpha, on the realized error matrix of the Laplacian
/// estimator. Reports satisfaction frequencies; the gradient sup-norm
/// rate comparison is informational, never asserted. Writes
/// check_lemmas.csv and check_lemmas_summary.csv.
DiagnosticsResult check_lemmas(const ExperimentConfig& cfg);

/// One trial at n = n_grid.front(); alpha < 0 selects the recommended
/// value. Writes simulate.csv, optionally dumping every instance matrix.
TrialRow simulate_once(const ExperimentConfig& cfg, RegularizerKind kind,
                       double alpha, bool dump_matrices);

/// Header of the per-trial CSV schema shared by sweep-n and simulate.
extern const char* const kTrialCsvHeader;

}  // namespace lapreg
