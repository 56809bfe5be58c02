#include "lapreg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "lapreg/graph.hpp"
#include "lapreg/io.hpp"
#include "lapreg/rng.hpp"
#include "lapreg/svg.hpp"

namespace lapreg {

const char* const kTrialCsvHeader =
    "kind,n,alpha,trial,empirical_error,bound_value,lambda2,kappa,"
    "misalignment,assumption1_ratio,residual,trial_seed,status";

namespace {

constexpr std::uint64_t kTagTrial = 0xA1;
constexpr std::uint64_t kTagTune = 0xA2;
constexpr std::uint64_t kTagDiag = 0xA3;
constexpr std::uint64_t kSubGraph = 1;
constexpr std::uint64_t kSubInstance = 2;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t trial_seed_for(const ExperimentConfig& cfg, std::uint64_t tag,
                             Index n, double threshold, int trial) {
  return derive_seed(cfg.master_seed,
                     {tag, static_cast<std::uint64_t>(n), seed_word(threshold),
                      static_cast<std::uint64_t>(trial)});
}

// Signals a cell skipped because the sampled graph fell apart.
struct disconnected_graph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrialData {
  Graph graph;
  LaplacianSpectrum spectrum;
  ModelInstance instance;
};

TrialData make_trial_data(const ExperimentConfig& cfg, Index n,
                          double threshold, std::uint64_t seed) {
  TrialData data;
  data.graph = generate_geometric_graph(cfg.m, cfg.bandwidth, threshold,
                                        derive_seed(seed, {kSubGraph}));
  if (!is_connected(data.graph))
    throw disconnected_graph("sampled graph is disconnected");
  data.spectrum = laplacian(data.graph);
  data.instance =
      make_instance(data.spectrum, cfg.k, n, cfg.sigma,
                    Matrix::Identity(cfg.k, cfg.k),
                    derive_seed(seed, {kSubInstance}));
  return data;
}

EstimateResult solve_kind(const TrialData& data, RegularizerKind kind,
                          double alpha) {
  return kind == RegularizerKind::laplacian
             ? solve_laplacian_regularized(data.instance.observations,
                                           data.instance.coefficients,
                                           data.spectrum, alpha)
             : solve_ridge(data.instance.observations,
                           data.instance.coefficients, alpha);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_trial_rows(std::ostream& out, const std::vector<TrialRow>& rows) {
  out << kTrialCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.kind << "," << r.n << "," << fmt17(r.alpha) << "," << r.trial
        << "," << fmt17(r.empirical_error) << "," << fmt17(r.bound_value)
        << "," << fmt17(r.lambda2) << "," << fmt17(r.kappa) << ","
        << fmt17(r.misalignment) << "," << fmt17(r.assumption1_ratio) << ","
        << fmt17(r.residual) << "," << r.trial_seed << "," << r.status << "\n";
  }
}

}  // namespace

ExperimentConfig::ExperimentConfig() : alpha_grid(default_alpha_grid()) {}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(20);
  for (int i = 0; i < 20; ++i)
    grid[static_cast<size_t>(i)] =
        std::pow(10.0, -6.0 + 8.0 * static_cast<double>(i) / 19.0);
  return grid;
}

void validate(const ExperimentConfig& cfg) {
  const auto fail = [](const std::string& what) { throw config_error(what); };
  if (cfg.m < 1) fail("m must be >= 1");
  if (cfg.k < 1) fail("k must be >= 1");
  if (cfg.n_grid.empty()) fail("n_grid must be non-empty");
  for (size_t i = 0; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] < cfg.k) fail("every n_grid entry must be >= k");
    if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1])
      fail("n_grid must be strictly ascending");
  }
  if (!(cfg.sigma >= 0.0)) fail("sigma must be >= 0");
  if (!(cfg.bandwidth > 0.0)) fail("bandwidth must be > 0");
  if (cfg.threshold_grid.empty()) fail("threshold_grid must be non-empty");
  for (size_t i = 0; i < cfg.threshold_grid.size(); ++i) {
    const double t = cfg.threshold_grid[i];
    if (!(t >= 0.0 && t < 1.0)) fail("thresholds must lie in [0, 1)");
    if (i > 0 && t <= cfg.threshold_grid[i - 1])
      fail("threshold_grid must be strictly ascending");
  }
  if (cfg.alpha_grid.empty()) fail("alpha_grid must be non-empty");
  for (size_t i = 0; i < cfg.alpha_grid.size(); ++i) {
    if (!(cfg.alpha_grid[i] > 0.0)) fail("alpha values must be positive");
    if (i > 0 && cfg.alpha_grid[i] <= cfg.alpha_grid[i - 1])
      fail("alpha_grid must be strictly ascending");
  }
  if (!(cfg.D >= 2.0)) fail("D must be >= 2");
  if (cfg.trials < 1) fail("trials must be >= 1");
  if (cfg.out_dir.empty()) fail("out_dir must be non-empty");
}

ExperimentConfig parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config must be a JSON object");

  ExperimentConfig cfg;
  const auto as_index = [](const nlohmann::json& v, const char* key) -> Index {
    if (!v.is_number_integer())
      throw config_error(std::string(key) + " must be an integer");
    return v.get<Index>();
  };
  const auto as_double = [](const nlohmann::json& v, const char* key) {
    if (!v.is_number())
      throw config_error(std::string(key) + " must be a number");
    return v.get<double>();
  };

  for (const auto& [key, value] : j.items()) {
    if (key == "m") {
      cfg.m = as_index(value, "m");
    } else if (key == "k") {
      cfg.k = as_index(value, "k");
    } else if (key == "n_grid") {
      if (!value.is_array()) throw config_error("n_grid must be an array");
      cfg.n_grid.clear();
      for (const auto& v : value) cfg.n_grid.push_back(as_index(v, "n_grid"));
    } else if (key == "sigma") {
      cfg.sigma = as_double(value, "sigma");
    } else if (key == "bandwidth") {
      cfg.bandwidth = as_double(value, "bandwidth");
    } else if (key == "threshold_grid") {
      if (!value.is_array())
        throw config_error("threshold_grid must be an array");
      cfg.threshold_grid.clear();
      for (const auto& v : value)
        cfg.threshold_grid.push_back(as_double(v, "threshold_grid"));
    } else if (key == "alpha_grid") {
      if (!value.is_array()) throw config_error("alpha_grid must be an array");
      cfg.alpha_grid.clear();
      for (const auto& v : value)
        cfg.alpha_grid.push_back(as_double(v, "alpha_grid"));
    } else if (key == "D") {
      cfg.D = as_double(value, "D");
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(as_index(value, "trials"));
    } else if (key == "master_seed") {
      if (!value.is_number_integer() ||
          (value.is_number_integer() && !value.is_number_unsigned() &&
           value.get<std::int64_t>() < 0))
        throw config_error("master_seed must be a nonnegative integer");
      cfg.master_seed = value.get<std::uint64_t>();
    } else if (key == "out_dir") {
      if (!value.is_string()) throw config_error("out_dir must be a string");
      cfg.out_dir = value.get<std::string>();
    } else {
      throw config_error("unknown config key: " + key);
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

TrialRow run_trial_seeded(const ExperimentConfig& cfg, Index n,
                          double threshold, double alpha, RegularizerKind kind,
                          int trial, std::uint64_t trial_seed) {
  TrialRow row;
  row.kind = to_string(kind);
  row.n = n;
  row.threshold = threshold;
  row.alpha = alpha;
  row.trial = trial;
  row.trial_seed = trial_seed;
  row.empirical_error = row.bound_value = row.lambda2 = row.kappa =
      row.misalignment = row.assumption1_ratio = row.residual = kNaN;

  try {
    const TrialData data = make_trial_data(cfg, n, threshold, trial_seed);
    const EstimateResult est = solve_kind(data, kind, alpha);
    const double kappa = kappa_from_covariance(data.instance.coeff_covariance);
    const int rank_budget = static_cast<int>(std::min(cfg.m, cfg.k));
    const ErrorBound bound =
        kind == RegularizerKind::laplacian
            ? laplacian_error_bound(alpha, rank_budget, data.spectrum,
                                    data.instance.theta_star, kappa)
            : ridge_error_bound(alpha, rank_budget, data.instance.theta_star,
                                kappa);
    const TrialReport report =
        empirical_vs_bound(data.instance, est, data.spectrum, bound, cfg.D);

    row.empirical_error = report.empirical_error;
    row.bound_value = bound.value;
    row.lambda2 = bound.lambda2;
    row.kappa = kappa;
    row.misalignment = bound.misalignment;
    row.assumption1_ratio = report.diagnostics.column_mean_mass_ratio;
    row.residual = report.stationarity_residual;
    row.status = "ok";
  } catch (const disconnected_graph&) {
    row.status = "disconnected";
  } catch (const numerical_error&) {
    row.status = "numerical-failure";
  } catch (const std::invalid_argument&) {
    row.status = "invalid-argument";
  }
  return row;
}

TrialRow run_trial(const ExperimentConfig& cfg, Index n, double threshold,
                   double alpha, RegularizerKind kind, int trial) {
  return run_trial_seeded(cfg, n, threshold, alpha, kind, trial,
                          trial_seed_for(cfg, kTagTrial, n, threshold, trial));
}

TuneResult tune_alpha(const ExperimentConfig& cfg, RegularizerKind kind,
                      Index n) {
  validate(cfg);
  const double threshold = cfg.threshold_grid.front();
  std::vector<double> error_sums(cfg.alpha_grid.size(), 0.0);
  int used = 0;

  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = trial_seed_for(cfg, kTagTune, n, threshold, t);
    std::vector<double> errors;
    errors.reserve(cfg.alpha_grid.size());
    try {
      const TrialData data = make_trial_data(cfg, n, threshold, seed);
      for (double alpha : cfg.alpha_grid) {
        const EstimateResult est = solve_kind(data, kind, alpha);
        errors.push_back((est.theta_hat - data.instance.theta_star).norm());
      }
    } catch (const std::exception&) {
      continue;  // drop the whole instance so alphas stay paired
    }
    for (size_t a = 0; a < errors.size(); ++a) error_sums[a] += errors[a];
    ++used;
  }
  if (used == 0)
    throw numerical_error("alpha tuning produced no usable instances");

  TuneResult result;
  result.instances_used = used;
  size_t best = 0;
  for (size_t a = 0; a < cfg.alpha_grid.size(); ++a) {
    const double mean_error = error_sums[a] / static_cast<double>(used);
    result.table.emplace_back(cfg.alpha_grid[a], mean_error);
    if (mean_error < result.table[best].second) best = a;
  }
  result.best_alpha = cfg.alpha_grid[best];
  return result;
}

SweepResult sweep_sample_size(const ExperimentConfig& cfg) {
  validate(cfg);
  ensure_writable_dir(cfg.out_dir);
  const double threshold = cfg.threshold_grid.front();

  SweepResult res;
  for (RegularizerKind kind :
       {RegularizerKind::laplacian, RegularizerKind::ridge}) {
    for (Index n : cfg.n_grid) {
      const double alpha = tune_alpha(cfg, kind, n).best_alpha;
      std::vector<double> errors, bounds;
      for (int t = 0; t < cfg.trials; ++t) {
        TrialRow row = run_trial(cfg, n, threshold, alpha, kind, t);
        if (row.status == "ok") {
          errors.push_back(row.empirical_error);
          bounds.push_back(row.bound_value);
        }
        res.rows.push_back(std::move(row));
      }
      res.summary.push_back(SweepSummaryRow{
          to_string(kind), n, alpha, mean_of(errors), stddev_of(errors),
          mean_of(bounds), stddev_of(bounds), static_cast<int>(errors.size())});
    }
  }

  {
    auto out = open_out(cfg.out_dir, "sweep_n.csv");
    write_trial_rows(out, res.rows);
  }
  {
    auto out = open_out(cfg.out_dir, "sweep_n_summary.csv");
    out << "kind,n,alpha,mean_empirical_error,std_empirical_error,"
           "mean_bound_value,std_bound_value,ok_trials\n";
    for (const auto& s : res.summary) {
      out << s.kind << "," << s.n << "," << fmt17(s.alpha) << ","
          << fmt17(s.mean_empirical_error) << ","
          << fmt17(s.std_empirical_error) << "," << fmt17(s.mean_bound_value)
          << "," << fmt17(s.std_bound_value) << "," << s.ok_trials << "\n";
    }
  }
  for (RegularizerKind kind :
       {RegularizerKind::laplacian, RegularizerKind::ridge}) {
    PlotSeries empirical{"empirical error", {}, {}};
    PlotSeries bound{"theoretical bound", {}, {}};
    for (const auto& s : res.summary) {
      if (s.kind != to_string(kind) || s.ok_trials == 0) continue;
      empirical.x.push_back(static_cast<double>(s.n));
      empirical.y.push_back(s.mean_empirical_error);
      bound.x.push_back(static_cast<double>(s.n));
      bound.y.push_back(s.mean_bound_value);
    }
    PlotSpec spec;
    spec.title = std::string("Estimation error vs sample size (") +
                 to_string(kind) + ")";
    spec.x_label = "sample size n";
    spec.y_label = "Frobenius error";
    spec.series = {empirical, bound};
    write_svg_plot((std::filesystem::path(cfg.out_dir) /
                    (std::string("sweep_n_") + to_string(kind) + ".svg"))
                       .string(),
                   spec);
  }
  return res;
}

CompareResult compare_estimators(const ExperimentConfig& cfg) {
  validate(cfg);
  ensure_writable_dir(cfg.out_dir);
  const double threshold = cfg.threshold_grid.front();

  CompareResult res;
  for (Index n : cfg.n_grid) {
    const double alpha_lap =
        tune_alpha(cfg, RegularizerKind::laplacian, n).best_alpha;
    const double alpha_ridge =
        tune_alpha(cfg, RegularizerKind::ridge, n).best_alpha;
    CompareSummaryRow s;
    s.n = n;
    std::vector<double> diffs;
    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t seed = trial_seed_for(cfg, kTagTrial, n, threshold, t);
      const TrialRow lap = run_trial_seeded(cfg, n, threshold, alpha_lap,
                                            RegularizerKind::laplacian, t, seed);
      const TrialRow ridge = run_trial_seeded(cfg, n, threshold, alpha_ridge,
                                              RegularizerKind::ridge, t, seed);
      CompareRow row;
      row.n = n;
      row.trial = t;
      row.alpha_laplacian = alpha_lap;
      row.alpha_ridge = alpha_ridge;
      row.error_laplacian = lap.empirical_error;
      row.error_ridge = ridge.empirical_error;
      row.error_diff = lap.empirical_error - ridge.empirical_error;
      row.trial_seed = seed;
      row.status = lap.status != "ok" ? lap.status : ridge.status;
      row.laplacian_win =
          row.status == "ok" && row.error_laplacian < row.error_ridge;
      if (row.status == "ok") {
        ++s.ok_trials;
        diffs.push_back(row.error_diff);
        if (row.error_laplacian < row.error_ridge) ++s.laplacian_wins;
        else if (row.error_ridge < row.error_laplacian) ++s.ridge_wins;
        else ++s.ties;
      }
      res.rows.push_back(std::move(row));
    }
    s.mean_error_diff = mean_of(diffs);
    res.summary.push_back(s);
  }

  {
    auto out = open_out(cfg.out_dir, "compare.csv");
    out << "n,trial,alpha_laplacian,alpha_ridge,error_laplacian,error_ridge,"
           "error_diff,laplacian_win,trial_seed,status\n";
    for (const auto& r : res.rows) {
      out << r.n << "," << r.trial << "," << fmt17(r.alpha_laplacian) << ","
          << fmt17(r.alpha_ridge) << "," << fmt17(r.error_laplacian) << ","
          << fmt17(r.error_ridge) << "," << fmt17(r.error_diff) << ","
          << (r.laplacian_win ? 1 : 0) << "," << r.trial_seed << ","
          << r.status << "\n";
    }
  }
  {
    auto out = open_out(cfg.out_dir, "compare_summary.csv");
    out << "n,ok_trials,mean_error_diff,laplacian_wins,ridge_wins,ties\n";
    for (const auto& s : res.summary) {
      out << s.n << "," << s.ok_trials << "," << fmt17(s.mean_error_diff)
          << "," << s.laplacian_wins << "," << s.ridge_wins << "," << s.ties
          << "\n";
    }
  }
  return res;
}

DensityResult sweep_density(const ExperimentConfig& cfg) {
  validate(cfg);
  ensure_writable_dir(cfg.out_dir);
  const Index n = cfg.n_grid.front();
  const double alpha = recommended_alpha(cfg.sigma, cfg.D, cfg.m, cfg.k, n);

  DensityResult res;
  int total_ok = 0;
  for (double threshold : cfg.threshold_grid) {
    DensitySummaryRow s;
    s.threshold = threshold;
    std::vector<double> lambdas, errors, bounds;
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialRow row = run_trial(cfg, n, threshold, alpha,
                                     RegularizerKind::laplacian, t);
      DensityRow d;
      d.threshold = threshold;
      d.trial = t;
      d.n = n;
      d.alpha = alpha;
      d.lambda2 = row.lambda2;
      d.empirical_error = row.empirical_error;
      d.bound_value = row.bound_value;
      d.trial_seed = row.trial_seed;
      d.status = row.status;
      if (row.status == "ok") {
        lambdas.push_back(row.lambda2);
        errors.push_back(row.empirical_error);
        bounds.push_back(row.bound_value);
      }
      res.rows.push_back(std::move(d));
    }
    s.ok_trials = static_cast<int>(lambdas.size());
    s.skipped_trials = cfg.trials - s.ok_trials;
    s.mean_lambda2 = mean_of(lambdas);
    s.mean_empirical_error = mean_of(errors);
    s.mean_bound_value = mean_of(bounds);
    total_ok += s.ok_trials;
    res.summary.push_back(s);
  }
  if (total_ok == 0)
    throw config_error(
        "density sweep produced no connected graphs at any threshold");

  {
    auto out = open_out(cfg.out_dir, "sweep_density.csv");
    out << "threshold,trial,n,alpha,lambda2,empirical_error,bound_value,"
           "trial_seed,status\n";
    for (const auto& r : res.rows) {
      out << fmt17(r.threshold) << "," << r.trial << "," << r.n << ","
          << fmt17(r.alpha) << "," << fmt17(r.lambda2) << ","
          << fmt17(r.empirical_error) << "," << fmt17(r.bound_value) << ","
          << r.trial_seed << "," << r.status << "\n";
    }
  }
  {
    auto out = open_out(cfg.out_dir, "sweep_density_summary.csv");
    out << "threshold,ok_trials,skipped_trials,mean_lambda2,"
           "mean_empirical_error,mean_bound_value\n";
    for (const auto& s : res.summary) {
      out << fmt17(s.threshold) << "," << s.ok_trials << ","
          << s.skipped_trials << "," << fmt17(s.mean_lambda2) << ","
          << fmt17(s.mean_empirical_error) << "," << fmt17(s.mean_bound_value)
          << "\n";
    }
  }
  return res;
}

DiagnosticsResult check_lemmas(const ExperimentConfig& cfg) {
  validate(cfg);
  ensure_writable_dir(cfg.out_dir);
  const Index n = cfg.n_grid.front();
  const double threshold = cfg.threshold_grid.front();
  const double alpha = recommended_alpha(cfg.sigma, cfg.D, cfg.m, cfg.k, n);
  const Matrix Sigma = Matrix::Identity(cfg.k, cfg.k);
  const Vector sigma_eigs =
      Eigen::SelfAdjointEigenSolver<Matrix>(Sigma, Eigen::EigenvaluesOnly)
          .eigenvalues();

  DiagnosticsResult res;
  double ratio_sum = 0.0;
  int exact_count = 0, dropped_count = 0, rate_violations = 0, gram_count = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    DiagnosticsRow row;
    row.trial = t;
    row.n = n;
    row.alpha = alpha;
    row.trial_seed = trial_seed_for(cfg, kTagDiag, n, threshold, t);
    try {
      const TrialData data = make_trial_data(cfg, n, threshold, row.trial_seed);
      const EstimateResult est =
          solve_kind(data, RegularizerKind::laplacian, alpha);
      const Matrix delta = est.theta_hat - data.instance.theta_star;
      row.report = diagnostics(delta, data.spectrum, data.instance.noise,
                               data.instance.coefficients, cfg.sigma, cfg.D);
      const double slack =
          1e-9 * (1.0 + std::abs(row.report.delta_quadratic_form));
      row.exact_lower_holds =
          row.report.delta_quadratic_form >=
          row.report.fiedler_bound_exact - slack;
      row.dropped_lower_holds =
          row.report.delta_quadratic_form >=
          row.report.fiedler_bound_dropped - slack;
      row.grad_within_rate =
          row.report.gradient_sup_norm <= row.report.gradient_sup_norm_rate;
      row.gram_event = row.report.gram_eigen_min >= sigma_eigs[0] / 9.0 &&
                       row.report.gram_eigen_max <= 9.0 * sigma_eigs[cfg.k - 1];
      row.status = "ok";

      ratio_sum += row.report.column_mean_mass_ratio;
      exact_count += row.exact_lower_holds;
      dropped_count += row.dropped_lower_holds;
      rate_violations += !row.grad_within_rate;
      gram_count += row.gram_event;
      ++res.summary.ok_rows;
    } catch (const disconnected_graph&) {
      row.status = "disconnected";
    } catch (const numerical_error&) {
      row.status = "numerical-failure";
    } catch (const std::invalid_argument&) {
      row.status = "invalid-argument";
    }
    res.rows.push_back(std::move(row));
  }
  res.summary.rows = cfg.trials;
  if (res.summary.ok_rows > 0) {
    const double ok = res.summary.ok_rows;
    res.summary.exact_lower_freq = exact_count / ok;
    res.summary.dropped_lower_freq = dropped_count / ok;
    res.summary.mean_assumption1_ratio = ratio_sum / ok;
    res.summary.grad_rate_violation_freq = rate_violations / ok;
    res.summary.gram_event_freq = gram_count / ok;
  }

  {
    auto out = open_out(cfg.out_dir, "check_lemmas.csv");
    out << "trial,n,alpha,curvature,exact_lower,dropped_lower,"
           "exact_lower_holds,dropped_lower_holds,assumption1_ratio,"
           "grad_sup_norm,grad_rate,grad_within_rate,gram_min,gram_max,"
           "gram_event,trial_seed,status\n";
    for (const auto& r : res.rows) {
      const auto& d = r.report;
      out << r.trial << "," << r.n << "," << fmt17(r.alpha) << ","
          << fmt17(d.delta_quadratic_form) << ","
          << fmt17(d.fiedler_bound_exact) << ","
          << fmt17(d.fiedler_bound_dropped) << "," << r.exact_lower_holds
          << "," << r.dropped_lower_holds << ","
          << fmt17(d.column_mean_mass_ratio) << ","
          << fmt17(d.gradient_sup_norm) << ","
          << fmt17(d.gradient_sup_norm_rate) << "," << r.grad_within_rate
          << "," << fmt17(d.gram_eigen_min) << "," << fmt17(d.gram_eigen_max)
          << "," << r.gram_event << "," << r.trial_seed << "," << r.status
          << "\n";
    }
  }
  {
    auto out = open_out(cfg.out_dir, "check_lemmas_summary.csv");
    out << "rows,ok_rows,exact_lower_freq,dropped_lower_freq,"
           "mean_assumption1_ratio,grad_rate_violation_freq,gram_event_freq\n";
    const auto& s = res.summary;
    out << s.rows << "," << s.ok_rows << "," << fmt17(s.exact_lower_freq)
        << "," << fmt17(s.dropped_lower_freq) << ","
        << fmt17(s.mean_assumption1_ratio) << ","
        << fmt17(s.grad_rate_violation_freq) << ","
        << fmt17(s.gram_event_freq) << "\n";
  }
  return res;
}

TrialRow simulate_once(const ExperimentConfig& cfg, RegularizerKind kind,
                       double alpha, bool dump_matrices) {
  validate(cfg);
  ensure_writable_dir(cfg.out_dir);
  const Index n = cfg.n_grid.front();
  const double threshold = cfg.threshold_grid.front();
  if (alpha < 0.0)
    alpha = recommended_alpha(cfg.sigma, cfg.D, cfg.m, cfg.k, n);

  const TrialRow row = run_trial(cfg, n, threshold, alpha, kind, 0);
  {
    auto out = open_out(cfg.out_dir, "simulate.csv");
    write_trial_rows(out, {row});
  }
  if (dump_matrices && row.status == "ok") {
    const TrialData data = make_trial_data(cfg, n, threshold, row.trial_seed);
    dump_instance(cfg.out_dir, data.instance, cfg.bandwidth, threshold);
    const EstimateResult est = solve_kind(data, kind, alpha);
    write_matrix_csv(
        (std::filesystem::path(cfg.out_dir) / "theta_hat.csv").string(),
        est.theta_hat);
    write_edge_list(
        (std::filesystem::path(cfg.out_dir) / "graph.txt").string(),
        data.graph);
  }
  return row;
}

}  // namespace lapreg
