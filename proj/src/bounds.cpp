#include "lapreg/bounds.hpp"

#include <cmath>

namespace lapreg {

namespace {

void check_bound_inputs(double alpha, int rank_budget, double kappa) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha >= 0 required");
  if (rank_budget < 1) throw std::invalid_argument("rank budget >= 1 required");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa > 0 required");
}

}  // namespace

ErrorBound laplacian_error_bound(double alpha, int rank_budget,
                                 const LaplacianSpectrum& s,
                                 const Matrix& theta_star, double kappa) {
  check_bound_inputs(alpha, rank_budget, kappa);
  if (theta_star.rows() != s.size())
    throw std::invalid_argument("theta_star rows must match vertex count");
  if (!s.has_positive_fiedler())
    throw std::invalid_argument(
        "error bound requires a connected graph (positive Fiedler value)");

  ErrorBound b;
  b.alpha = alpha;
  b.rank_budget = rank_budget;
  b.misalignment = (s.laplacian * theta_star).norm();
  b.kappa = kappa;
  b.lambda2 = s.eigenvalues[1];
  b.value = alpha * (std::sqrt(static_cast<double>(rank_budget)) +
                     2.0 * b.misalignment) /
            (kappa + alpha * b.lambda2);
  return b;
}

ErrorBound ridge_error_bound(double alpha, int rank_budget,
                             const Matrix& theta_star, double kappa) {
  check_bound_inputs(alpha, rank_budget, kappa);
  ErrorBound b;
  b.alpha = alpha;
  b.rank_budget = rank_budget;
  b.misalignment = theta_star.norm();
  b.kappa = kappa;
  b.lambda2 = 1.0;
  b.value = alpha * (std::sqrt(static_cast<double>(rank_budget)) +
                     2.0 * b.misalignment) /
            (kappa + alpha);
  return b;
}

double recommended_alpha(double sigma, double D, Index m, Index k, Index n) {
  if (!(D >= 2.0)) throw std::invalid_argument("D >= 2 required");
  if (m < 1 || k < 1 || n < 1)
    throw std::invalid_argument("dimensions must be >= 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma >= 0 required");
  return 8.0 * sigma * std::sqrt(D) *
         std::sqrt(static_cast<double>(m + k)) /
         (static_cast<double>(m) * static_cast<double>(n));
}

double kappa_from_covariance(const Matrix& Sigma) {
  if (Sigma.rows() < 1 || Sigma.rows() != Sigma.cols())
    throw std::invalid_argument("Sigma must be square and nonempty");
  if ((Sigma - Sigma.transpose()).norm() >
      1e-12 * std::max(1.0, Sigma.norm()) * static_cast<double>(Sigma.rows()))
    throw std::invalid_argument("Sigma must be symmetric");
  const Vector eigs =
      Eigen::SelfAdjointEigenSolver<Matrix>(Sigma, Eigen::EigenvaluesOnly)
          .eigenvalues();
  if (!(eigs[0] > 0.0))
    throw std::invalid_argument("Sigma must be positive definite");
  return eigs[0] / 18.0;
}

DiagnosticsReport diagnostics(const Matrix& Delta, const LaplacianSpectrum& s,
                              const Matrix& Omega, const Matrix& X,
                              double sigma, double D) {
  const Index m = s.size();
  const Index k = Delta.cols();
  const Index n = X.cols();
  if (Delta.rows() != m)
    throw std::invalid_argument("Delta rows must match vertex count");
  if (Omega.rows() != m || Omega.cols() != n || X.rows() != k)
    throw std::invalid_argument("Omega/X dimensions inconsistent with Delta");
  if (!s.has_positive_fiedler())
    throw std::invalid_argument("diagnostics require a positive Fiedler value");

  DiagnosticsReport rep;
  rep.delta_quadratic_form = (Delta.cwiseProduct(s.laplacian * Delta)).sum();

  const double lambda2 = s.eigenvalues[1];
  const double delta_mass = Delta.squaredNorm();
  const Vector first_mode_projection = Delta.transpose() * s.eigenvectors.col(0);
  rep.fiedler_bound_exact =
      lambda2 * (delta_mass - first_mode_projection.squaredNorm());
  rep.fiedler_bound_dropped = lambda2 * delta_mass;

  const double mean_mass =
      Delta.colwise().sum().squaredNorm() / static_cast<double>(m);
  rep.column_mean_mass_ratio = delta_mass > 0.0 ? mean_mass / delta_mass : 0.0;

  rep.gradient_sup_norm =
      (Omega * X.transpose()).cwiseAbs().maxCoeff() / static_cast<double>(n);
  rep.gradient_sup_norm_rate = recommended_alpha(sigma, D, m, k, n);

  const Vector gram_eigs = Eigen::SelfAdjointEigenSolver<Matrix>(
                               (X * X.transpose()) / static_cast<double>(n),
                               Eigen::EigenvaluesOnly)
                               .eigenvalues();
  rep.gram_eigen_min = gram_eigs[0];
  rep.gram_eigen_max = gram_eigs[k - 1];
  return rep;
}

TrialReport empirical_vs_bound(const ModelInstance& inst,
                               const EstimateResult& est,
                               const LaplacianSpectrum& s,
                               const ErrorBound& bound, double D) {
  const Matrix delta = est.theta_hat - inst.theta_star;
  TrialReport report;
  report.empirical_error = delta.norm();
  report.bound = bound;
  report.error_to_bound_ratio =
      bound.value > 0.0 ? report.empirical_error / bound.value
                        : std::numeric_limits<double>::quiet_NaN();
  report.diagnostics =
      diagnostics(delta, s, inst.noise, inst.coefficients, inst.sigma, D);
  report.stationarity_residual = est.stationarity_residual;
  return report;
}

}  // namespace lapreg
