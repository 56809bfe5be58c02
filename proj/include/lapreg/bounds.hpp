#pragma once

#include "lapreg/graph.hpp"
#include "lapreg/solver.hpp"
#include "lapreg/synth.hpp"
#include "lapreg/types.hpp"

namespace lapreg {

/// Ingredients of the non-asymptotic estimation-error bound
///   value = alpha (sqrt(r) + 2 misalignment) / (kappa + alpha lambda2)
/// where misalignment = ||L Theta*||_F measures how far the ground truth
/// is from being smooth on the graph.
struct ErrorBound {
  double alpha = 0.0;
  int rank_budget = 1;        // r, rank ceiling on theta_hat - theta_star
  double misalignment = 0.0;  // ||L Theta*||_F (||Theta*||_F for ridge)
  double kappa = 0.0;         // strong-convexity constant
  double lambda2 = 0.0;       // Fiedler value (1 for ridge)
  double value = 0.0;
};

/// Empirical counterparts of the quantities the bound's proof relies on,
/// evaluated on a realized error matrix Delta and instance draw.
struct DiagnosticsReport {
  double delta_quadratic_form = 0.0;   // tr(Delta^T L Delta)
  double fiedler_bound_exact = 0.0;    // lambda2 (||Delta||_F^2 - ||q1^T Delta||_2^2)
  double fiedler_bound_dropped = 0.0;  // lambda2 ||Delta||_F^2
  double column_mean_mass_ratio = 0.0; // [sum_j (col mean mass)] / ||Delta||_F^2
  double gradient_sup_norm = 0.0;      // (1/n) ||Omega X^T||_inf
  double gradient_sup_norm_rate = 0.0; // 8 sigma sqrt(D) sqrt(m+k) / (m n)
  double gram_eigen_min = 0.0;         // sigma_min(XX^T/n)
  double gram_eigen_max = 0.0;         // sigma_max(XX^T/n)
};

/// One trial's empirical error versus its theoretical bound.
struct TrialReport {
  double empirical_error = 0.0;  // ||theta_hat - theta_star||_F
  ErrorBound bound;
  double error_to_bound_ratio = 0.0;
  DiagnosticsReport diagnostics;
  double stationarity_residual = 0.0;
};

/// Bound for the Laplacian-regularized estimator. Requires a strictly
/// positive Fiedler value (connected graph); refuses lambda2 = 0 rather
/// than silently degrading.
ErrorBound laplacian_error_bound(double alpha, int rank_budget,
                                 const LaplacianSpectrum& s,
                                 const Matrix& theta_star, double kappa);

/// Ridge specialization (L = I_m): value = alpha (sqrt(r) + 2||Theta*||_F)
/// / (kappa + alpha).
ErrorBound ridge_error_bound(double alpha, int rank_budget,
                             const Matrix& theta_star, double kappa);

/// Smallest regularization strength under which the bound's hypothesis on
/// the gradient sup-norm holds with high probability:
/// 8 sigma sqrt(D) sqrt(m+k) / (m n), D >= 2.
double recommended_alpha(double sigma, double D, Index m, Index k, Index n);

/// Conservative strong-convexity constant sigma_min(Sigma)/18, valid with
/// high probability for coefficient columns drawn i.i.d. N(0, Sigma).
double kappa_from_covariance(const Matrix& Sigma);

/// Evaluates every DiagnosticsReport field for a realized Delta.
DiagnosticsReport diagnostics(const Matrix& Delta, const LaplacianSpectrum& s,
                              const Matrix& Omega, const Matrix& X,
                              double sigma, double D);

/// Assembles the per-trial comparison for an estimate solved on inst over
/// the graph behind s, with the bound evaluated by the caller.
TrialReport empirical_vs_bound(const ModelInstance& inst,
                               const EstimateResult& est,
                               const LaplacianSpectrum& s,
                               const ErrorBound& bound, double D);

}  // namespace lapreg
