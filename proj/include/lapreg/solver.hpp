#pragma once

#include "lapreg/graph.hpp"
#include "lapreg/types.hpp"

namespace lapreg {

enum class RegularizerKind { laplacian, ridge };

const char* to_string(RegularizerKind kind);

struct EstimatorConfig {
  double alpha = 0.0;  // regularization strength, >= 0
  RegularizerKind kind = RegularizerKind::laplacian;
};

/// Solution of the penalized least-squares program together with the
/// first-order-condition residual ||2 alpha L Theta + Theta XX^T/n - YX^T/n||_F
/// (L = I for ridge) and the attained objective value.
struct EstimateResult {
  Matrix theta_hat;
  EstimatorConfig config;
  double stationarity_residual = 0.0;
  double objective_value = 0.0;
};

/// Minimizes (1/2n)||Y - Theta X||_F^2 + alpha tr(Theta^T L Theta) in
/// closed form. With L = Q diag(lambda) Q^T and XX^T/n = P diag(mu) P^T,
/// the stationarity condition 2 alpha L Theta + Theta XX^T/n = YX^T/n
/// diagonalizes to entrywise divisions by 2 alpha lambda_i + mu_j. A
/// divisor at or below 1e-12 (2 alpha lambda_max + mu_max) raises
/// numerical_error naming the offending index pair.
EstimateResult solve_laplacian_regularized(const Matrix& Y, const Matrix& X,
                                           const LaplacianSpectrum& s,
                                           double alpha);

/// The L = I_m specialization: Theta = (YX^T/n)(XX^T/n + 2 alpha I_k)^{-1},
/// a single k x k solve realized through the spectrum of XX^T/n.
EstimateResult solve_ridge(const Matrix& Y, const Matrix& X, double alpha);

/// (1/2n)||Y - Theta X||_F^2 + alpha tr(Theta^T L Theta).
double objective(const Matrix& Theta, const Matrix& Y, const Matrix& X,
                 const LaplacianSpectrum& s, double alpha);

/// Ridge objective: (1/2n)||Y - Theta X||_F^2 + alpha ||Theta||_F^2.
double objective(const Matrix& Theta, const Matrix& Y, const Matrix& X,
                 double alpha);

/// Gradient of the unregularized loss: (1/n)(Theta X - Y) X^T.
Matrix gradient_loss(const Matrix& Theta, const Matrix& Y, const Matrix& X);

/// Second-order term of the loss expansion around any base point:
/// (1/2n)||Delta X||_F^2. Equals loss(base + Delta) - loss(base)
/// - <gradient_loss(base), Delta> identically.
double taylor_remainder(const Matrix& Delta, const Matrix& X);

/// Independent verification oracle: gradient descent with Armijo
/// backtracking on the full objective, run until the full-gradient norm
/// drops to tol. Deliberately ignorant of the spectral solve path.
EstimateResult oracle_gradient_descent(const Matrix& Y, const Matrix& X,
                                       const LaplacianSpectrum& s, double alpha,
                                       double tol, int max_iter);

}  // namespace lapreg
