#include "lapreg/solver.hpp"

#include <cmath>
#include <string>

namespace lapreg {

namespace {

void check_model_dims(const Matrix& Y, const Matrix& X) {
  if (Y.cols() != X.cols())
    throw std::invalid_argument("Y and X must share the sample dimension n");
  if (X.cols() < 1) throw std::invalid_argument("needs at least one sample");
}

// Eigenpairs of the sample Gram matrix XX^T/n.
struct GramSpectrum {
  Matrix basis;       // P
  Vector eigenvalues; // mu, ascending
};

GramSpectrum gram_spectrum(const Matrix& X) {
  const double n = static_cast<double>(X.cols());
  Eigen::SelfAdjointEigenSolver<Matrix> solver((X * X.transpose()) / n);
  if (solver.info() != Eigen::Success)
    throw numerical_error("eigensolver failed on XX^T/n");
  return GramSpectrum{solver.eigenvectors(), solver.eigenvalues()};
}

double divisor_guard(double alpha, double lambda_max, double mu_max) {
  return 1e-12 * (2.0 * alpha * lambda_max + mu_max);
}

[[noreturn]] void throw_singular(double alpha, Index i, Index j,
                                 double divisor) {
  throw numerical_error("singular system: divisor 2*alpha*lambda[" +
                        std::to_string(i) + "] + mu[" + std::to_string(j) +
                        "] = " + std::to_string(divisor) + " at alpha = " +
                        std::to_string(alpha));
}

}  // namespace

const char* to_string(RegularizerKind kind) {
  return kind == RegularizerKind::laplacian ? "laplacian" : "ridge";
}

EstimateResult solve_laplacian_regularized(const Matrix& Y, const Matrix& X,
                                           const LaplacianSpectrum& s,
                                           double alpha) {
  check_model_dims(Y, X);
  if (Y.rows() != s.size())
    throw std::invalid_argument("Y row count must match vertex count");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha >= 0 required");

  const double n = static_cast<double>(X.cols());
  const Matrix S = (X * X.transpose()) / n;
  const Matrix C = (Y * X.transpose()) / n;
  const GramSpectrum gram = gram_spectrum(X);

  const Index m = s.size();
  const Index k = X.rows();
  const double lambda_max = s.eigenvalues[m - 1];
  const double guard =
      divisor_guard(alpha, lambda_max, gram.eigenvalues[k - 1]);

  Matrix U = s.eigenvectors.transpose() * C * gram.basis;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < k; ++j) {
      const double divisor = 2.0 * alpha * s.eigenvalues[i] + gram.eigenvalues[j];
      if (divisor <= guard) throw_singular(alpha, i, j, divisor);
      U(i, j) /= divisor;
    }
  }

  EstimateResult result;
  result.theta_hat = s.eigenvectors * U * gram.basis.transpose();
  result.config = EstimatorConfig{alpha, RegularizerKind::laplacian};
  result.stationarity_residual =
      (2.0 * alpha * (s.laplacian * result.theta_hat) + result.theta_hat * S - C)
          .norm();
  result.objective_value = objective(result.theta_hat, Y, X, s, alpha);
  return result;
}

EstimateResult solve_ridge(const Matrix& Y, const Matrix& X, double alpha) {
  check_model_dims(Y, X);
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha >= 0 required");

  const double n = static_cast<double>(X.cols());
  const Matrix S = (X * X.transpose()) / n;
  const Matrix C = (Y * X.transpose()) / n;
  const GramSpectrum gram = gram_spectrum(X);

  const Index k = X.rows();
  const double guard = divisor_guard(alpha, 1.0, gram.eigenvalues[k - 1]);

  Matrix U = C * gram.basis;
  for (Index j = 0; j < k; ++j) {
    const double divisor = 2.0 * alpha + gram.eigenvalues[j];
    if (divisor <= guard) throw_singular(alpha, 0, j, divisor);
    U.col(j) /= divisor;
  }

  EstimateResult result;
  result.theta_hat = U * gram.basis.transpose();
  result.config = EstimatorConfig{alpha, RegularizerKind::ridge};
  result.stationarity_residual =
      (2.0 * alpha * result.theta_hat + result.theta_hat * S - C).norm();
  result.objective_value = objective(result.theta_hat, Y, X, alpha);
  return result;
}

double objective(const Matrix& Theta, const Matrix& Y, const Matrix& X,
                 const LaplacianSpectrum& s, double alpha) {
  check_model_dims(Y, X);
  const double n = static_cast<double>(X.cols());
  return (Y - Theta * X).squaredNorm() / (2.0 * n) +
         alpha * laplacian_quadratic_form(s, Theta);
}

double objective(const Matrix& Theta, const Matrix& Y, const Matrix& X,
                 double alpha) {
  check_model_dims(Y, X);
  const double n = static_cast<double>(X.cols());
  return (Y - Theta * X).squaredNorm() / (2.0 * n) + alpha * Theta.squaredNorm();
}

Matrix gradient_loss(const Matrix& Theta, const Matrix& Y, const Matrix& X) {
  check_model_dims(Y, X);
  const double n = static_cast<double>(X.cols());
  return (Theta * X - Y) * X.transpose() / n;
}

double taylor_remainder(const Matrix& Delta, const Matrix& X) {
  if (Delta.cols() != X.rows())
    throw std::invalid_argument("Delta and X inner dimensions differ");
  const double n = static_cast<double>(X.cols());
  return (Delta * X).squaredNorm() / (2.0 * n);
}

EstimateResult oracle_gradient_descent(const Matrix& Y, const Matrix& X,
                                       const LaplacianSpectrum& s, double alpha,
                                       double tol, int max_iter) {
  check_model_dims(Y, X);
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha >= 0 required");
  if (!(tol > 0.0)) throw std::invalid_argument("tol > 0 required");

  const double n = static_cast<double>(X.cols());
  const Matrix S = (X * X.transpose()) / n;
  const Matrix C = (Y * X.transpose()) / n;

  const double gram_max =
      Eigen::SelfAdjointEigenSolver<Matrix>(S, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .maxCoeff();
  const double lambda_max = s.eigenvalues[s.size() - 1];
  const double initial_step = 1.0 / (gram_max + 2.0 * alpha * lambda_max);
  constexpr double kArmijo = 1e-4;
  constexpr double kBacktrack = 0.5;

  Matrix theta = Matrix::Zero(Y.rows(), X.rows());
  double grad_norm = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Matrix grad = theta * S - C + 2.0 * alpha * (s.laplacian * theta);
    grad_norm = grad.norm();
    if (grad_norm <= tol) {
      EstimateResult result;
      result.theta_hat = std::move(theta);
      result.config = EstimatorConfig{alpha, RegularizerKind::laplacian};
      result.stationarity_residual = grad_norm;
      result.objective_value = objective(result.theta_hat, Y, X, s, alpha);
      return result;
    }
    // The objective is an exact quadratic, so the Armijo decrease along
    // -grad is f(theta) - f(theta - t g) = t |g|^2 - (t^2/2) <g, H g>;
    // evaluating it in closed form keeps the test meaningful even when
    // the two objective values agree to machine precision.
    const Matrix hessian_grad = grad * S + 2.0 * alpha * (s.laplacian * grad);
    const double curvature = (grad.cwiseProduct(hessian_grad)).sum();
    const double g2 = grad_norm * grad_norm;
    double step = initial_step;
    while (0.5 * step * curvature > (1.0 - kArmijo) * g2) {
      step *= kBacktrack;
      if (step < 1e-30)
        throw numerical_error("oracle line search stalled, gradient norm " +
                              std::to_string(grad_norm));
    }
    theta -= step * grad;
  }
  throw numerical_error("oracle did not converge in " +
                        std::to_string(max_iter) +
                        " iterations, gradient norm " +
                        std::to_string(grad_norm));
}

}  // namespace lapreg
