#include "lapreg/solver.hpp"

#include <cmath>

#include "doctest.h"
#include "lapreg/rng.hpp"
#include "lapreg/synth.hpp"

using namespace lapreg;

namespace {

struct Problem {
  LaplacianSpectrum spectrum;
  ModelInstance instance;
};

Problem random_problem(Index m, Index k, Index n, double sigma,
                       std::uint64_t seed) {
  Problem p;
  p.spectrum = laplacian(
      generate_geometric_graph(m, 0.5, 0.0, derive_seed(seed, {1})));
  p.instance = make_instance(p.spectrum, k, n, sigma, Matrix::Identity(k, k),
                             derive_seed(seed, {2}));
  return p;
}

double loss_only(const Matrix& Theta, const Matrix& Y, const Matrix& X) {
  return (Y - Theta * X).squaredNorm() / (2.0 * static_cast<double>(X.cols()));
}

// Central finite differences of the unregularized loss.
Matrix fd_gradient(const Matrix& Theta, const Matrix& Y, const Matrix& X,
                   double h) {
  Matrix g(Theta.rows(), Theta.cols());
  for (Index i = 0; i < Theta.rows(); ++i) {
    for (Index j = 0; j < Theta.cols(); ++j) {
      Matrix up = Theta, down = Theta;
      up(i, j) += h;
      down(i, j) -= h;
      g(i, j) = (loss_only(up, Y, X) - loss_only(down, Y, X)) / (2.0 * h);
    }
  }
  return g;
}

double rel_diff(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(a.norm(), std::max(b.norm(), 1e-30));
}

}  // namespace

TEST_CASE("alpha = 0 with full-rank X recovers the least-squares fit") {
  const Problem p = random_problem(6, 3, 30, 0.5, 100);
  const auto& Y = p.instance.observations;
  const auto& X = p.instance.coefficients;
  const auto est = solve_laplacian_regularized(Y, X, p.spectrum, 0.0);

  const Matrix gram = X * X.transpose();
  const Matrix ls = gram.ldlt().solve(X * Y.transpose()).transpose();
  CHECK(rel_diff(est.theta_hat, ls) <= 1e-10);
  CHECK(gradient_loss(est.theta_hat, Y, X).norm() <= 1e-10);
}

TEST_CASE("an empty graph makes every alpha behave like alpha = 0") {
  const Problem p = random_problem(5, 2, 25, 0.3, 101);
  Graph empty;
  empty.coords = Matrix::Zero(5, 2);
  empty.weights = Matrix::Zero(5, 5);
  const LaplacianSpectrum zero_spectrum = laplacian(empty);
  const auto& Y = p.instance.observations;
  const auto& X = p.instance.coefficients;

  const auto regularized = solve_laplacian_regularized(Y, X, zero_spectrum, 3.5);
  const auto unregularized = solve_laplacian_regularized(Y, X, zero_spectrum, 0.0);
  CHECK(rel_diff(regularized.theta_hat, unregularized.theta_hat) <= 1e-12);
}

TEST_CASE("closed form agrees with the gradient-descent oracle") {
  const Problem p = random_problem(6, 2, 40, 1.0, 102);
  const auto& Y = p.instance.observations;
  const auto& X = p.instance.coefficients;
  const double alpha = 0.1;

  const auto spectral = solve_laplacian_regularized(Y, X, p.spectrum, alpha);
  const double tol = 1e-10 * (1.0 + (Y * X.transpose()).norm() /
                                        static_cast<double>(X.cols()));
  const auto oracle =
      oracle_gradient_descent(Y, X, p.spectrum, alpha, tol, 200000);
  CHECK(rel_diff(spectral.theta_hat, oracle.theta_hat) <= 1e-6);
}

TEST_CASE("ridge equals the laplacian solve with an identity matrix") {
  const Problem p = random_problem(7, 3, 35, 0.8, 103);
  const auto& Y = p.instance.observations;
  const auto& X = p.instance.coefficients;
  const LaplacianSpectrum identity = spectrum_of(Matrix::Identity(7, 7));

  for (double alpha : {0.0, 0.05, 1.0, 20.0}) {
    const auto ridge = solve_ridge(Y, X, alpha);
    const auto lap = solve_laplacian_regularized(Y, X, identity, alpha);
    CHECK(rel_diff(ridge.theta_hat, lap.theta_hat) <= 1e-10);
  }
}

TEST_CASE("scalar ridge matches the analytic solution") {
  Rng rng(7);
  Matrix X(1, 10), Y(1, 10);
  for (Index j = 0; j < 10; ++j) {
    X(0, j) = rng.gaussian();
    Y(0, j) = rng.gaussian();
  }
  const double alpha = 0.7;
  const double n = 10.0;
  const double analytic =
      (Y.cwiseProduct(X).sum() / n) / (X.squaredNorm() / n + 2.0 * alpha);
  const auto est = solve_ridge(Y, X, alpha);
  CHECK(est.theta_hat(0, 0) == doctest::Approx(analytic).epsilon(1e-12));

  // and the oracle converges to the same point via L = I_1
  const LaplacianSpectrum one = spectrum_of(Matrix::Identity(1, 1));
  const auto oracle = oracle_gradient_descent(Y, X, one, alpha, 1e-12, 100000);
  CHECK(oracle.theta_hat(0, 0) == doctest::Approx(analytic).epsilon(1e-9));
}

TEST_CASE("objective values on reference points") {
  const Problem p = random_problem(5, 2, 20, 0.0, 104);  // noiseless
  const auto& Y = p.instance.observations;
  const auto& X = p.instance.coefficients;
  const auto& theta_star = p.instance.theta_star;

  CHECK(objective(theta_star, Y, X, p.spectrum, 0.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(objective(theta_star, Y, X, p.spectrum, 0.0) ==
        doctest::Approx(loss_only(theta_star, Y, X)));

  const Problem noisy = random_problem(8, 3, 40, 1.2, 105);
  for (double alpha : {0.01, 0.3, 2.0}) {
    const auto est = solve_laplacian_regularized(noisy.instance.observations,
                                                 noisy.instance.coefficients,
                                                 noisy.spectrum, alpha);
    const double at_truth =
        objective(noisy.instance.theta_star, noisy.instance.observations,
                  noisy.instance.coefficients, noisy.spectrum, alpha);
    CHECK(est.objective_value <= at_truth + 1e-12 * (1.0 + std::abs(at_truth)));
  }
}

TEST_CASE("gradient of the loss at theta_star is the noise term") {
  // with Y = theta_star X + noise, the residual theta_star X - Y is -noise
  const Problem p = random_problem(6, 3, 25, 0.9, 106);
  const auto& inst = p.instance;
  const Matrix expected = -inst.noise * inst.coefficients.transpose() /
                          static_cast<double>(inst.n());
  CHECK(rel_diff(gradient_loss(inst.theta_star, inst.observations,
                               inst.coefficients),
                 expected) <= 1e-12);
}

TEST_CASE("gradient matches central finite differences") {
  Rng rng(2718);
  for (int rep = 0; rep < 5; ++rep) {
    const Problem p = random_problem(
        4, 3, 20, 0.7, derive_seed(107, {static_cast<std::uint64_t>(rep)}));
    Matrix theta(4, 3);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 3; ++j) theta(i, j) = rng.gaussian();
    const Matrix analytic =
        gradient_loss(theta, p.instance.observations, p.instance.coefficients);
    const Matrix numeric = fd_gradient(theta, p.instance.observations,
                                       p.instance.coefficients, 1e-6);
    CHECK(rel_diff(analytic, numeric) <= 1e-5);
  }
}

TEST_CASE("taylor remainder: zero direction, closed form, curvature floor") {
  const Problem p = random_problem(5, 3, 30, 0.6, 108);
  const auto& inst = p.instance;
  const auto& X = inst.coefficients;

  CHECK(taylor_remainder(Matrix::Zero(5, 3), X) == 0.0);

  const double sigma_min =
      Eigen::SelfAdjointEigenSolver<Matrix>(X * X.transpose(),
                                            Eigen::EigenvaluesOnly)
          .eigenvalues()[0];
  Rng rng(31415);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix delta(5, 3);
    for (Index i = 0; i < 5; ++i)
      for (Index j = 0; j < 3; ++j) delta(i, j) = rng.gaussian();

    const double closed = taylor_remainder(delta, X);
    const double direct =
        loss_only(inst.theta_star + delta, inst.observations, X) -
        loss_only(inst.theta_star, inst.observations, X) -
        (gradient_loss(inst.theta_star, inst.observations, X)
             .cwiseProduct(delta))
            .sum();
    CHECK(std::abs(closed - direct) <= 1e-9 * std::max(1.0, std::abs(closed)));
    CHECK(closed >= sigma_min / (2.0 * static_cast<double>(X.cols())) *
                        delta.squaredNorm() -
                    1e-12);
  }
}

TEST_CASE("quadratic expansion of the objective is exact") {
  const Problem p = random_problem(6, 2, 22, 0.4, 109);
  const auto& inst = p.instance;
  Rng rng(999);
  Matrix delta(6, 2);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 2; ++j) delta(i, j) = rng.gaussian();

  const double alpha = 0.25;
  const double lhs = objective(inst.theta_star + delta, inst.observations,
                               inst.coefficients, p.spectrum, alpha);
  const double rhs =
      loss_only(inst.theta_star, inst.observations, inst.coefficients) +
      (gradient_loss(inst.theta_star, inst.observations, inst.coefficients)
           .cwiseProduct(delta))
          .sum() +
      taylor_remainder(delta, inst.coefficients) +
      alpha * laplacian_quadratic_form(p.spectrum, inst.theta_star + delta);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("stationarity residual stays at solver precision") {
  for (std::uint64_t seed : {110u, 111u, 112u}) {
    const Problem p = random_problem(10, 4, 50, 1.5, seed);
    const auto& Y = p.instance.observations;
    const auto& X = p.instance.coefficients;
    const double scale =
        1.0 + (Y * X.transpose()).norm() / static_cast<double>(X.cols());
    for (double alpha : {0.0, 0.01, 1.0}) {
      CHECK(solve_laplacian_regularized(Y, X, p.spectrum, alpha)
                .stationarity_residual <= 1e-8 * scale);
      CHECK(solve_ridge(Y, X, alpha).stationarity_residual <= 1e-8 * scale);
    }
  }
}

TEST_CASE("regularizer value is nonincreasing along the alpha path") {
  const Problem p = random_problem(9, 3, 45, 1.0, 113);
  const auto& Y = p.instance.observations;
  const auto& X = p.instance.coefficients;
  double previous = std::numeric_limits<double>::infinity();
  for (double alpha : {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    const auto est = solve_laplacian_regularized(Y, X, p.spectrum, alpha);
    const double penalty = laplacian_quadratic_form(p.spectrum, est.theta_hat);
    CHECK(penalty <= previous * (1.0 + 1e-12));
    previous = penalty;
  }
}

TEST_CASE("rank-deficient unregularized systems are reported as singular") {
  const Problem p = random_problem(4, 2, 12, 0.2, 114);
  Matrix X = p.instance.coefficients;
  X.row(1) = X.row(0);  // Gram matrix becomes singular
  const Matrix& Y = p.instance.observations;
  CHECK_THROWS_AS(solve_laplacian_regularized(Y, X, p.spectrum, 0.0),
                  numerical_error);
  CHECK_THROWS_AS(solve_ridge(Y, X, 0.0), numerical_error);
}

TEST_CASE("oracle reports non-convergence with the final gradient norm") {
  const Problem p = random_problem(5, 2, 20, 0.5, 115);
  CHECK_THROWS_AS(
      oracle_gradient_descent(p.instance.observations, p.instance.coefficients,
                              p.spectrum, 0.1, 1e-14, 2),
      numerical_error);
}

TEST_CASE("solvers validate arguments") {
  const Problem p = random_problem(4, 2, 10, 0.1, 116);
  const auto& Y = p.instance.observations;
  const auto& X = p.instance.coefficients;
  CHECK_THROWS_AS(solve_laplacian_regularized(Y, X, p.spectrum, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_laplacian_regularized(Y.topRows(2), X, p.spectrum, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_ridge(Y, X.leftCols(4), 0.1), std::invalid_argument);
}
