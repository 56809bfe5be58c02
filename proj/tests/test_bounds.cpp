#include "lapreg/bounds.hpp"

#include <cmath>

#include "doctest.h"
#include "lapreg/rng.hpp"

using namespace lapreg;

namespace {

LaplacianSpectrum connected_spectrum(Index m, std::uint64_t seed) {
  return laplacian(generate_geometric_graph(m, 0.5, 0.0, seed));
}

Matrix random_matrix(Index rows, Index cols, Rng& rng) {
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = rng.gaussian();
  return a;
}

}  // namespace

TEST_CASE("laplacian bound arithmetic on a hand-built case") {
  // half-weight edge: eigenvalues {0, 1}
  Graph g;
  g.coords = Matrix::Zero(2, 2);
  g.weights = Matrix::Zero(2, 2);
  g.weights(0, 1) = g.weights(1, 0) = 0.5;
  const LaplacianSpectrum s = laplacian(g);
  CHECK(fiedler_value(s) == doctest::Approx(1.0).epsilon(1e-12));

  const Matrix constant = Matrix::Constant(2, 1, 3.0);  // in the nullspace
  const ErrorBound b = laplacian_error_bound(1.0, 1, s, constant, 1.0);
  CHECK(b.misalignment == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ridge bound arithmetic") {
  const Matrix zero = Matrix::Zero(4, 2);
  CHECK(ridge_error_bound(1.0, 1, zero, 1.0).value == doctest::Approx(0.5));
  CHECK(ridge_error_bound(0.0, 3, zero, 0.7).value == 0.0);

  Rng rng(5);
  const Matrix theta = random_matrix(4, 2, rng);
  const ErrorBound b = ridge_error_bound(0.3, 2, theta, 0.25);
  const double expected =
      0.3 * (std::sqrt(2.0) + 2.0 * theta.norm()) / (0.25 + 0.3);
  CHECK(b.value == doctest::Approx(expected).epsilon(1e-14));
  CHECK(b.lambda2 == 1.0);
}

TEST_CASE("laplacian bound with the identity matches the ridge bound") {
  Rng rng(17);
  const LaplacianSpectrum identity = spectrum_of(Matrix::Identity(8, 8));
  for (int rep = 0; rep < 25; ++rep) {
    const Matrix theta = random_matrix(8, 3, rng);
    const double alpha = std::pow(10.0, -4.0 + 6.0 * rng.uniform());
    const double kappa = 0.01 + rng.uniform();
    const int r = 1 + static_cast<int>(rng.uniform() * 5.0);
    const double lap = laplacian_error_bound(alpha, r, identity, theta, kappa).value;
    const double ridge = ridge_error_bound(alpha, r, theta, kappa).value;
    CHECK(std::abs(lap - ridge) <= 1e-12 * std::max(1.0, std::abs(ridge)));
  }
}

TEST_CASE("bound refuses disconnected graphs") {
  Graph g;
  g.coords = Matrix::Zero(4, 2);
  g.weights = Matrix::Zero(4, 4);
  const LaplacianSpectrum s = laplacian(g);
  CHECK_THROWS_AS(laplacian_error_bound(0.1, 1, s, Matrix::Zero(4, 2), 1.0),
                  std::invalid_argument);
}

TEST_CASE("recommended alpha evaluates the rate formula") {
  // independent arrangement of the same quantity
  const double expected =
      (8.0 / (100.0 * 500.0)) * std::sqrt(5.0 * 2.0 * 110.0);
  const double got = recommended_alpha(std::sqrt(5.0), 2.0, 100, 10, 500);
  CHECK(got == doctest::Approx(expected).epsilon(1e-13));
  CHECK(got == doctest::Approx(5.3066e-3).epsilon(1e-4));

  CHECK(recommended_alpha(0.0, 2.0, 100, 10, 500) == 0.0);
  CHECK(recommended_alpha(1.0, 2.0, 50, 5, 800) ==
        doctest::Approx(0.5 * recommended_alpha(1.0, 2.0, 50, 5, 400))
            .epsilon(1e-14));
  CHECK_THROWS_AS(recommended_alpha(1.0, 1.9, 10, 2, 20),
                  std::invalid_argument);
}

TEST_CASE("strong-convexity constant from the coefficient covariance") {
  CHECK(kappa_from_covariance(Matrix::Identity(10, 10)) ==
        doctest::Approx(1.0 / 18.0).epsilon(1e-15));
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 2.0;
  diag(1, 1) = 3.0;
  CHECK(kappa_from_covariance(diag) == doctest::Approx(1.0 / 9.0));
  CHECK(kappa_from_covariance(4.5 * Matrix::Identity(3, 3)) ==
        doctest::Approx(0.25).epsilon(1e-14));

  Matrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(kappa_from_covariance(indefinite), std::invalid_argument);
}

TEST_CASE("diagnostics on a constant-column error matrix") {
  const LaplacianSpectrum s = connected_spectrum(10, 3);
  const Matrix delta = Matrix::Constant(10, 1, 1.0);
  Rng rng(4);
  const Matrix omega = random_matrix(10, 30, rng);
  const Matrix X = random_matrix(1, 30, rng);

  const DiagnosticsReport rep = diagnostics(delta, s, omega, X, 1.0, 2.0);
  CHECK(std::abs(rep.delta_quadratic_form) <= 1e-9);
  CHECK(rep.column_mean_mass_ratio == doctest::Approx(1.0).epsilon(1e-12));
  // exact lower bound degenerates to ~0: both sides vanish
  CHECK(std::abs(rep.fiedler_bound_exact) <= 1e-9);
  CHECK(rep.fiedler_bound_dropped ==
        doctest::Approx(s.eigenvalues[1] * 10.0).epsilon(1e-12));
}

TEST_CASE("mean-centered columns satisfy the dropped-term bound") {
  const LaplacianSpectrum s = connected_spectrum(12, 6);
  Rng rng(8);
  Matrix delta = random_matrix(12, 4, rng);
  delta.rowwise() -= delta.colwise().mean();  // center every column
  const Matrix omega = random_matrix(12, 25, rng);
  const Matrix X = random_matrix(4, 25, rng);

  const DiagnosticsReport rep = diagnostics(delta, s, omega, X, 1.0, 2.0);
  CHECK(rep.column_mean_mass_ratio <= 1e-20);
  const double slack = 1e-9 * (1.0 + std::abs(rep.delta_quadratic_form));
  CHECK(rep.delta_quadratic_form >= rep.fiedler_bound_dropped - slack);
  CHECK(std::abs(rep.fiedler_bound_exact - rep.fiedler_bound_dropped) <=
        1e-9 * (1.0 + rep.fiedler_bound_dropped));
}

TEST_CASE("exact curvature lower bound holds for arbitrary error matrices") {
  Rng rng(1234);
  for (int rep = 0; rep < 100; ++rep) {
    const Index m = 2 + static_cast<Index>(rng.uniform() * 38.0);
    const Index k = 1 + static_cast<Index>(rng.uniform() * 5.0);
    const LaplacianSpectrum s =
        connected_spectrum(m, derive_seed(777, {static_cast<std::uint64_t>(rep)}));
    const Matrix delta = random_matrix(m, k, rng) * 10.0;
    const Matrix omega = random_matrix(m, 2 * k + 3, rng);
    const Matrix X = random_matrix(k, 2 * k + 3, rng);

    const DiagnosticsReport d = diagnostics(delta, s, omega, X, 1.0, 2.0);
    const double slack = 1e-9 * (1.0 + std::abs(d.delta_quadratic_form));
    CHECK(d.delta_quadratic_form >= d.fiedler_bound_exact - slack);
  }
}

TEST_CASE("curvature equals the eigenvalue-weighted spectral mass") {
  Rng rng(55);
  const LaplacianSpectrum s = connected_spectrum(20, 66);
  const Matrix delta = random_matrix(20, 5, rng);
  const double direct = (delta.cwiseProduct(s.laplacian * delta)).sum();
  const Matrix u = s.eigenvectors.transpose() * delta;
  double spectral = 0.0;
  for (Index i = 0; i < 20; ++i)
    spectral += s.eigenvalues[i] * u.row(i).squaredNorm();
  CHECK(std::abs(direct - spectral) <= 1e-9 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("mean-mass ratio of i.i.d. Gaussian errors concentrates at 1/m") {
  const LaplacianSpectrum s = connected_spectrum(100, 12);
  Rng rng(2025);
  const Matrix omega = random_matrix(100, 20, rng);
  const Matrix X = random_matrix(10, 20, rng);
  double total = 0.0;
  const int draws = 1000;
  for (int d = 0; d < draws; ++d) {
    const Matrix delta = random_matrix(100, 10, rng);
    total += diagnostics(delta, s, omega, X, 1.0, 2.0).column_mean_mass_ratio;
  }
  CHECK(total / draws == doctest::Approx(0.01).epsilon(0.1));
}

TEST_CASE("bound decreases in kappa and in the Fiedler value") {
  const Matrix zero = Matrix::Zero(6, 2);  // fixed numerator sqrt(r)
  const LaplacianSpectrum narrow = spectrum_of(Matrix::Identity(6, 6));
  const LaplacianSpectrum wide = spectrum_of(2.0 * Matrix::Identity(6, 6));
  const double alpha = 0.8;
  CHECK(laplacian_error_bound(alpha, 2, wide, zero, 0.5).value <
        laplacian_error_bound(alpha, 2, narrow, zero, 0.5).value);
  CHECK(laplacian_error_bound(alpha, 2, narrow, zero, 0.9).value <
        laplacian_error_bound(alpha, 2, narrow, zero, 0.5).value);
}

TEST_CASE("misalignment grows when the graph drifts from the truth") {
  const Index m = 30;
  const int r = 5;
  const LaplacianSpectrum truth = connected_spectrum(m, 91);
  // ground truth spanned by the smoothest nonconstant eigenvectors
  const Matrix theta = truth.eigenvectors.middleCols(1, r);
  const double aligned = (truth.laplacian * theta).norm();

  double perturbed_total = 0.0;
  const int draws = 40;
  for (int d = 0; d < draws; ++d) {
    const LaplacianSpectrum other =
        connected_spectrum(m, derive_seed(92, {static_cast<std::uint64_t>(d)}));
    const Matrix rescaled =
        other.laplacian * (truth.laplacian.norm() / other.laplacian.norm());
    perturbed_total += (rescaled * theta).norm();
  }
  CHECK(perturbed_total / draws > aligned);
}

TEST_CASE("gram spectrum event holds nearly always at n >= 9k") {
  const Index k = 10, n = 500;
  int hits = 0;
  const int draws = 200;
  for (int d = 0; d < draws; ++d) {
    const Matrix X = sample_coefficients(
        Matrix::Identity(k, k), n, derive_seed(4040, {static_cast<std::uint64_t>(d)}));
    const Vector eigs = Eigen::SelfAdjointEigenSolver<Matrix>(
                            (X * X.transpose()) / static_cast<double>(n),
                            Eigen::EigenvaluesOnly)
                            .eigenvalues();
    hits += (eigs[0] >= 1.0 / 9.0 && eigs[k - 1] <= 9.0);
  }
  CHECK(hits >= static_cast<int>(0.99 * draws));
}

TEST_CASE("noiseless nearly-unregularized estimation recovers the truth") {
  const LaplacianSpectrum s = connected_spectrum(15, 21);
  const ModelInstance inst =
      make_instance(s, 4, 60, 0.0, Matrix::Identity(4, 4), 212);
  const auto est = solve_laplacian_regularized(inst.observations,
                                               inst.coefficients, s, 1e-12);
  const ErrorBound bound = laplacian_error_bound(
      1e-12, 4, s, inst.theta_star, kappa_from_covariance(inst.coeff_covariance));
  const TrialReport report = empirical_vs_bound(inst, est, s, bound, 2.0);
  CHECK(report.empirical_error <= 1e-6);
}

TEST_CASE("trial reports are deterministic") {
  const LaplacianSpectrum s = connected_spectrum(20, 33);
  const ModelInstance inst =
      make_instance(s, 5, 80, 1.0, Matrix::Identity(5, 5), 313);
  const auto est = solve_laplacian_regularized(inst.observations,
                                               inst.coefficients, s, 0.05);
  const ErrorBound bound = laplacian_error_bound(0.05, 5, s, inst.theta_star,
                                                 kappa_from_covariance(
                                                     inst.coeff_covariance));
  const TrialReport a = empirical_vs_bound(inst, est, s, bound, 2.0);
  const TrialReport b = empirical_vs_bound(inst, est, s, bound, 2.0);
  CHECK(a.empirical_error == b.empirical_error);
  CHECK(a.bound.value == b.bound.value);
  CHECK(a.diagnostics.gradient_sup_norm == b.diagnostics.gradient_sup_norm);
  CHECK(a.empirical_error > 0.0);
  CHECK(a.bound.value > 0.0);
  CHECK(a.error_to_bound_ratio ==
        doctest::Approx(a.empirical_error / a.bound.value));
}
