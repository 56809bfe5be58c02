#pragma once

#include <cstdint>

#include "lapreg/graph.hpp"
#include "lapreg/types.hpp"

namespace lapreg {

/// One synthetic realization of Y = Theta* X + Omega with full draw
/// provenance. Immutable after construction; Y reconstructs exactly.
struct ModelInstance {
  Matrix theta_star;  // m x k ground truth
  Matrix coefficients;  // X, k x n
  Matrix noise;         // Omega, m x n
  Matrix observations;  // Y, m x n
  double sigma = 0.0;
  Matrix coeff_covariance;  // Sigma, k x k
  std::uint64_t seed = 0;   // master seed of this instance

  Index m() const { return theta_star.rows(); }
  Index k() const { return theta_star.cols(); }
  Index n() const { return coefficients.cols(); }
};

/// Draws an m x k matrix whose columns are i.i.d. samples of the
/// degenerate Gaussian with covariance pinv(L): column = sum over the
/// nonzero eigenpairs of Q_i * z_i / sqrt(lambda_i). Every column is
/// orthogonal to the constant direction. Requires a spectrum whose
/// nullspace is exactly the constant vector (connected graph).
Matrix sample_design_matrix(const LaplacianSpectrum& s, Index k,
                            std::uint64_t seed);

/// k x n matrix with columns i.i.d. N(0, Sigma) via the Cholesky factor.
Matrix sample_coefficients(const Matrix& Sigma, Index n, std::uint64_t seed);

struct Observations {
  Matrix Y;
  Matrix noise;
};

/// Y = theta_star * X + Omega with Omega entries i.i.d. N(0, sigma^2).
Observations synthesize_observations(const Matrix& theta_star, const Matrix& X,
                                     double sigma, std::uint64_t seed);

// Fixed-offset sub-seed tags: regenerating one block never perturbs another.
inline constexpr std::uint64_t kSeedDesign = 1;
inline constexpr std::uint64_t kSeedCoefficients = 2;
inline constexpr std::uint64_t kSeedNoise = 3;

/// Full instance from one master seed, sub-seeded per block.
ModelInstance make_instance(const LaplacianSpectrum& s, Index k, Index n,
                            double sigma, const Matrix& Sigma,
                            std::uint64_t seed);

/// Dumps every matrix of the instance as dense CSV plus a manifest of the
/// generating parameters into dir.
void dump_instance(const std::string& dir, const ModelInstance& inst,
                   double bandwidth, double threshold);

}  // namespace lapreg
