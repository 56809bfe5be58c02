#include "lapreg/synth.hpp"

#include <cmath>
#include <filesystem>

#include "lapreg/io.hpp"
#include "lapreg/rng.hpp"

namespace lapreg {

Matrix sample_design_matrix(const LaplacianSpectrum& s, Index k,
                            std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("sample_design_matrix: k >= 1");
  const Index m = s.size();
  if (!s.has_positive_fiedler() || s.zero_count != 1)
    throw std::invalid_argument(
        "sample_design_matrix: spectrum must come from a connected graph "
        "(exactly one zero eigenvalue)");

  // Factor of pinv(L): columns 2..m of Q scaled by lambda^{-1/2}.
  Matrix factor(m, m - 1);
  for (Index i = 1; i < m; ++i)
    factor.col(i - 1) = s.eigenvectors.col(i) / std::sqrt(s.eigenvalues[i]);

  Rng rng(seed);
  Matrix z(m - 1, k);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < m - 1; ++i) z(i, j) = rng.gaussian();
  return factor * z;
}

Matrix sample_coefficients(const Matrix& Sigma, Index n, std::uint64_t seed) {
  const Index k = Sigma.rows();
  if (k < 1 || Sigma.cols() != k)
    throw std::invalid_argument("sample_coefficients: Sigma must be square, k >= 1");
  if (n < k)
    throw std::invalid_argument("sample_coefficients: n >= k required");
  if ((Sigma - Sigma.transpose()).norm() >
      1e-12 * std::max(1.0, Sigma.norm()) * static_cast<double>(k))
    throw std::invalid_argument("sample_coefficients: Sigma must be symmetric");
  Eigen::LLT<Matrix> chol(Sigma);
  if (chol.info() != Eigen::Success)
    throw std::invalid_argument("sample_coefficients: Sigma is not positive definite");
  const Matrix root = chol.matrixL();

  Rng rng(seed);
  Matrix z(k, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < k; ++i) z(i, j) = rng.gaussian();
  return root * z;
}

Observations synthesize_observations(const Matrix& theta_star, const Matrix& X,
                                     double sigma, std::uint64_t seed) {
  if (theta_star.cols() != X.rows())
    throw std::invalid_argument("synthesize_observations: inner dimensions differ");
  if (!(sigma >= 0.0))
    throw std::invalid_argument("synthesize_observations: sigma >= 0 required");
  const Index m = theta_star.rows();
  const Index n = X.cols();

  Rng rng(seed);
  Matrix noise(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) noise(i, j) = rng.gaussian(sigma);
  // two explicit steps so the reconstruction identity is reproducible
  // bit-for-bit by re-evaluating theta_star * X and adding the noise
  Matrix Y = theta_star * X;
  Y += noise;
  return Observations{std::move(Y), std::move(noise)};
}

ModelInstance make_instance(const LaplacianSpectrum& s, Index k, Index n,
                            double sigma, const Matrix& Sigma,
                            std::uint64_t seed) {
  ModelInstance inst;
  inst.sigma = sigma;
  inst.coeff_covariance = Sigma;
  inst.seed = seed;
  inst.theta_star = sample_design_matrix(s, k, derive_seed(seed, {kSeedDesign}));
  inst.coefficients =
      sample_coefficients(Sigma, n, derive_seed(seed, {kSeedCoefficients}));
  auto obs = synthesize_observations(inst.theta_star, inst.coefficients, sigma,
                                     derive_seed(seed, {kSeedNoise}));
  inst.observations = std::move(obs.Y);
  inst.noise = std::move(obs.noise);
  return inst;
}

void dump_instance(const std::string& dir, const ModelInstance& inst,
                   double bandwidth, double threshold) {
  ensure_writable_dir(dir);
  const auto at = [&dir](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };
  write_matrix_csv(at("theta_star.csv"), inst.theta_star);
  write_matrix_csv(at("coefficients.csv"), inst.coefficients);
  write_matrix_csv(at("noise.csv"), inst.noise);
  write_matrix_csv(at("observations.csv"), inst.observations);
  write_manifest(at("manifest.txt"),
                 {{"m", std::to_string(inst.m())},
                  {"k", std::to_string(inst.k())},
                  {"n", std::to_string(inst.n())},
                  {"sigma", fmt17(inst.sigma)},
                  {"bandwidth", fmt17(bandwidth)},
                  {"threshold", fmt17(threshold)},
                  {"seed", std::to_string(inst.seed)}});
}

}  // namespace lapreg
