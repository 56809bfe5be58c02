#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "lapreg/types.hpp"

namespace lapreg {

/// Eigenvalues with |lambda| below zero_tol * max(1, lambda_max) are
/// snapped to exactly zero, separating structural nullspace from noise.
inline constexpr double kDefaultZeroTol = 1e-10;

/// Weighted undirected graph on points in the unit square.
/// W is symmetric, nonnegative, zero-diagonal by construction.
struct Graph {
  Matrix coords;  // m x 2, vertex positions
  Matrix weights; // m x m adjacency

  Index vertex_count() const { return weights.rows(); }
};

/// Combinatorial Laplacian L = D - W with its full ascending
/// eigendecomposition L = Q diag(lambda) Q^T. Columns of Q are
/// orthonormal and sign-canonicalized (largest-magnitude entry positive),
/// and eigenvalues below the zero threshold are exactly 0.
struct LaplacianSpectrum {
  Matrix laplacian;
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // column i pairs with eigenvalues[i]
  double zero_tol = kDefaultZeroTol;
  Index zero_count = 0; // eigenvalues snapped to zero

  Index size() const { return laplacian.rows(); }

  /// True when the second-smallest eigenvalue is strictly positive,
  /// i.e. the nullspace is at most the constant direction. Holds for
  /// Laplacians of connected graphs and for positive definite overrides
  /// such as the identity.
  bool has_positive_fiedler() const {
    return size() >= 2 && eigenvalues[1] > 0.0;
  }
};

/// Random geometric graph: m points uniform in [0,1]^2, Gaussian RBF
/// edge weights exp(-d^2 / bandwidth^2), kept only when above threshold.
/// threshold = 0 yields a complete weighted graph.
Graph generate_geometric_graph(Index m, double bandwidth, double threshold,
                               std::uint64_t seed);

/// Spectrum of an arbitrary symmetric positive semidefinite matrix.
/// Used directly for identity overrides; graphs go through laplacian().
LaplacianSpectrum spectrum_of(const Matrix& psd_matrix,
                              double zero_tol = kDefaultZeroTol);

/// L = D - W of the graph together with its eigendecomposition.
LaplacianSpectrum laplacian(const Graph& g, double zero_tol = kDefaultZeroTol);

/// Second-smallest eigenvalue (algebraic connectivity).
double fiedler_value(const LaplacianSpectrum& s);

/// tr(F^T L F): weighted sum of squared signal differences across edges.
double laplacian_quadratic_form(const LaplacianSpectrum& s, const Matrix& F);

/// Single connected component under edges {W_ij > 0}? Breadth-first.
bool is_connected(const Graph& g);

/// Plain-text edge list: "m <count>", then "v <i> <x> <y>" per vertex,
/// then "e <i> <j> <w>" per nonzero upper-triangular weight, 17
/// significant digits.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::string& path, const Graph& g);
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::string& path);

}  // namespace lapreg
