#include "lapreg/graph.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <vector>

#include "lapreg/io.hpp"
#include "lapreg/rng.hpp"

namespace lapreg {

Graph generate_geometric_graph(Index m, double bandwidth, double threshold,
                               std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("geometric graph needs m >= 1");
  if (!(bandwidth > 0.0))
    throw std::invalid_argument("bandwidth must be positive");
  if (!(threshold >= 0.0 && threshold < 1.0))
    throw std::invalid_argument("threshold must lie in [0, 1)");

  Rng rng(seed);
  Graph g;
  g.coords.resize(m, 2);
  for (Index i = 0; i < m; ++i) {
    g.coords(i, 0) = rng.uniform();
    g.coords(i, 1) = rng.uniform();
  }

  g.weights = Matrix::Zero(m, m);
  const double inv_bw2 = 1.0 / (bandwidth * bandwidth);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      const double d2 = (g.coords.row(i) - g.coords.row(j)).squaredNorm();
      const double w = std::exp(-d2 * inv_bw2);
      if (w > threshold) {
        g.weights(i, j) = w;
        g.weights(j, i) = w;
      }
    }
  }
  return g;
}

LaplacianSpectrum spectrum_of(const Matrix& psd_matrix, double zero_tol) {
  const Index m = psd_matrix.rows();
  if (psd_matrix.cols() != m)
    throw std::invalid_argument("spectrum_of: matrix must be square");
  const double scale = psd_matrix.norm();
  if ((psd_matrix - psd_matrix.transpose()).norm() >
      zero_tol * std::max(1.0, scale) * static_cast<double>(m))
    throw std::invalid_argument("spectrum_of: matrix must be symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(psd_matrix);
  if (solver.info() != Eigen::Success) {
    // the partial decomposition is still populated; report how far it is
    const double residual =
        (psd_matrix - solver.eigenvectors() *
                          solver.eigenvalues().asDiagonal() *
                          solver.eigenvectors().transpose())
            .norm();
    throw numerical_error(
        "symmetric eigensolver failed to converge, reconstruction residual " +
        std::to_string(residual));
  }

  LaplacianSpectrum s;
  s.laplacian = psd_matrix;
  s.eigenvalues = solver.eigenvalues();  // ascending
  s.eigenvectors = solver.eigenvectors();
  s.zero_tol = zero_tol;

  const double lambda_max = s.eigenvalues[m - 1];
  const double snap = zero_tol * std::max(1.0, lambda_max);
  if (s.eigenvalues[0] < -snap)
    throw std::invalid_argument("spectrum_of: matrix is not positive semidefinite");
  s.zero_count = 0;
  for (Index i = 0; i < m; ++i) {
    if (std::abs(s.eigenvalues[i]) < snap) {
      s.eigenvalues[i] = 0.0;
      ++s.zero_count;
    }
  }

  // Canonical sign: largest-magnitude entry of each eigenvector positive.
  for (Index j = 0; j < m; ++j) {
    Index arg = 0;
    s.eigenvectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (s.eigenvectors(arg, j) < 0.0) s.eigenvectors.col(j) *= -1.0;
  }
  return s;
}

LaplacianSpectrum laplacian(const Graph& g, double zero_tol) {
  const Matrix& W = g.weights;
  Matrix L = Matrix(W.rowwise().sum().asDiagonal()) - W;
  return spectrum_of(L, zero_tol);
}

double fiedler_value(const LaplacianSpectrum& s) {
  if (s.size() < 2)
    throw std::invalid_argument("fiedler_value needs at least 2 vertices");
  return s.eigenvalues[1];
}

double laplacian_quadratic_form(const LaplacianSpectrum& s, const Matrix& F) {
  if (F.rows() != s.size())
    throw std::invalid_argument("quadratic form: row count must match vertex count");
  return (F.cwiseProduct(s.laplacian * F)).sum();
}

bool is_connected(const Graph& g) {
  const Index m = g.vertex_count();
  if (m <= 1) return true;
  std::vector<char> seen(static_cast<size_t>(m), 0);
  std::queue<Index> frontier;
  frontier.push(0);
  seen[0] = 1;
  Index visited = 1;
  while (!frontier.empty()) {
    const Index v = frontier.front();
    frontier.pop();
    for (Index u = 0; u < m; ++u) {
      if (!seen[static_cast<size_t>(u)] && g.weights(v, u) > 0.0) {
        seen[static_cast<size_t>(u)] = 1;
        ++visited;
        frontier.push(u);
      }
    }
  }
  return visited == m;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const Index m = g.vertex_count();
  out << "m " << m << "\n";
  for (Index i = 0; i < m; ++i) {
    out << "v " << i << " " << fmt17(g.coords(i, 0)) << " "
        << fmt17(g.coords(i, 1)) << "\n";
  }
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      if (g.weights(i, j) != 0.0) {
        out << "e " << i << " " << j << " " << fmt17(g.weights(i, j)) << "\n";
      }
    }
  }
}

void write_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  write_edge_list(out, g);
  if (!out) throw io_error("failed while writing " + path);
}

Graph read_edge_list(std::istream& in) {
  std::string tag;
  Index m = -1;
  if (!(in >> tag >> m) || tag != "m" || m < 1)
    throw io_error("edge list: expected header 'm <count>'");
  Graph g;
  g.coords = Matrix::Zero(m, 2);
  g.weights = Matrix::Zero(m, m);
  while (in >> tag) {
    if (tag == "v") {
      Index i;
      double x, y;
      if (!(in >> i >> x >> y) || i < 0 || i >= m)
        throw io_error("edge list: bad vertex line");
      g.coords(i, 0) = x;
      g.coords(i, 1) = y;
    } else if (tag == "e") {
      Index i, j;
      double w;
      if (!(in >> i >> j >> w) || i < 0 || j < 0 || i >= m || j >= m || i == j ||
          !(w >= 0.0))
        throw io_error("edge list: bad edge line");
      g.weights(i, j) = w;
      g.weights(j, i) = w;
    } else {
      throw io_error("edge list: unknown line tag '" + tag + "'");
    }
  }
  return g;
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  return read_edge_list(in);
}

}  // namespace lapreg
