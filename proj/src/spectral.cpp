#include "cutplan/spectral.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cutplan/errors.hpp"
#include "cutplan/rng.hpp"

namespace cutplan {

namespace {

enum class PowerOutcome { converged, oscillating, exhausted };

PowerOutcome power_iterate(const Eigen::SparseMatrix<double>& a, double shift, double tol,
                           int max_iterations, EigenPair& out) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Eigen::VectorXd prev = x;
  Eigen::VectorXd y(n);
  for (int it = 1; it <= max_iterations; ++it) {
    y.noalias() = a * x;
    if (shift != 0.0) y += shift * x;
    const double norm = y.norm();
    if (norm == 0.0) {
      out.value = 0.0;
      out.vector = x;
      out.iterations = it;
      return PowerOutcome::converged;
    }
    y /= norm;
    const double step = (y - x).norm();
    if (step <= tol) {
      out.vector = y;
      out.value = y.dot(a * y);
      out.iterations = it;
      return PowerOutcome::converged;
    }
    if (shift == 0.0 && it > 1 && (y - prev).norm() <= tol) return PowerOutcome::oscillating;
    prev = x;
    x = y;
  }
  return PowerOutcome::exhausted;
}

Eigen::VectorXd project_out_constant(Eigen::VectorXd v) {
  v.array() -= v.mean();
  return v;
}

Eigen::VectorXd scrambled_start(Eigen::Index n, std::uint64_t stream) {
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto bits = splitmix64(static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL + stream);
    x[i] = static_cast<double>(bits >> 11) * 0x1.0p-53 - 0.5;
  }
  return x;
}

double laplacian_scale(const Eigen::SparseMatrix<double>& laplacian) {
  return 2.0 * laplacian.diagonal().maxCoeff();
}

}  // namespace

EigenPair dominant_eigenpair(const Eigen::SparseMatrix<double>& matrix, double tol, int max_iterations) {
  if (matrix.rows() == 0) throw std::invalid_argument("dominant_eigenpair: empty matrix");
  EigenPair result;
  if (power_iterate(matrix, 0.0, tol, max_iterations, result) != PowerOutcome::converged) {
    // A + I keeps the eigenvectors and moves every eigenvalue up by one, which
    // breaks the +/- lambda tie of bipartite spectra.
    if (power_iterate(matrix, 1.0, tol, max_iterations, result) != PowerOutcome::converged)
      throw ConvergenceError("power iteration did not converge within " + std::to_string(max_iterations) +
                             " iterations");
    result.shifted = true;
  }
  if (result.vector.sum() < 0.0) result.vector = -result.vector;
  return result;
}

EigenPair spectral_radius(const Graph& graph, double tol, int max_iterations) {
  if (graph.n_nodes() == 0) throw std::invalid_argument("spectral_radius: empty graph");
  return dominant_eigenpair(adjacency_matrix(graph), tol, max_iterations);
}

EigenPair fiedler_vector(const Eigen::SparseMatrix<double>& laplacian, double tol, int max_iterations) {
  const Eigen::Index n = laplacian.rows();
  if (n < 2) throw std::invalid_argument("fiedler_vector: need at least two nodes");
  const double scale = laplacian_scale(laplacian);
  if (scale <= 0.0) throw std::invalid_argument("fiedler_vector: graph has no edges");

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::IdentityPreconditioner>
      cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(static_cast<int>(std::max<Eigen::Index>(1000, 10 * n)));
  cg.compute(laplacian);

  Eigen::VectorXd x = project_out_constant(scrambled_start(n, 0x5eed));
  x.normalize();
  EigenPair result;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd y = project_out_constant(cg.solve(x));
    const double norm = y.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw ConvergenceError("fiedler_vector: inner solve broke down (is the graph connected?)");
    y /= norm;
    if (y.dot(x) < 0.0) y = -y;
    const Eigen::VectorXd ly = laplacian * y;
    const double mu = y.dot(ly);
    x = y;
    if ((ly - mu * y).norm() <= tol * scale) {
      result.value = mu;
      result.vector = x;
      result.iterations = it;
      return result;
    }
  }
  throw ConvergenceError("fiedler_vector: inverse iteration did not converge within " +
                         std::to_string(max_iterations) + " iterations");
}

Eigen::MatrixXd lowest_nontrivial_eigenvectors(const Eigen::SparseMatrix<double>& laplacian, int k,
                                               int dense_limit) {
  const Eigen::Index n = laplacian.rows();
  if (k < 0 || k > n - 1) throw std::invalid_argument("lowest_nontrivial_eigenvectors: need 0 <= k < n");
  if (k == 0) return Eigen::MatrixXd(n, 0);
  const double scale = std::max(1.0, laplacian_scale(laplacian));

  if (n <= dense_limit) {
    // Lift the constant vector above the spectrum so it sorts last.
    Eigen::MatrixXd m = Eigen::MatrixXd(laplacian);
    m.array() += (scale + 1.0) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw ConvergenceError("dense Laplacian eigensolve failed");
    return solver.eigenvectors().leftCols(k);
  }

  // Block inverse iteration on L + sigma*I with Rayleigh-Ritz rotation.
  Eigen::SparseMatrix<double> shifted = laplacian;
  const double sigma = 1e-3 * scale / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += sigma;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-10);
  cg.compute(shifted);

  Eigen::MatrixXd block(n, k);
  for (int j = 0; j < k; ++j) block.col(j) = scrambled_start(n, 0xb10c + static_cast<std::uint64_t>(j));
  auto orthonormalize = [&](Eigen::MatrixXd& q) {
    for (int j = 0; j < k; ++j) q.col(j) = project_out_constant(q.col(j));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
    q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  };
  orthonormalize(block);
  for (int it = 0; it < 500; ++it) {
    Eigen::MatrixXd next(n, k);
    for (int j = 0; j < k; ++j) next.col(j) = cg.solve(block.col(j));
    orthonormalize(next);
    const Eigen::MatrixXd lq = laplacian * next;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(next.transpose() * lq);
    block = next * ritz.eigenvectors();
    const Eigen::MatrixXd residual = laplacian * block - block * ritz.eigenvalues().asDiagonal();
    if (residual.colwise().norm().maxCoeff() <= 1e-8 * scale) break;
  }
  return block;
}

}  // namespace cutplan
