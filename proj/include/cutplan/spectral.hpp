#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <span>
#include <vector>

#include "cutplan/graph.hpp"

namespace cutplan {

template <typename Scalar = double>
Eigen::SparseMatrix<Scalar> adjacency_matrix(const Graph& graph) {
  std::vector<Eigen::Triplet<Scalar>> triplets;
  triplets.reserve(2 * graph.n_edges());
  for (const auto& e : graph.edges()) {
    triplets.emplace_back(e.u, e.v, Scalar(1));
    triplets.emplace_back(e.v, e.u, Scalar(1));
  }
  Eigen::SparseMatrix<Scalar> a(graph.n_nodes(), graph.n_nodes());
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

/// Combinatorial Laplacian D - W of a weighted undirected graph on n nodes.
template <typename Scalar = double>
Eigen::SparseMatrix<Scalar> laplacian_matrix(NodeId n, std::span<const WeightedEdge> edges) {
  std::vector<Eigen::Triplet<Scalar>> triplets;
  triplets.reserve(4 * edges.size());
  for (const auto& e : edges) {
    const Scalar w(e.weight);
    triplets.emplace_back(e.u, e.v, -w);
    triplets.emplace_back(e.v, e.u, -w);
    triplets.emplace_back(e.u, e.u, w);
    triplets.emplace_back(e.v, e.v, w);
  }
  Eigen::SparseMatrix<Scalar> l(n, n);
  l.setFromTriplets(triplets.begin(), triplets.end());
  return l;
}

template <typename Scalar = double>
Eigen::SparseMatrix<Scalar> laplacian_matrix(const Graph& graph) {
  std::vector<WeightedEdge> edges;
  edges.reserve(graph.n_edges());
  for (const auto& e : graph.edges()) edges.push_back({e.u, e.v, 1.0});
  return laplacian_matrix<Scalar>(graph.n_nodes(), edges);
}

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;  // unit norm
  int iterations = 0;
  bool shifted = false;  // a +1 diagonal shift was needed to break oscillation
};

/// Largest eigenvalue of a nonnegative symmetric matrix by power iteration from
/// (1,...,1)/sqrt(n). If the iterate oscillates with period two, or the cap is
/// hit, the iteration restarts on A + I. Throws ConvergenceError when the
/// shifted run also fails.
EigenPair dominant_eigenpair(const Eigen::SparseMatrix<double>& matrix, double tol = 1e-10,
                             int max_iterations = 100000);

/// Spectral radius and principal (nonnegative) eigenvector of the adjacency matrix.
EigenPair spectral_radius(const Graph& graph, double tol = 1e-10, int max_iterations = 100000);

/// Fiedler vector of a connected graph's Laplacian by inverse iteration on the
/// complement of the constant vector (conjugate-gradient inner solves).
/// The eigenvalue field holds the Rayleigh quotient.
EigenPair fiedler_vector(const Eigen::SparseMatrix<double>& laplacian, double tol = 1e-8,
                         int max_iterations = 5000);

/// The k eigenvectors of the Laplacian with smallest eigenvalues among those
/// orthogonal to the constant vector, as columns (ascending eigenvalue).
/// Dense solve up to `dense_limit` nodes, block inverse iteration above it.
Eigen::MatrixXd lowest_nontrivial_eigenvectors(const Eigen::SparseMatrix<double>& laplacian, int k,
                                               int dense_limit = 1500);

}  // namespace cutplan
