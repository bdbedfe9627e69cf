#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cutplan/ordering.hpp"

namespace cutplan {

namespace {

std::vector<std::vector<NodeId>> weighted_components(NodeId n, std::span<const WeightedEdge> edges) {
  std::vector<NodeId> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](NodeId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : edges) {
    if (e.weight <= 0.0) continue;
    NodeId a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<NodeId>> by_root(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<NodeId>> components;
  for (auto& c : by_root)
    if (!c.empty()) components.push_back(std::move(c));
  // Roots are the smallest members, so components are already ordered.
  return components;
}

std::vector<NodeId> sort_by_entries(std::span<const NodeId> ids, const Eigen::VectorXd& x, double sign) {
  const double scale = std::max(x.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  std::vector<std::pair<std::int64_t, NodeId>> keyed;
  keyed.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i)
    keyed.emplace_back(std::llround(sign * x[static_cast<Eigen::Index>(i)] / scale * 1e9), ids[i]);
  std::sort(keyed.begin(), keyed.end());
  std::vector<NodeId> out;
  out.reserve(keyed.size());
  for (auto& [key, id] : keyed) out.push_back(id);
  return out;
}

std::vector<NodeId> sequence_component(std::span<const NodeId> members, std::span<const WeightedEdge> edges,
                                       const std::vector<NodeId>& local_index) {
  if (members.size() <= 2) return {members.begin(), members.end()};
  std::vector<WeightedEdge> local;
  for (const auto& e : edges) {
    if (e.weight <= 0.0) continue;
    local.push_back({local_index[e.u], local_index[e.v], e.weight});
  }
  const auto laplacian = laplacian_matrix(static_cast<NodeId>(members.size()), local);
  const EigenPair fiedler = fiedler_vector(laplacian);
  auto forward = sort_by_entries(members, fiedler.vector, 1.0);
  auto backward = sort_by_entries(members, fiedler.vector, -1.0);
  return backward.front() < forward.front() ? backward : forward;
}

}  // namespace

LinearArrangement spectral_sequencing(NodeId n, std::span<const WeightedEdge> edges) {
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
      throw std::invalid_argument("spectral_sequencing: invalid edge");
  }
  const auto components = weighted_components(n, edges);
  std::vector<NodeId> local_index(static_cast<std::size_t>(n), -1);
  for (const auto& comp : components)
    for (std::size_t i = 0; i < comp.size(); ++i) local_index[comp[i]] = static_cast<NodeId>(i);

  // Bucket edges by component so each Laplacian is built from its own edges.
  std::vector<std::size_t> component_of(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < components.size(); ++c)
    for (NodeId v : components[c]) component_of[v] = c;
  std::vector<std::vector<WeightedEdge>> edges_of(components.size());
  for (const auto& e : edges)
    if (e.weight > 0.0) edges_of[component_of[e.u]].push_back(e);

  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < components.size(); ++c) {
    auto part = sequence_component(components[c], edges_of[c], local_index);
    order.insert(order.end(), part.begin(), part.end());
  }
  return LinearArrangement::from_order(std::move(order));
}

LinearArrangement spectral_sequencing(const Graph& graph) {
  std::vector<WeightedEdge> edges;
  edges.reserve(graph.n_edges());
  for (const auto& e : graph.edges()) edges.push_back({e.u, e.v, 1.0});
  return spectral_sequencing(graph.n_nodes(), edges);
}

std::vector<int> spectral_clustering(const Graph& graph, std::size_t k, RngSeed seed) {
  const auto n = static_cast<std::size_t>(graph.n_nodes());
  if (k < 1) throw std::invalid_argument("spectral_clustering: k must be >= 1");
  if (k > n) throw std::invalid_argument("spectral_clustering: k exceeds the node count");
  std::vector<int> labels(n, 0);
  if (k == 1) return labels;

  // k clusters need k-1 informative directions; the constant eigenvector is skipped.
  const int dims = static_cast<int>(std::min(k - 1, n - 1));
  const Eigen::MatrixXd embedding = lowest_nontrivial_eigenvectors(laplacian_matrix(graph), dims);
  auto dist2 = [&](std::size_t i, const Eigen::RowVectorXd& c) { return (embedding.row(i) - c).squaredNorm(); };

  Rng rng = make_rng(seed);
  std::vector<Eigen::RowVectorXd> centers;
  centers.push_back(embedding.row(uniform_below(rng, n)));
  std::vector<double> d2(n);
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) d2[i] = std::min(d2[i], dist2(i, c));
      total += d2[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      double target = uniform01(rng) * total;
      for (pick = 0; pick + 1 < n; ++pick) {
        target -= d2[pick];
        if (target < 0.0) break;
      }
    } else {
      pick = uniform_below(rng, n);
    }
    centers.push_back(embedding.row(pick));
  }

  std::vector<std::size_t> sizes(k);
  auto repair_empty = [&] {
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      const auto largest = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != static_cast<int>(largest)) continue;
        const double d = dist2(i, centers[largest]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      labels[far] = static_cast<int>(c);
      --sizes[largest];
      sizes[c] = 1;
      centers[c] = embedding.row(far);
    }
  };

  std::vector<int> previous;
  for (int iteration = 0; iteration < 100; ++iteration) {
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = dist2(i, centers[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = dist2(i, centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      labels[i] = static_cast<int>(best);
      ++sizes[best];
    }
    repair_empty();
    if (labels == previous) break;
    previous = labels;
    for (std::size_t c = 0; c < k; ++c) centers[c].setZero(dims);
    for (std::size_t i = 0; i < n; ++i) centers[labels[i]] += embedding.row(i);
    for (std::size_t c = 0; c < k; ++c) centers[c] /= static_cast<double>(sizes[c]);
  }

  // Renumber clusters in order of their smallest member.
  std::vector<int> renumber(k, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (renumber[labels[i]] < 0) renumber[labels[i]] = next++;
  for (auto& l : labels) l = renumber[l];
  return labels;
}

}  // namespace cutplan
