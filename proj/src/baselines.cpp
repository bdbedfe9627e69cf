#include <algorithm>
#include <cmath>
#include <numeric>

#include "cutplan/ordering.hpp"

namespace cutplan {

LinearArrangement order_random(const Graph& graph, RngSeed seed) {
  const NodeId n = graph.n_nodes();
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_rng(seed);
  for (NodeId i = n - 1; i > 0; --i) {
    const auto j = static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }
  return LinearArrangement::from_order(std::move(order));
}

namespace {

LinearArrangement order_by_degree(const Graph& graph, bool descending) {
  std::vector<NodeId> order(static_cast<std::size_t>(graph.n_nodes()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return descending ? graph.degree(a) > graph.degree(b) : graph.degree(a) < graph.degree(b);
  });
  return LinearArrangement::from_order(std::move(order));
}

// Scores live in [0, 1]; rounding to 1e-12 makes symmetric nodes compare equal
// so the id tie-break applies.
std::int64_t score_key(double score) { return std::llround(score * 1e12); }

}  // namespace

LinearArrangement order_most_neighbors(const Graph& graph) { return order_by_degree(graph, true); }

LinearArrangement order_least_neighbors(const Graph& graph) { return order_by_degree(graph, false); }

std::size_t default_lrsr_recompute(NodeId n) {
  if (n <= 2000) return 1;
  return static_cast<std::size_t>((n + 99) / 100);
}

LinearArrangement order_lrsr(const Graph& graph, std::size_t recompute_every) {
  const NodeId n = graph.n_nodes();
  if (n == 0) throw std::invalid_argument("order_lrsr: empty graph");
  if (recompute_every == 0) throw std::invalid_argument("order_lrsr: recompute_every must be >= 1");

  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::vector<double> score(static_cast<std::size_t>(n), 0.0);
  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<NodeId> remaining;

  while (static_cast<NodeId>(order.size()) < n) {
    remaining.clear();
    for (NodeId v = 0; v < n; ++v)
      if (!removed[v]) remaining.push_back(v);

    // Principal eigenvector of the residual graph, solved per component: the
    // components with the largest radius carry the whole vector.
    const Graph residual = induced_subgraph(graph, remaining);
    std::fill(score.begin(), score.end(), 0.0);
    std::vector<std::pair<double, EigenPair>> per_component;
    const auto components = connected_components(residual);
    double top = 0.0;
    for (const auto& comp : components) {
      if (comp.size() < 2) {
        per_component.push_back({0.0, {}});
        continue;
      }
      EigenPair pair = spectral_radius(induced_subgraph(residual, comp));
      top = std::max(top, pair.value);
      per_component.push_back({pair.value, std::move(pair)});
    }
    if (top > 0.0) {
      for (std::size_t c = 0; c < components.size(); ++c) {
        if (per_component[c].first < top * (1.0 - 1e-9)) continue;
        const auto& vec = per_component[c].second.vector;
        for (std::size_t i = 0; i < components[c].size(); ++i) {
          const double x = vec[static_cast<Eigen::Index>(i)];
          score[remaining[components[c][i]]] = x * x;
        }
      }
    }

    std::stable_sort(remaining.begin(), remaining.end(),
                     [&](NodeId a, NodeId b) { return score_key(score[a]) > score_key(score[b]); });
    // An edgeless residual scores all zeros; the rest follows in id order.
    const std::size_t take = top > 0.0 ? std::min(recompute_every, remaining.size()) : remaining.size();
    for (std::size_t i = 0; i < take; ++i) {
      order.push_back(remaining[i]);
      removed[remaining[i]] = 1;
    }
  }
  return LinearArrangement::from_order(std::move(order));
}

}  // namespace cutplan
