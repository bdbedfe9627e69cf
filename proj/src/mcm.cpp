#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "cutplan/ordering.hpp"

namespace cutplan {

MCMResult order_mcm(const Graph& graph, const OrderingConfig& config) {
  config.validate();
  const NodeId n = graph.n_nodes();
  if (n == 0) throw std::invalid_argument("order_mcm: empty graph");

  std::size_t k = config.n_clusters.value_or(
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)) / 2.0)));
  k = std::clamp<std::size_t>(k, 1, static_cast<std::size_t>(n));

  MCMResult result;
  result.clusters = spectral_clustering(graph, k, derive_seed(config.seed, 1));
  std::vector<std::vector<NodeId>> members(k);
  for (NodeId v = 0; v < n; ++v) members[result.clusters[v]].push_back(v);

  // Clusters become weighted super-nodes; weights count inter-cluster edges.
  std::map<std::pair<NodeId, NodeId>, double> quotient;
  for (const auto& e : graph.edges()) {
    NodeId a = result.clusters[e.u], b = result.clusters[e.v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    quotient[{a, b}] += 1.0;
  }
  std::vector<WeightedEdge> quotient_edges;
  for (const auto& [key, w] : quotient) quotient_edges.push_back({key.first, key.second, w});
  const LinearArrangement cluster_order = spectral_sequencing(static_cast<NodeId>(k), quotient_edges);

  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(n));
  for (NodeId c : cluster_order.order()) {
    const auto& nodes = members[c];
    const Graph sub = induced_subgraph(graph, nodes);
    OrderingConfig local = config;
    local.seed = derive_seed(config.seed, 100 + static_cast<std::uint64_t>(c));
    const LinearArrangement inner = local_search_swaps(sub, spectral_sequencing(sub), local);
    for (NodeId v : inner.order()) order.push_back(nodes[v]);
  }

  OrderingConfig global = config;
  global.seed = derive_seed(config.seed, 2);
  result.arrangement = local_search_swaps(graph, LinearArrangement::from_order(std::move(order)), global);
  if (n >= 2) result.profile = cutwidth_profile(graph, result.arrangement);
  return result;
}

namespace {

struct ExactSearch {
  const Graph& graph;
  NodeId n;
  std::vector<NodeId> prefix;
  std::vector<char> used;
  std::vector<int> placed_neighbors;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<NodeId> best_order;

  void run(std::int64_t cut, std::int64_t worst) {
    const auto depth = static_cast<NodeId>(prefix.size());
    if (depth == n) {
      if (prefix.front() < prefix.back() && worst < best) {
        best = worst;
        best_order = prefix;
      }
      return;
    }
    for (NodeId v = 0; v < n; ++v) {
      if (used[v]) continue;
      const std::int64_t next_cut =
          cut + static_cast<std::int64_t>(graph.degree(v)) - 2 * static_cast<std::int64_t>(placed_neighbors[v]);
      // The cut after the full sequence is not a location.
      const std::int64_t next_worst = depth + 1 < n ? std::max(worst, next_cut) : worst;
      if (next_worst >= best) continue;
      used[v] = 1;
      prefix.push_back(v);
      for (NodeId w : graph.neighbors(v)) ++placed_neighbors[w];
      run(next_cut, next_worst);
      for (NodeId w : graph.neighbors(v)) --placed_neighbors[w];
      prefix.pop_back();
      used[v] = 0;
    }
  }
};

}  // namespace

ExactCutwidth order_exact_min_cutwidth(const Graph& graph) {
  const NodeId n = graph.n_nodes();
  if (n > 10) throw std::invalid_argument("order_exact_min_cutwidth: limited to N <= 10");
  if (n < 2) return {LinearArrangement::identity(n), 0};
  ExactSearch search{graph, n, {}, std::vector<char>(static_cast<std::size_t>(n), 0),
                     std::vector<int>(static_cast<std::size_t>(n), 0), std::numeric_limits<std::int64_t>::max(), {}};
  search.prefix.reserve(static_cast<std::size_t>(n));
  search.run(0, 0);
  return {LinearArrangement::from_order(std::move(search.best_order)), search.best};
}

}  // namespace cutplan
