#include "cutplan/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace cutplan {

Graph::Graph(NodeId n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("graph: negative node count");
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop on node " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  std::vector<std::size_t> degree(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) adjacency_[fill[e.v]++] = e.u;
  for (const auto& e : edges_) adjacency_[fill[e.u]++] = e.v;
  for (NodeId v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
    max_degree_ = std::max(max_degree_, degree[v]);
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<std::string> find_invariant_violation(const Graph& graph) {
  const NodeId n = graph.n_nodes();
  std::size_t max_len = 0;
  std::size_t total = 0;
  for (NodeId v = 0; v < n; ++v) {
    auto nb = graph.neighbors(v);
    max_len = std::max(max_len, nb.size());
    total += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] < 0 || nb[i] >= n) return "neighbor id out of range at node " + std::to_string(v);
      if (nb[i] == v) return "self-loop at node " + std::to_string(v);
      if (i > 0 && nb[i - 1] >= nb[i]) return "unsorted or duplicate neighbors at node " + std::to_string(v);
      if (!graph.has_edge(nb[i], v)) return "asymmetric adjacency between " + std::to_string(v) + " and " + std::to_string(nb[i]);
    }
  }
  if (total != 2 * graph.n_edges()) return "adjacency size does not match edge count";
  if (max_len != graph.max_degree()) return "max_degree mismatch";
  auto edges = graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].u >= edges[i].v) return "edge not canonical";
    if (i > 0 && !(edges[i - 1] < edges[i])) return "edge list unsorted or duplicated";
  }
  return std::nullopt;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& graph) {
  const NodeId n = graph.n_nodes();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<NodeId>> components;
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    queue.assign(1, s);
    seen[s] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId w : graph.neighbors(queue[head])) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    components.push_back(queue);
  }
  return components;
}

Graph induced_subgraph(const Graph& graph, std::span<const NodeId> nodes) {
  std::vector<NodeId> local(static_cast<std::size_t>(graph.n_nodes()), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<NodeId>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId w : graph.neighbors(nodes[i])) {
      NodeId j = local[w];
      if (j > static_cast<NodeId>(i)) edges.push_back({static_cast<NodeId>(i), j});
    }
  }
  return Graph(static_cast<NodeId>(nodes.size()), std::move(edges));
}

Graph complete_graph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

Graph path_graph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
  return Graph(n, std::move(edges));
}

Graph star_graph(NodeId leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph(leaves + 1, std::move(edges));
}

}  // namespace cutplan
