#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cutplan {

using NodeId = std::int32_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph on nodes 0..n-1 with CSR adjacency.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary edge list: endpoints are reordered, duplicates
  /// (including reversed ones) collapse. Throws std::invalid_argument on a
  /// self-loop or an endpoint outside [0, n).
  Graph(NodeId n, std::vector<Edge> edges);

  NodeId n_nodes() const noexcept { return n_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }

  /// Canonical edge list, sorted lexicographically, u < v.
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Sorted neighbor list of v.
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept { return max_degree_; }
  bool has_edge(NodeId u, NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  NodeId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::size_t max_degree_ = 0;
};

/// Checks every structural invariant; returns a description of the first
/// violation, or nullopt when the graph is well formed.
std::optional<std::string> find_invariant_violation(const Graph& graph);

/// Components ordered by smallest member; members ascending.
std::vector<std::vector<NodeId>> connected_components(const Graph& graph);

/// Subgraph induced by `nodes`; node nodes[i] becomes i.
Graph induced_subgraph(const Graph& graph, std::span<const NodeId> nodes);

Graph complete_graph(NodeId n);
Graph path_graph(NodeId n);
Graph cycle_graph(NodeId n);
Graph star_graph(NodeId leaves);

}  // namespace cutplan
