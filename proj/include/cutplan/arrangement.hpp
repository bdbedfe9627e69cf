#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "cutplan/graph.hpp"

namespace cutplan {

/// Bijection between nodes and line positions. Positions are 1-based in the
/// public vocabulary (position(v) in 1..N); slots are the 0-based equivalent.
class LinearArrangement {
 public:
  LinearArrangement() = default;

  static LinearArrangement identity(NodeId n);
  /// order[i] is the node placed at slot i. Throws if not a permutation.
  static LinearArrangement from_order(std::vector<NodeId> order);
  /// positions[v] is the 1-based position of node v. Throws if not a bijection.
  static LinearArrangement from_positions(std::span<const std::int64_t> positions);

  NodeId size() const noexcept { return static_cast<NodeId>(order_.size()); }
  std::int64_t position(NodeId v) const { return slot_[v] + 1; }
  NodeId slot(NodeId v) const { return slot_[v]; }
  NodeId node_at_slot(NodeId s) const { return order_[s]; }
  std::span<const NodeId> order() const noexcept { return order_; }

  /// Exchanges the slots of two nodes.
  void swap_nodes(NodeId a, NodeId b);
  LinearArrangement reversed() const;

  friend bool operator==(const LinearArrangement&, const LinearArrangement&) = default;

 private:
  std::vector<NodeId> order_;
  std::vector<NodeId> slot_;
};

/// Throws std::invalid_argument unless `la` covers exactly the graph's nodes.
void require_compatible(const Graph& graph, const LinearArrangement& la);

struct CutwidthProfile {
  /// cuts[c-1] counts edges with one end at position <= c and the other > c.
  std::vector<std::int64_t> cuts;
  std::int64_t max_cut = 0;
  /// Smallest location c (1-based) attaining max_cut.
  std::size_t argmax_location = 1;
};

/// (sum over undirected edges of |l(u) - l(v)|^p)^(1/p), each edge once.
double p_sum_cost(const Graph& graph, const LinearArrangement& la, int p = 1);

/// Difference-array evaluation of all N-1 cuts in O(|E| + N). Requires N >= 2.
CutwidthProfile cutwidth_profile(const Graph& graph, const LinearArrangement& la);

/// Arrangement text format: one node id per line, line i holds the node at position i.
std::string format_arrangement(const LinearArrangement& la);
LinearArrangement parse_arrangement(std::istream& in);
LinearArrangement load_arrangement(const std::filesystem::path& path);
void save_arrangement(const LinearArrangement& la, const std::filesystem::path& path);

/// CSV with header `location,cut`.
std::string format_cut_profile(const CutwidthProfile& profile);

}  // namespace cutplan
