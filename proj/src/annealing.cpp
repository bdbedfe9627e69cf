#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cutplan/ordering.hpp"

namespace cutplan {

namespace {

/// Range add / global max over the N-1 cut locations.
class CutTree {
 public:
  explicit CutTree(std::size_t size) : size_(std::max<std::size_t>(size, 1)) {
    while (leaves_ < size_) leaves_ *= 2;
    max_.assign(2 * leaves_, 0);
    lazy_.assign(2 * leaves_, 0);
    // Padding leaves must never win the max.
    for (std::size_t i = size; i < leaves_; ++i) max_[leaves_ + i] = kFloor;
    for (std::size_t i = leaves_ - 1; i >= 1; --i) max_[i] = std::max(max_[2 * i], max_[2 * i + 1]);
  }

  /// Adds delta to locations [lo, hi).
  void add(std::size_t lo, std::size_t hi, std::int64_t delta) {
    if (lo < hi) add(1, 0, leaves_, lo, hi, delta);
  }

  std::int64_t max() const { return max_[1]; }

 private:
  static constexpr std::int64_t kFloor = std::numeric_limits<std::int64_t>::min() / 4;

  void add(std::size_t node, std::size_t l, std::size_t r, std::size_t lo, std::size_t hi, std::int64_t delta) {
    if (hi <= l || r <= lo) return;
    if (lo <= l && r <= hi) {
      max_[node] += delta;
      lazy_[node] += delta;
      return;
    }
    const std::size_t mid = (l + r) / 2;
    add(2 * node, l, mid, lo, hi, delta);
    add(2 * node + 1, mid, r, lo, hi, delta);
    max_[node] = std::max(max_[2 * node], max_[2 * node + 1]) + lazy_[node];
  }

  std::size_t size_;
  std::size_t leaves_ = 1;
  std::vector<std::int64_t> max_;
  std::vector<std::int64_t> lazy_;
};

class SwapSearch {
 public:
  SwapSearch(const Graph& graph, const LinearArrangement& la, SwapObjective objective)
      : graph_(graph), la_(la), objective_(objective), tree_(static_cast<std::size_t>(graph.n_nodes()) - 1) {
    for (const auto& e : graph.edges()) {
      edge_interval(la_.slot(e.u), la_.slot(e.v), +1);
      p_sum_ += std::abs(la_.slot(e.u) - la_.slot(e.v));
    }
  }

  std::int64_t cost() const { return objective_ == SwapObjective::p_sum ? p_sum_ : tree_.max(); }
  std::int64_t max_cut() const { return tree_.max(); }
  const LinearArrangement& arrangement() const { return la_; }

  /// Objective change if u and v exchanged slots. For the cutwidth objective
  /// the swap is applied; the caller must commit() or revert().
  std::int64_t propose(NodeId u, NodeId v) {
    if (objective_ == SwapObjective::p_sum) return p_sum_delta(u, v);
    const std::int64_t before = tree_.max();
    apply(u, v);
    return tree_.max() - before;
  }

  void commit(NodeId u, NodeId v) {
    if (objective_ == SwapObjective::p_sum) apply(u, v);
  }

  void revert(NodeId u, NodeId v) {
    if (objective_ == SwapObjective::max_cutwidth) apply(u, v);
  }

 private:
  std::int64_t p_sum_delta(NodeId u, NodeId v) const {
    const std::int64_t su = la_.slot(u), sv = la_.slot(v);
    std::int64_t delta = 0;
    for (NodeId w : graph_.neighbors(u)) {
      if (w == v) continue;
      const std::int64_t sw = la_.slot(w);
      delta += std::abs(sv - sw) - std::abs(su - sw);
    }
    for (NodeId w : graph_.neighbors(v)) {
      if (w == u) continue;
      const std::int64_t sw = la_.slot(w);
      delta += std::abs(su - sw) - std::abs(sv - sw);
    }
    return delta;
  }

  void edge_interval(NodeId a, NodeId b, std::int64_t sign) {
    auto [lo, hi] = std::minmax(a, b);
    tree_.add(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi), sign);
  }

  void apply(NodeId u, NodeId v) {
    const NodeId su = la_.slot(u), sv = la_.slot(v);
    p_sum_ += p_sum_delta(u, v);
    for (NodeId w : graph_.neighbors(u)) {
      if (w == v) continue;
      edge_interval(su, la_.slot(w), -1);
      edge_interval(sv, la_.slot(w), +1);
    }
    for (NodeId w : graph_.neighbors(v)) {
      if (w == u) continue;
      edge_interval(sv, la_.slot(w), -1);
      edge_interval(su, la_.slot(w), +1);
    }
    la_.swap_nodes(u, v);
  }

  const Graph& graph_;
  LinearArrangement la_;
  SwapObjective objective_;
  CutTree tree_;
  std::int64_t p_sum_ = 0;
};

}  // namespace

void OrderingConfig::validate() const {
  if (n_clusters && *n_clusters == 0) throw std::invalid_argument("ordering: n_clusters must be positive");
  if (annealing.steps_per_temperature && *annealing.steps_per_temperature == 0)
    throw std::invalid_argument("ordering: steps_per_temperature must be positive");
  if (!(annealing.cooling > 0.0 && annealing.cooling < 1.0))
    throw std::invalid_argument("ordering: cooling factor must lie in (0, 1)");
  if (!(annealing.final_temperature_ratio > 0.0 && annealing.final_temperature_ratio < 1.0))
    throw std::invalid_argument("ordering: final temperature ratio must lie in (0, 1)");
  if (annealing.initial_temperature && !(*annealing.initial_temperature > 0.0))
    throw std::invalid_argument("ordering: initial temperature must be positive");
}

LinearArrangement local_search_swaps(const Graph& graph, const LinearArrangement& la,
                                     const OrderingConfig& config) {
  config.validate();
  require_compatible(graph, la);
  const NodeId n = graph.n_nodes();
  const std::size_t cap = config.swap_iterations.value_or(std::numeric_limits<std::size_t>::max());
  if (n < 2 || graph.n_edges() == 0 || cap == 0) return la;

  SwapSearch search(graph, la, config.objective);
  const double t0 = config.annealing.initial_temperature.value_or(
      p_sum_cost(graph, la, 1) / static_cast<double>(graph.n_edges()));
  const double t_floor = t0 * config.annealing.final_temperature_ratio;
  const std::size_t steps = config.annealing.steps_per_temperature.value_or(100 * static_cast<std::size_t>(n));

  LinearArrangement best = la;
  std::int64_t best_cost = search.cost();
  std::int64_t best_cut = search.max_cut();
  // Swaps applied since `best` was last synchronized; replayed on improvement.
  std::vector<std::pair<NodeId, NodeId>> journal;
  bool journal_overflow = false;

  Rng rng = make_rng(config.seed);
  std::size_t proposals = 0;
  for (double t = t0; t >= t_floor && proposals < cap; t *= config.annealing.cooling) {
    for (std::size_t s = 0; s < steps && proposals < cap; ++s, ++proposals) {
      const auto u = static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      auto v = static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(n) - 1));
      if (v >= u) ++v;
      const std::int64_t delta = search.propose(u, v);
      const bool accept = delta <= 0 || uniform01(rng) < std::exp(-static_cast<double>(delta) / t);
      if (!accept) {
        search.revert(u, v);
        continue;
      }
      search.commit(u, v);
      if (!journal_overflow) {
        journal.emplace_back(u, v);
        if (journal.size() > static_cast<std::size_t>(n)) journal_overflow = true;
      }
      const std::int64_t cost = search.cost();
      if (cost > best_cost) continue;
      const std::int64_t cut = search.max_cut();
      if (cost < best_cost || cut < best_cut) {
        if (journal_overflow) {
          best = search.arrangement();
        } else {
          for (auto [a, b] : journal) best.swap_nodes(a, b);
        }
        journal.clear();
        journal_overflow = false;
        best_cost = cost;
        best_cut = cut;
      }
    }
  }
  return best;
}

}  // namespace cutplan
