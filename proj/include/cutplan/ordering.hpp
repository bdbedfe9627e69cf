#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cutplan/arrangement.hpp"
#include "cutplan/graph.hpp"
#include "cutplan/rng.hpp"
#include "cutplan/spectral.hpp"

namespace cutplan {

enum class SwapObjective { p_sum, max_cutwidth };

/// Geometric cooling schedule for the swap search. Unset fields take the
/// defaults documented on local_search_swaps.
struct AnnealingSchedule {
  std::optional<double> initial_temperature;
  double cooling = 0.97;
  std::optional<std::size_t> steps_per_temperature;
  double final_temperature_ratio = 1e-3;
};

struct OrderingConfig {
  /// Cluster count for order_mcm; unset means ceil(sqrt(N) / 2).
  std::optional<std::size_t> n_clusters;
  /// Hard cap on swap proposals per local search; unset runs the full schedule.
  std::optional<std::size_t> swap_iterations;
  AnnealingSchedule annealing;
  SwapObjective objective = SwapObjective::p_sum;
  RngSeed seed{};

  /// Throws std::invalid_argument on a zero count or a cooling factor outside (0, 1).
  void validate() const;
};

// Baseline priority orders.

/// Uniform permutation by seeded Fisher-Yates.
LinearArrangement order_random(const Graph& graph, RngSeed seed);
/// Degree descending, ties by ascending id.
LinearArrangement order_most_neighbors(const Graph& graph);
/// Degree ascending, ties by ascending id.
LinearArrangement order_least_neighbors(const Graph& graph);

/// Default recompute period for order_lrsr: 1 up to 2000 nodes, else ceil(N/100).
std::size_t default_lrsr_recompute(NodeId n);

/// Greedy spectral-radius reduction. Each pick takes the remaining node with
/// the largest squared principal-eigenvector entry of the residual graph; the
/// eigenvector is refreshed every `recompute_every` removals. Ties go to the
/// smaller id.
LinearArrangement order_lrsr(const Graph& graph, std::size_t recompute_every = 1);

// MCM pipeline stages.

/// Sort by Fiedler-vector entry; disconnected graphs are sequenced per
/// component, components concatenated by smallest node id. Of the two
/// sign-symmetric orders the one starting with the smaller id is returned.
LinearArrangement spectral_sequencing(const Graph& graph);
LinearArrangement spectral_sequencing(NodeId n, std::span<const WeightedEdge> edges);

/// Labels in 0..k-1, every cluster nonempty, clusters numbered by their
/// smallest member. Embedding by the k-1 lowest nontrivial Laplacian
/// eigenvectors, then seeded k-means++ / Lloyd.
std::vector<int> spectral_clustering(const Graph& graph, std::size_t k, RngSeed seed);

/// Simulated annealing over swaps of two uniformly chosen nodes.
///
/// The configured objective is evaluated incrementally per swap (p-sum with
/// p = 1 by default, O(deg u + deg v)). Defaults: initial temperature equal to
/// the average edge length of `la`, cooling 0.97, 100 * N proposals per
/// temperature, stop once the temperature falls below 1e-3 of its start. The
/// best arrangement visited is returned; ties on the objective go to the lower
/// maximum cutwidth.
LinearArrangement local_search_swaps(const Graph& graph, const LinearArrangement& la,
                                     const OrderingConfig& config);

struct MCMResult {
  LinearArrangement arrangement;
  CutwidthProfile profile;
  std::vector<int> clusters;
};

/// Cluster, sequence clusters on the quotient graph, sequence and anneal each
/// cluster, concatenate, then anneal globally.
MCMResult order_mcm(const Graph& graph, const OrderingConfig& config);

struct ExactCutwidth {
  LinearArrangement arrangement;
  std::int64_t max_cut = 0;
};

/// Exhaustive branch and bound; the lexicographically smallest minimizer.
/// Guarded to N <= 10.
ExactCutwidth order_exact_min_cutwidth(const Graph& graph);

}  // namespace cutplan
