#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cutplan/arrangement.hpp"
#include "cutplan/graph.hpp"
#include "cutplan/rng.hpp"

namespace cutplan {

/// Extinction-time bound for a priority plan with budget 1, and the derived
/// threshold quantities.
struct BoundReport {
  std::int64_t n_nodes = 0;
  std::int64_t max_degree = 0;
  std::int64_t max_cut = 0;
  double beta = 0.0;
  double delta = 1.0;
  double rho = 0.0;
  double budget = 1.0;

  /// d_max (1 + ln N) / C_max; nullopt when C_max = 0.
  std::optional<double> epsilon;
  /// beta C_max (1 + 2 sqrt(eps) + eps) - delta; rho must exceed it.
  double required_rho = 0.0;
  bool condition_holds = false;
  /// N / (rho + delta - beta C_max (1 + 2 sqrt(eps) + eps)); nullopt unless condition_holds.
  std::optional<double> extinction_bound;
  /// Upper bound on the threshold efficiency: r C_max (1 + 2 sqrt(eps) + eps) - 1.
  double corollary_threshold = 0.0;
  /// r C_max / b_tot. Heuristic for budgets above 1.
  double naive_threshold = 0.0;
  /// Set when C_max = 0: epsilon undefined, the bound degenerates to N / (rho + delta).
  bool degenerate = false;
};

BoundReport theorem1_bound(std::int64_t n_nodes, std::int64_t max_degree, std::int64_t max_cut, double beta,
                           double delta, double rho, double budget = 1.0);

/// Positive root of xi - ln(1 + xi) = a by bisection on [0, a + 2 sqrt(a) + 1].
double solve_xi(double a);

/// r C_max / b_tot.
double expected_threshold(double r, double max_cut, double budget);

struct ProbeSettings {
  std::size_t n_runs = 40;
  double horizon_multiplier = 10.0;
  double success_fraction = 0.8;
  /// Stop a probe as soon as its verdict is fixed by the runs seen so far.
  bool early_stop = true;
};

struct ProbeRecord {
  double e = 0.0;
  double extinction_fraction = 0.0;
  double mean_tau = 0.0;
  std::size_t runs_evaluated = 0;
  bool success = false;
};

struct ThresholdEstimate {
  /// Smallest probed efficiency that succeeded; the upper end of the bracket.
  double e_star = 0.0;
  double e_low = 0.0;
  double e_high = 0.0;
  std::int64_t max_cut = 0;
  double naive_threshold = 0.0;
  ProbeSettings probe{};
  std::vector<ProbeRecord> probes;
};

/// Bisection for the smallest resource efficiency whose probe succeeds, with
/// delta = 1, beta = r, budget b_tot, starting from full infection.
/// Throws ThresholdError if no success is found up to 10 r C_max / b_tot.
ThresholdEstimate estimate_threshold(const Graph& graph, const LinearArrangement& order, double r,
                                     std::int64_t budget, const ProbeSettings& probe, double tol, RngSeed seed,
                                     std::size_t jobs = 1);

/// One probe at efficiency e (exposed for diagnostics and tests).
ProbeRecord run_probe(const Graph& graph, const LinearArrangement& order, double r, std::int64_t budget, double e,
                      const ProbeSettings& probe, RngSeed seed, std::size_t jobs = 1);

}  // namespace cutplan
