#include "cutplan/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cutplan/ensemble.hpp"
#include "cutplan/epidemic.hpp"
#include "cutplan/errors.hpp"
#include "cutplan/parallel.hpp"

namespace cutplan {

BoundReport theorem1_bound(std::int64_t n_nodes, std::int64_t max_degree, std::int64_t max_cut, double beta,
                           double delta, double rho, double budget) {
  if (n_nodes < 2) throw std::invalid_argument("theorem1_bound: N must be >= 2");
  if (max_cut < 0 || max_degree < 0) throw std::invalid_argument("theorem1_bound: negative count");
  if (!(delta > 0.0) || beta < 0.0 || rho < 0.0) throw std::invalid_argument("theorem1_bound: invalid rates");
  if (!(budget >= 1.0)) throw std::invalid_argument("theorem1_bound: budget must be >= 1");
  if (max_cut >= 1 && max_degree < 1) throw std::invalid_argument("theorem1_bound: d_max must be >= 1");

  BoundReport report;
  report.n_nodes = n_nodes;
  report.max_degree = max_degree;
  report.max_cut = max_cut;
  report.beta = beta;
  report.delta = delta;
  report.rho = rho;
  report.budget = budget;
  const double r = beta / delta;
  const auto c = static_cast<double>(max_cut);
  report.naive_threshold = expected_threshold(r, c, budget);

  if (max_cut == 0) {
    report.degenerate = true;
    report.required_rho = -delta;
    report.condition_holds = true;
    report.extinction_bound = static_cast<double>(n_nodes) / (rho + delta);
    report.corollary_threshold = -1.0;
    return report;
  }

  const double eps = static_cast<double>(max_degree) * (1.0 + std::log(static_cast<double>(n_nodes))) / c;
  const double inflation = 1.0 + 2.0 * std::sqrt(eps) + eps;
  report.epsilon = eps;
  report.required_rho = beta * c * inflation - delta;
  report.condition_holds = rho > report.required_rho;
  if (report.condition_holds)
    report.extinction_bound = static_cast<double>(n_nodes) / (rho + delta - beta * c * inflation);
  report.corollary_threshold = r * c * inflation - 1.0;
  return report;
}

double solve_xi(double a) {
  if (!(a >= 0.0)) throw std::invalid_argument("solve_xi: a must be >= 0");
  if (a == 0.0) return 0.0;
  auto f = [a](double x) { return (x - std::log1p(x)) - a; };
  double lo = 0.0;
  double hi = a + 2.0 * std::sqrt(a) + 1.0;
  while (hi - lo > 1e-12) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // adjacent doubles
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

double expected_threshold(double r, double max_cut, double budget) {
  if (!(budget >= 1.0)) throw std::invalid_argument("expected_threshold: budget must be >= 1");
  return r * max_cut / budget;
}

ProbeRecord run_probe(const Graph& graph, const LinearArrangement& order, double r, std::int64_t budget, double e,
                      const ProbeSettings& probe, RngSeed seed, std::size_t jobs) {
  DiffusionParams params;
  params.beta = r;
  params.delta = 1.0;
  params.rho = e;
  params.budget = BudgetSchedule(budget);
  SimulationOptions sim;
  sim.horizon = probe.horizon_multiplier * static_cast<double>(graph.n_nodes()) / params.delta;
  const Strategy strategy = PriorityPlan{order};
  const EpidemicState initial = EpidemicState::all_infected(graph);

  const std::size_t n = probe.n_runs;
  const auto needed = static_cast<std::size_t>(std::ceil(probe.success_fraction * static_cast<double>(n) - 1e-12));
  std::vector<Trajectory> results(n);
  std::vector<char> done(n, 0);
  std::size_t evaluated = 0, successes = 0;
  bool decided = false;

  // Batches keep the verdict a function of the run prefix only, so early
  // stopping gives the same answer for every worker count.
  const std::size_t batch = std::max<std::size_t>(1, jobs);
  for (std::size_t start = 0; start < n && !decided; start += batch) {
    const std::size_t end = std::min(n, start + batch);
    parallel_for(end - start, jobs, [&](std::size_t i) {
      const std::size_t run = start + i;
      results[run] = simulate(graph, params, strategy, initial, derive_seed(seed, run), sim);
    });
    for (std::size_t run = start; run < end; ++run) {
      ++evaluated;
      successes += results[run].extinct();
      const std::size_t failures = evaluated - successes;
      if (probe.early_stop && (successes >= needed || failures > n - needed)) {
        decided = true;
        break;
      }
    }
  }

  ProbeRecord record;
  record.e = e;
  record.runs_evaluated = evaluated;
  record.extinction_fraction = static_cast<double>(successes) / static_cast<double>(evaluated);
  double tau_sum = 0.0;
  for (std::size_t run = 0; run < evaluated; ++run) tau_sum += results[run].tau_or_horizon();
  record.mean_tau = tau_sum / static_cast<double>(evaluated);
  record.success = successes >= needed;
  return record;
}

ThresholdEstimate estimate_threshold(const Graph& graph, const LinearArrangement& order, double r,
                                     std::int64_t budget, const ProbeSettings& probe, double tol, RngSeed seed,
                                     std::size_t jobs) {
  if (!(r > 0.0)) throw std::invalid_argument("estimate_threshold: r must be > 0");
  if (budget < 1) throw std::invalid_argument("estimate_threshold: budget must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("estimate_threshold: tol must be > 0");
  if (probe.n_runs < 1) throw std::invalid_argument("estimate_threshold: n_runs must be >= 1");
  if (!(probe.success_fraction > 0.0 && probe.success_fraction <= 1.0))
    throw std::invalid_argument("estimate_threshold: success fraction must lie in (0, 1]");
  if (!(probe.horizon_multiplier > 0.0)) throw std::invalid_argument("estimate_threshold: horizon multiplier must be > 0");
  require_compatible(graph, order);

  ThresholdEstimate est;
  est.probe = probe;
  est.max_cut = graph.n_nodes() >= 2 ? cutwidth_profile(graph, order).max_cut : 0;
  est.naive_threshold = expected_threshold(r, static_cast<double>(est.max_cut), static_cast<double>(budget));

  // Every probe reuses the same run seeds (common random numbers), which keeps
  // the verdict monotone in e far more often than independent draws would.
  auto probe_at = [&](double e) {
    est.probes.push_back(run_probe(graph, order, r, budget, e, probe, seed, jobs));
    return est.probes.back().success;
  };

  if (est.max_cut == 0) {
    if (probe_at(0.0)) {
      est.e_star = est.e_low = est.e_high = 0.0;
      return est;
    }
  }

  const double cap = 10.0 * std::max(est.naive_threshold, tol);
  double lo = 0.0;
  double hi = std::max(est.naive_threshold, tol);
  while (!probe_at(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap)
      throw ThresholdError("no successful probe up to " + std::to_string(cap) +
                           "; the success criterion looks unattainable");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (probe_at(mid) ? hi : lo) = mid;
  }
  est.e_low = lo;
  est.e_high = hi;
  est.e_star = hi;
  return est;
}

}  // namespace cutplan
