#include "cutplan/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "cutplan/parallel.hpp"

namespace cutplan {

Moments summarize(std::vector<double> values) {
  Moments m;
  if (values.empty()) return m;
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.stderr_mean = std::sqrt(ss / (n - 1.0) / n);
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  m.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return m;
}

EnsembleSummary run_ensemble(const Graph& graph, const DiffusionParams& params, const Strategy& strategy,
                             const EpidemicState& initial, const EnsembleOptions& options) {
  if (options.n_runs < 1) throw std::invalid_argument("run_ensemble: n_runs must be >= 1");
  SimulationOptions sim = options.simulation;
  if (sim.horizon <= 0.0) sim.horizon = default_horizon(graph, params);
  sim.record_events = false;

  EnsembleSummary summary;
  summary.n_runs = options.n_runs;
  summary.runs.resize(options.n_runs);
  std::vector<std::int64_t> curve_sums;
  if (sim.sample_dt > 0.0) {
    const auto points = static_cast<std::size_t>(std::floor(sim.horizon / sim.sample_dt)) + 1;
    curve_sums.assign(points, 0);
  }
  std::mutex curve_mutex;

  parallel_for(options.n_runs, options.jobs, [&](std::size_t i) {
    const std::uint64_t seed = options.base_seed + i;
    const Trajectory traj = simulate(graph, params, strategy, initial, RngSeed{seed}, sim);
    summary.runs[i] = {seed, traj.extinct(), traj.tau_or_horizon(), traj.peak_infected, traj.n_events};
    if (!curve_sums.empty()) {
      // Integer sums commute, so the pooled curve is independent of scheduling.
      std::lock_guard lock(curve_mutex);
      for (std::size_t k = 0; k < traj.samples.size() && k < curve_sums.size(); ++k)
        curve_sums[k] += traj.samples[k].infected;
    }
  });

  std::vector<double> taus;
  taus.reserve(options.n_runs);
  for (const auto& run : summary.runs) {
    summary.n_extinct += run.extinct;
    taus.push_back(run.tau);
  }
  summary.extinction_fraction = static_cast<double>(summary.n_extinct) / static_cast<double>(options.n_runs);
  const Moments m = summarize(std::move(taus));
  summary.mean_tau = m.mean;
  summary.median_tau = m.median;
  summary.stderr_tau = m.stderr_mean;
  for (std::size_t k = 0; k < curve_sums.size(); ++k) {
    summary.curve_times.push_back(static_cast<double>(k) * sim.sample_dt);
    summary.mean_infected.push_back(static_cast<double>(curve_sums[k]) / static_cast<double>(options.n_runs));
  }
  return summary;
}

}  // namespace cutplan
