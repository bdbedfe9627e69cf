#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cutplan/epidemic.hpp"

namespace cutplan {

struct RunSummary {
  std::uint64_t seed = 0;
  bool extinct = false;
  double tau = 0.0;  // extinction time, or the horizon when censored
  std::int64_t peak_infected = 0;
  std::size_t n_events = 0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct EnsembleSummary {
  std::size_t n_runs = 0;
  std::size_t n_extinct = 0;
  double extinction_fraction = 0.0;
  /// Moments of tau over all runs; censored runs contribute the horizon.
  double mean_tau = 0.0;
  double median_tau = 0.0;
  double stderr_tau = 0.0;
  std::vector<RunSummary> runs;
  /// Pooled curve: mean infected count at each sample time (extinct runs
  /// count as 0). Empty when sampling is disabled.
  std::vector<double> curve_times;
  std::vector<double> mean_infected;

  friend bool operator==(const EnsembleSummary&, const EnsembleSummary&) = default;
};

struct EnsembleOptions {
  std::size_t n_runs = 1;
  std::uint64_t base_seed = 0;
  SimulationOptions simulation{};
  std::size_t jobs = 1;
};

/// Runs seeds base_seed .. base_seed + n_runs - 1. The summary does not
/// depend on `jobs`.
EnsembleSummary run_ensemble(const Graph& graph, const DiffusionParams& params, const Strategy& strategy,
                             const EpidemicState& initial, const EnsembleOptions& options);

/// Mean, median and standard error of a sample (stderr 0 for n < 2).
struct Moments {
  double mean = 0.0;
  double median = 0.0;
  double stderr_mean = 0.0;
};
Moments summarize(std::vector<double> values);

}  // namespace cutplan
