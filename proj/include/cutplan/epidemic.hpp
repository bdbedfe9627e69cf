#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cutplan/arrangement.hpp"
#include "cutplan/graph.hpp"
#include "cutplan/rng.hpp"

namespace cutplan {

/// Piecewise-constant budget b(t): steps[i] = (start time, count), starts
/// strictly increasing with the first at t = 0.
class BudgetSchedule {
 public:
  struct Step {
    double start = 0.0;
    std::int64_t count = 0;
  };

  BudgetSchedule() = default;
  explicit BudgetSchedule(std::int64_t constant) : steps_{{0.0, constant}} { validate(); }
  explicit BudgetSchedule(std::vector<Step> steps) : steps_(std::move(steps)) { validate(); }

  std::int64_t at(double t) const;
  /// First change strictly after t, or +infinity.
  double next_change_after(double t) const;
  bool is_constant() const { return steps_.size() == 1; }
  std::span<const Step> steps() const { return steps_; }

 private:
  void validate() const;
  std::vector<Step> steps_{{0.0, 0}};
};

struct DiffusionParams {
  double beta = 0.0;   // infection rate per contagious edge
  double delta = 1.0;  // spontaneous recovery rate
  double rho = 0.0;    // extra recovery rate of a treated node
  BudgetSchedule budget{};

  double r() const { return beta / delta; }
  double e() const { return rho / delta; }
  /// Throws std::invalid_argument unless beta >= 0, delta > 0, rho >= 0.
  void validate() const;
};

/// X^T A (1 - X): edges joining an infected and a healthy node, each once.
std::int64_t count_contagious_edges(const Graph& graph, std::span<const std::uint8_t> infected);

/// Priority planning: the min(b, #infected) infected nodes with the smallest
/// positions in `order` receive a resource.
std::vector<std::uint8_t> allocate_resources(std::span<const std::uint8_t> infected,
                                             const LinearArrangement& order, std::int64_t budget);

/// Infection and resource vectors with the cached counts the simulator keeps.
struct EpidemicState {
  std::vector<std::uint8_t> infected;
  std::vector<std::uint8_t> resources;
  std::int64_t infected_count = 0;
  std::int64_t contagious_edge_count = 0;
  /// Infected-neighbor count of every node.
  std::vector<std::int32_t> infected_neighbors;

  static EpidemicState all_infected(const Graph& graph);
  /// Throws std::invalid_argument on a length mismatch or a resource on a healthy node.
  static EpidemicState from_vectors(const Graph& graph, std::vector<std::uint8_t> infected,
                                    std::vector<std::uint8_t> resources = {});
};

struct NoControl {};
struct PriorityPlan {
  LinearArrangement order;
};
using Strategy = std::variant<NoControl, PriorityPlan>;

enum class EventKind : std::uint8_t { infection, recovery };

struct Event {
  double time = 0.0;
  NodeId node = 0;
  EventKind kind = EventKind::infection;
};

struct Sample {
  double time = 0.0;
  std::int64_t infected = 0;
};

struct Trajectory {
  std::vector<Event> events;  // empty unless recording was requested
  std::optional<double> extinction_time;  // nullopt: censored at the horizon
  double horizon = 0.0;
  std::int64_t peak_infected = 0;
  std::size_t n_events = 0;
  /// Infected count at t = 0, dt, 2dt, ... up to extinction or horizon.
  std::vector<Sample> samples;

  bool extinct() const { return extinction_time.has_value(); }
  /// Extinction time, or the horizon for censored runs.
  double tau_or_horizon() const { return extinction_time.value_or(horizon); }
};

struct SimulationOptions {
  double horizon = 0.0;     // <= 0 selects default_horizon
  double sample_dt = 0.0;   // <= 0 disables curve sampling
  bool record_events = false;
  /// Every this many events, rebuild all rates from scratch and compare with
  /// the caches; throws std::logic_error on mismatch. 0 disables.
  std::size_t audit_every = 0;
};

/// 50 N / delta.
double default_horizon(const Graph& graph, const DiffusionParams& params);

/// Exact event-driven SIS simulation. Resources are reallocated after every
/// event and at every budget change.
Trajectory simulate(const Graph& graph, const DiffusionParams& params, const Strategy& strategy,
                    const EpidemicState& initial, RngSeed seed, const SimulationOptions& options = {});

}  // namespace cutplan
