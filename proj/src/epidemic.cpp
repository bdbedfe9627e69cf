#include "cutplan/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cutplan {

void BudgetSchedule::validate() const {
  if (steps_.empty() || steps_.front().start != 0.0)
    throw std::invalid_argument("budget schedule must start at t = 0");
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (steps_[i].count < 0) throw std::invalid_argument("budget must be nonnegative");
    if (i > 0 && !(steps_[i].start > steps_[i - 1].start))
      throw std::invalid_argument("budget schedule start times must increase strictly");
  }
}

std::int64_t BudgetSchedule::at(double t) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                             [](double time, const Step& s) { return time < s.start; });
  return it == steps_.begin() ? steps_.front().count : std::prev(it)->count;
}

double BudgetSchedule::next_change_after(double t) const {
  auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                             [](double time, const Step& s) { return time < s.start; });
  return it == steps_.end() ? std::numeric_limits<double>::infinity() : it->start;
}

void DiffusionParams::validate() const {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (!(rho >= 0.0)) throw std::invalid_argument("rho must be >= 0");
}

std::int64_t count_contagious_edges(const Graph& graph, std::span<const std::uint8_t> infected) {
  if (infected.size() != static_cast<std::size_t>(graph.n_nodes()))
    throw std::invalid_argument("infection vector length does not match the graph");
  std::int64_t count = 0;
  for (const auto& e : graph.edges()) count += (infected[e.u] != 0) != (infected[e.v] != 0);
  return count;
}

std::vector<std::uint8_t> allocate_resources(std::span<const std::uint8_t> infected,
                                             const LinearArrangement& order, std::int64_t budget) {
  if (budget < 0) throw std::invalid_argument("budget must be nonnegative");
  if (infected.size() != static_cast<std::size_t>(order.size()))
    throw std::invalid_argument("infection vector length does not match the arrangement");
  std::vector<std::uint8_t> resources(infected.size(), 0);
  for (NodeId s = 0; s < order.size() && budget > 0; ++s) {
    const NodeId v = order.node_at_slot(s);
    if (infected[v]) {
      resources[v] = 1;
      --budget;
    }
  }
  return resources;
}

EpidemicState EpidemicState::all_infected(const Graph& graph) {
  return from_vectors(graph, std::vector<std::uint8_t>(static_cast<std::size_t>(graph.n_nodes()), 1));
}

EpidemicState EpidemicState::from_vectors(const Graph& graph, std::vector<std::uint8_t> infected,
                                          std::vector<std::uint8_t> resources) {
  const auto n = static_cast<std::size_t>(graph.n_nodes());
  if (infected.size() != n) throw std::invalid_argument("initial state length does not match the graph");
  if (resources.empty()) resources.assign(n, 0);
  if (resources.size() != n) throw std::invalid_argument("resource vector length does not match the graph");
  EpidemicState s;
  s.infected_neighbors.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    infected[v] = infected[v] ? 1 : 0;
    resources[v] = resources[v] ? 1 : 0;
    if (resources[v] && !infected[v])
      throw std::invalid_argument("inconsistent initial state: resource on healthy node " + std::to_string(v));
    s.infected_count += infected[v];
  }
  for (const auto& e : graph.edges()) {
    s.infected_neighbors[e.u] += infected[e.v];
    s.infected_neighbors[e.v] += infected[e.u];
  }
  s.infected = std::move(infected);
  s.resources = std::move(resources);
  s.contagious_edge_count = count_contagious_edges(graph, s.infected);
  return s;
}

double default_horizon(const Graph& graph, const DiffusionParams& params) {
  return 50.0 * static_cast<double>(graph.n_nodes()) / params.delta;
}

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0), top_(1) {
    while (top_ * 2 <= n) top_ *= 2;
  }

  void add(std::size_t i, std::int64_t delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  /// Smallest index whose inclusive prefix sum exceeds k.
  std::size_t find(std::int64_t k) const {
    std::size_t pos = 0;
    for (std::size_t step = top_; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= k) {
        pos += step;
        k -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<std::int64_t> tree_;
  std::size_t top_;
};

class Simulator {
 public:
  Simulator(const Graph& graph, const DiffusionParams& params, const LinearArrangement* order,
            const EpidemicState& initial)
      : graph_(graph),
        params_(params),
        order_(order),
        infected_(initial.infected),
        infected_neighbors_(initial.infected_neighbors),
        pressure_(static_cast<std::size_t>(graph.n_nodes())),
        by_slot_(static_cast<std::size_t>(graph.n_nodes())),
        list_index_(static_cast<std::size_t>(graph.n_nodes()), -1) {
    for (NodeId v = 0; v < graph.n_nodes(); ++v) {
      if (infected_[v]) {
        add_to_list(v);
        if (order_) by_slot_.add(static_cast<std::size_t>(order_->slot(v)), 1);
      } else {
        pressure_.add(static_cast<std::size_t>(v), infected_neighbors_[v]);
        contagious_edges_ += infected_neighbors_[v];
      }
    }
  }

  Trajectory run(RngSeed seed, const SimulationOptions& options) {
    Trajectory traj;
    traj.horizon = options.horizon > 0.0 ? options.horizon : default_horizon(graph_, params_);
    const double dt = options.sample_dt;
    std::int64_t next_sample = 0;
    auto sample_until = [&](double limit, bool inclusive) {
      if (dt <= 0.0) return;
      for (;;) {
        const double s = static_cast<double>(next_sample) * dt;
        if (s > traj.horizon || s > limit || (!inclusive && s == limit)) break;
        traj.samples.push_back({s, infected_count()});
        ++next_sample;
      }
    };

    Rng rng = make_rng(seed);
    double t = 0.0;
    budget_ = params_.budget.at(0.0);
    double next_change = params_.budget.next_change_after(0.0);
    traj.peak_infected = infected_count();

    while (infected_count() > 0) {
      const double rate_infection = params_.beta * static_cast<double>(contagious_edges_);
      const double rate_recovery = params_.delta * static_cast<double>(infected_count());
      const double rate_treatment = params_.rho * static_cast<double>(treated());
      const double total = rate_infection + rate_recovery + rate_treatment;
      const double t_next = t - std::log1p(-uniform01(rng)) / total;

      if (next_change <= t_next && next_change <= traj.horizon) {
        sample_until(next_change, false);
        t = next_change;
        budget_ = params_.budget.at(t);
        next_change = params_.budget.next_change_after(t);
        continue;
      }
      if (t_next > traj.horizon) {
        sample_until(traj.horizon, true);
        return traj;
      }
      sample_until(t_next, false);
      t = t_next;

      double x = uniform01(rng) * total;
      NodeId node;
      EventKind kind;
      if (x < rate_infection) {
        const auto k = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(contagious_edges_)));
        node = static_cast<NodeId>(pressure_.find(k));
        kind = EventKind::infection;
        infect(node);
      } else if (x - rate_infection < rate_recovery || treated() == 0) {
        node = members_[uniform_below(rng, members_.size())];
        kind = EventKind::recovery;
        recover(node);
      } else {
        const auto k = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(treated())));
        node = order_->node_at_slot(static_cast<NodeId>(by_slot_.find(k)));
        kind = EventKind::recovery;
        recover(node);
      }
      ++traj.n_events;
      if (options.record_events) traj.events.push_back({t, node, kind});
      traj.peak_infected = std::max(traj.peak_infected, infected_count());
      if (options.audit_every && traj.n_events % options.audit_every == 0) audit();
    }
    traj.extinction_time = t;
    sample_until(t, true);
    if (dt > 0.0 && static_cast<double>(next_sample) * dt <= traj.horizon)
      traj.samples.push_back({static_cast<double>(next_sample) * dt, 0});
    return traj;
  }

 private:
  std::int64_t infected_count() const { return static_cast<std::int64_t>(members_.size()); }
  std::int64_t treated() const { return order_ ? std::min(budget_, infected_count()) : 0; }

  void add_to_list(NodeId v) {
    list_index_[v] = static_cast<std::int64_t>(members_.size());
    members_.push_back(v);
  }

  void remove_from_list(NodeId v) {
    const auto i = static_cast<std::size_t>(list_index_[v]);
    members_[i] = members_.back();
    list_index_[members_[i]] = static_cast<std::int64_t>(i);
    members_.pop_back();
    list_index_[v] = -1;
  }

  void infect(NodeId v) {
    infected_[v] = 1;
    add_to_list(v);
    if (order_) by_slot_.add(static_cast<std::size_t>(order_->slot(v)), 1);
    pressure_.add(static_cast<std::size_t>(v), -infected_neighbors_[v]);
    contagious_edges_ -= infected_neighbors_[v];
    for (NodeId u : graph_.neighbors(v)) {
      ++infected_neighbors_[u];
      if (!infected_[u]) {
        pressure_.add(static_cast<std::size_t>(u), 1);
        ++contagious_edges_;
      }
    }
  }

  void recover(NodeId v) {
    infected_[v] = 0;
    remove_from_list(v);
    if (order_) by_slot_.add(static_cast<std::size_t>(order_->slot(v)), -1);
    for (NodeId u : graph_.neighbors(v)) {
      --infected_neighbors_[u];
      if (!infected_[u]) {
        pressure_.add(static_cast<std::size_t>(u), -1);
        --contagious_edges_;
      }
    }
    pressure_.add(static_cast<std::size_t>(v), infected_neighbors_[v]);
    contagious_edges_ += infected_neighbors_[v];
  }

  void audit() const {
    const EpidemicState fresh = EpidemicState::from_vectors(graph_, infected_);
    if (fresh.infected_count != infected_count()) throw std::logic_error("audit: infected count drifted");
    if (fresh.contagious_edge_count != contagious_edges_) throw std::logic_error("audit: contagious edge count drifted");
    if (fresh.infected_neighbors != infected_neighbors_) throw std::logic_error("audit: infection pressure drifted");
    if (!order_) return;
    const auto expected = allocate_resources(infected_, *order_, budget_);
    std::vector<std::uint8_t> actual(infected_.size(), 0);
    for (std::int64_t k = 0; k < treated(); ++k) actual[order_->node_at_slot(static_cast<NodeId>(by_slot_.find(k)))] = 1;
    if (actual != expected) throw std::logic_error("audit: resource placement differs from priority allocation");
  }

  const Graph& graph_;
  const DiffusionParams& params_;
  const LinearArrangement* order_;
  std::vector<std::uint8_t> infected_;
  std::vector<std::int32_t> infected_neighbors_;
  Fenwick pressure_;  // healthy node -> infected-neighbor count
  Fenwick by_slot_;   // slot -> 1 if the node there is infected
  std::vector<NodeId> members_;
  std::vector<std::int64_t> list_index_;
  std::int64_t contagious_edges_ = 0;
  std::int64_t budget_ = 0;
};

}  // namespace

Trajectory simulate(const Graph& graph, const DiffusionParams& params, const Strategy& strategy,
                    const EpidemicState& initial, RngSeed seed, const SimulationOptions& options) {
  params.validate();
  if (initial.infected.size() != static_cast<std::size_t>(graph.n_nodes()))
    throw std::invalid_argument("initial state does not match the graph");
  // Re-derive the caches so a hand-built state cannot smuggle in stale counts.
  const EpidemicState checked = EpidemicState::from_vectors(graph, initial.infected, initial.resources);
  const LinearArrangement* order = nullptr;
  if (const auto* plan = std::get_if<PriorityPlan>(&strategy)) {
    require_compatible(graph, plan->order);
    order = &plan->order;
  }
  Simulator sim(graph, params, order, checked);
  return sim.run(seed, options);
}

}  // namespace cutplan
