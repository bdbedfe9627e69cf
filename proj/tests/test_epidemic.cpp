#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cutplan/ensemble.hpp"
#include "cutplan/epidemic.hpp"
#include "cutplan/generators.hpp"
#include "cutplan/ordering.hpp"
#include "oracles.hpp"

using namespace cutplan;

namespace {

std::vector<std::uint8_t> bits(std::initializer_list<int> values) { return {values.begin(), values.end()}; }

DiffusionParams params(double beta, double delta, double rho, std::int64_t budget) {
  DiffusionParams p;
  p.beta = beta;
  p.delta = delta;
  p.rho = rho;
  p.budget = BudgetSchedule(budget);
  return p;
}

Moments extinction_moments(const Graph& g, const DiffusionParams& p, const Strategy& strategy,
                           const EpidemicState& initial, std::size_t runs, std::uint64_t base) {
  std::vector<double> taus;
  for (std::size_t i = 0; i < runs; ++i) {
    const auto traj = simulate(g, p, strategy, initial, RngSeed{base + i});
    REQUIRE(traj.extinct());
    taus.push_back(*traj.extinction_time);
  }
  return summarize(taus);
}

}  // namespace

TEST_CASE("diffusion parameters") {
  const auto p = params(0.3, 2.0, 5.0, 1);
  CHECK(p.r() == doctest::Approx(0.15));
  CHECK(p.e() == doctest::Approx(2.5));
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(params(-1.0, 1.0, 0.0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(1.0, 0.0, 0.0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(1.0, 1.0, -2.0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(BudgetSchedule(-1), std::invalid_argument);
}

TEST_CASE("budget schedule") {
  const BudgetSchedule schedule({{0.0, 1}, {2.0, 3}, {5.0, 0}});
  CHECK(schedule.at(0.0) == 1);
  CHECK(schedule.at(1.999) == 1);
  CHECK(schedule.at(2.0) == 3);
  CHECK(schedule.at(100.0) == 0);
  CHECK(schedule.next_change_after(0.5) == 2.0);
  CHECK(schedule.next_change_after(2.0) == 5.0);
  CHECK(std::isinf(schedule.next_change_after(7.0)));
  CHECK_FALSE(schedule.is_constant());
  CHECK_THROWS_AS(BudgetSchedule({{1.0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(BudgetSchedule({{0.0, 2}, {0.0, 1}}), std::invalid_argument);
}

TEST_CASE("priority allocation") {
  CHECK(allocate_resources(bits({1, 0, 1, 1}), LinearArrangement::identity(4), 2) == bits({1, 0, 1, 0}));
  CHECK(allocate_resources(bits({0, 0, 0}), LinearArrangement::identity(3), 2) == bits({0, 0, 0}));
  CHECK(allocate_resources(bits({1, 1, 1}), LinearArrangement::from_order({2, 1, 0}), 1) == bits({0, 0, 1}));
  CHECK(allocate_resources(bits({1, 0, 1}), LinearArrangement::identity(3), 5) == bits({1, 0, 1}));
  CHECK(allocate_resources(bits({1, 1}), LinearArrangement::identity(2), 0) == bits({0, 0}));
}

TEST_CASE("contagious edges") {
  CHECK(count_contagious_edges(complete_graph(4), bits({1, 1, 1, 1})) == 0);
  CHECK(count_contagious_edges(complete_graph(4), bits({0, 0, 1, 0})) == 3);
  // Front after the first two positions of (1,3,4,2,5): nodes 1, 2, 4 still infected.
  CHECK(count_contagious_edges(oracle::fig1_graph(), bits({0, 1, 1, 0, 1})) == 1);
}

TEST_CASE("epidemic state") {
  const Graph g = path_graph(4);
  const auto s = EpidemicState::from_vectors(g, bits({1, 0, 1, 1}), bits({1, 0, 0, 1}));
  CHECK(s.infected_count == 3);
  CHECK(s.contagious_edge_count == 2);
  CHECK(s.infected_neighbors == std::vector<std::int32_t>{0, 2, 1, 1});
  CHECK_THROWS_AS(EpidemicState::from_vectors(g, bits({1, 0, 1, 1}), bits({0, 1, 0, 0})), std::invalid_argument);
  CHECK_THROWS_AS(EpidemicState::from_vectors(g, bits({1, 0, 1})), std::invalid_argument);
  const auto all = EpidemicState::all_infected(g);
  CHECK(all.infected_count == 4);
  CHECK(all.contagious_edge_count == 0);
}

TEST_CASE("closed-form extinction times") {
  const Strategy none = NoControl{};
  SUBCASE("single node") {
    const Graph g(1, {});
    const auto m = extinction_moments(g, params(0, 1, 0, 0), none, EpidemicState::all_infected(g), 10000, 1);
    CHECK(std::abs(m.mean - 1.0) <= 0.03);
  }
  SUBCASE("two isolated nodes") {
    const Graph g(2, {});
    const auto m = extinction_moments(g, params(0, 1, 0, 0), none, EpidemicState::all_infected(g), 10000, 1);
    CHECK(std::abs(m.mean - 1.5) <= 0.04);
  }
  SUBCASE("treated single node") {
    const Graph g(1, {});
    const Strategy plan = PriorityPlan{LinearArrangement::identity(1)};
    const auto m = extinction_moments(g, params(0, 1, 9, 1), plan, EpidemicState::all_infected(g), 10000, 1);
    CHECK(std::abs(m.mean - 0.1) <= 0.005);
  }
}

TEST_CASE("without spread, extinction time is the maximum of exponentials") {
  // Kolmogorov-Smirnov against F(t) = (1 - exp(-t))^k at alpha = 0.01.
  const int k = 6;
  const Graph g(k, {});
  std::vector<double> taus;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    taus.push_back(*simulate(g, params(0, 1, 0, 0), NoControl{}, EpidemicState::all_infected(g), RngSeed{s})
                        .extinction_time);
  }
  std::sort(taus.begin(), taus.end());
  double d = 0.0;
  const double n = static_cast<double>(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double f = std::pow(1.0 - std::exp(-taus[i]), k);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("trajectory invariants under audit") {
  const Graph g = gen_erdos_renyi(30, 0.15, RngSeed{2});
  OrderingConfig config;
  const Strategy plan = PriorityPlan{order_mcm(g, config).arrangement};
  SimulationOptions opts;
  opts.record_events = true;
  opts.audit_every = 1;
  opts.sample_dt = 0.5;
  opts.horizon = 200.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = params(0.8, 1.0, 4.0, 2);
    const auto traj = simulate(g, p, plan, EpidemicState::all_infected(g), RngSeed{s}, opts);
    REQUIRE(traj.n_events == traj.events.size());

    // Replay the log: times increase, infections need an infected neighbor,
    // recoveries need an infected node.
    std::vector<std::uint8_t> x(30, 1);
    std::int64_t count = 30, peak = 30;
    double last = 0.0;
    for (const auto& e : traj.events) {
      CHECK(e.time > last);
      last = e.time;
      if (e.kind == EventKind::infection) {
        CHECK(x[e.node] == 0);
        bool exposed = false;
        for (NodeId w : g.neighbors(e.node)) exposed |= x[w] == 1;
        CHECK(exposed);
        x[e.node] = 1;
        peak = std::max(peak, ++count);
      } else {
        CHECK(x[e.node] == 1);
        x[e.node] = 0;
        --count;
      }
    }
    CHECK(traj.peak_infected == peak);
    CHECK(traj.extinct() == (count == 0));
    if (traj.extinct()) CHECK(*traj.extinction_time == last);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
      CHECK(traj.samples[i].time == doctest::Approx(0.5 * static_cast<double>(i)));
  }
}

TEST_CASE("time-varying budget passes the audit") {
  const Graph g = gen_grid(4, 4);
  DiffusionParams p = params(1.0, 1.0, 6.0, 1);
  p.budget = BudgetSchedule({{0.0, 0}, {0.3, 3}, {1.0, 1}});
  SimulationOptions opts;
  opts.audit_every = 1;
  opts.horizon = 50.0;
  for (std::uint64_t s = 0; s < 10; ++s)
    CHECK_NOTHROW(simulate(g, p, PriorityPlan{LinearArrangement::identity(16)}, EpidemicState::all_infected(g),
                           RngSeed{s}, opts));
}

TEST_CASE("simulation determinism and censoring") {
  const Graph g = gen_preferential_attachment(60, 3, RngSeed{1});
  const auto p = params(2.0, 1.0, 0.0, 0);
  SimulationOptions opts;
  opts.horizon = 5.0;
  opts.sample_dt = 1.0;
  opts.record_events = true;
  const auto a = simulate(g, p, NoControl{}, EpidemicState::all_infected(g), RngSeed{9}, opts);
  const auto b = simulate(g, p, NoControl{}, EpidemicState::all_infected(g), RngSeed{9}, opts);
  CHECK(a.events.size() == b.events.size());
  CHECK(a.n_events == b.n_events);
  CHECK_FALSE(a.extinct());
  CHECK(a.tau_or_horizon() == 5.0);
  CHECK(a.samples.size() == 6);
  CHECK(default_horizon(g, p) == 50.0 * 60);
}

TEST_CASE("no infections means nonincreasing curves") {
  const Graph g = gen_erdos_renyi(25, 0.2, RngSeed{4});
  SimulationOptions opts;
  opts.sample_dt = 0.1;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto traj = simulate(g, params(0.0, 1.0, 2.0, 3), PriorityPlan{LinearArrangement::identity(25)},
                               EpidemicState::all_infected(g), RngSeed{s}, opts);
    for (std::size_t i = 1; i < traj.samples.size(); ++i) CHECK(traj.samples[i].infected <= traj.samples[i - 1].infected);
  }
}

TEST_CASE("ensembles") {
  const Graph g = gen_erdos_renyi(20, 0.2, RngSeed{3});
  const auto p = params(0.5, 1.0, 3.0, 1);
  const Strategy plan = PriorityPlan{LinearArrangement::identity(20)};
  const auto initial = EpidemicState::all_infected(g);

  SUBCASE("one run matches the trajectory") {
    EnsembleOptions opts;
    opts.base_seed = 17;
    const auto summary = run_ensemble(g, p, plan, initial, opts);
    const auto traj = simulate(g, p, plan, initial, RngSeed{17});
    CHECK(summary.n_runs == 1);
    CHECK(summary.mean_tau == traj.tau_or_horizon());
    CHECK(summary.median_tau == traj.tau_or_horizon());
    CHECK(summary.extinction_fraction == (traj.extinct() ? 1.0 : 0.0));
    CHECK(summary.runs[0].peak_infected == traj.peak_infected);
  }
  SUBCASE("identical regardless of worker count") {
    EnsembleOptions opts;
    opts.n_runs = 64;
    opts.base_seed = 5;
    opts.simulation.sample_dt = 0.25;
    const auto serial = run_ensemble(g, p, plan, initial, opts);
    opts.jobs = 4;
    CHECK(run_ensemble(g, p, plan, initial, opts) == serial);
    CHECK(run_ensemble(g, p, plan, initial, opts) == serial);
  }
  SUBCASE("no spread dies out before 20 / delta") {
    for (int k = 1; k <= 10; ++k) {
      const Graph iso(k, {});
      EnsembleOptions opts;
      opts.n_runs = 1000;
      opts.simulation.horizon = 20.0;
      CHECK(run_ensemble(iso, params(0, 1, 0, 0), NoControl{}, EpidemicState::all_infected(iso), opts)
                .extinction_fraction >= 0.99);
    }
  }
  SUBCASE("summary statistics") {
    const auto m = summarize({3.0, 1.0, 2.0, 10.0});
    CHECK(m.mean == 4.0);
    CHECK(m.median == 2.5);
    CHECK(m.stderr_mean == doctest::Approx(std::sqrt(50.0 / 3.0 / 4.0)));
    CHECK(summarize({2.0}).stderr_mean == 0.0);
  }
}
