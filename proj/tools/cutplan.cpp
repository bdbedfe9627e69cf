#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cutplan/arrangement.hpp"
#include "cutplan/bounds.hpp"
#include "cutplan/edge_list.hpp"
#include "cutplan/ensemble.hpp"
#include "cutplan/epidemic.hpp"
#include "cutplan/errors.hpp"
#include "cutplan/experiment.hpp"
#include "cutplan/generators.hpp"
#include "cutplan/io.hpp"
#include "cutplan/ordering.hpp"
#include "cutplan/parallel.hpp"

namespace fs = std::filesystem;
using namespace cutplan;

namespace {

/// Signals a missing or inconsistent flag combination.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenArgs {
  std::string model;
  NodeId n = 0, m = 0, k = 0, rows = 0, cols = 0;
  double p = 0.0, beta = 0.0, radius = 0.0;
  std::uint64_t seed = 0;
  fs::path out;
};

struct OrderArgs {
  fs::path graph, out, cuts;
  std::string strategy;
  std::uint64_t seed = 0;
  std::optional<std::size_t> clusters, swap_iterations, recompute_every;
  std::string objective = "p_sum";
};

struct SimulateArgs {
  fs::path graph, order, out_dir;
  double beta = 0.0, delta = 1.0, rho = 0.0, horizon = 0.0, sample_dt = 1.0;
  std::int64_t budget = 1;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  bool events = false;
};

struct ThresholdArgs {
  fs::path graph, order, out_dir;
  double r = 0.0, horizon_multiplier = 10.0, success_fraction = 0.8, tol_fraction = 0.02;
  std::optional<double> tol;
  std::int64_t budget = 1;
  std::size_t runs = 40;
  std::uint64_t seed = 0;
};

struct BoundArgs {
  fs::path graph, order, out;
  std::optional<std::int64_t> n, dmax, cmax;
  std::optional<double> beta, r;
  double delta = 1.0, rho = 0.0;
  double budget = 1.0;
};

Graph load_graph(const fs::path& path) {
  LoadedGraph loaded = load_edge_list(path);
  if (loaded.dropped_self_loops > 0)
    std::cerr << "cutplan: warning: dropped " << loaded.dropped_self_loops << " self-loop(s) from " << path.string()
              << '\n';
  return std::move(loaded.graph);
}

void require(const CLI::App* cmd, const std::string& flag, const std::string& context) {
  if (cmd->count(flag) == 0) throw UsageError(flag + " is required " + context);
}

void cmd_gen(const CLI::App* cmd, const GenArgs& a) {
  const std::string ctx = "for --model " + a.model;
  std::ostringstream header;
  header << "model=" << a.model << " seed=" << a.seed;
  Graph graph;
  const RngSeed seed{a.seed};
  if (a.model == "er") {
    require(cmd, "--n", ctx), require(cmd, "--p", ctx);
    header << " n=" << a.n << " p=" << format_real(a.p);
    graph = gen_erdos_renyi(a.n, a.p, seed);
  } else if (a.model == "ba") {
    require(cmd, "--n", ctx), require(cmd, "--m", ctx);
    header << " n=" << a.n << " m=" << a.m;
    graph = gen_preferential_attachment(a.n, a.m, seed);
  } else if (a.model == "ws") {
    require(cmd, "--n", ctx), require(cmd, "--k", ctx), require(cmd, "--beta", ctx);
    header << " n=" << a.n << " k=" << a.k << " beta=" << format_real(a.beta);
    graph = gen_small_world(a.n, a.k, a.beta, seed);
  } else if (a.model == "geo") {
    require(cmd, "--n", ctx), require(cmd, "--radius", ctx);
    header << " n=" << a.n << " radius=" << format_real(a.radius);
    graph = gen_geometric(a.n, a.radius, seed);
  } else {
    require(cmd, "--rows", ctx), require(cmd, "--cols", ctx);
    header << " rows=" << a.rows << " cols=" << a.cols;
    graph = gen_grid(a.rows, a.cols);
  }
  save_edge_list(graph, a.out, header.str());
  std::cout << "nodes=" << graph.n_nodes() << " edges=" << graph.n_edges() << '\n';
}

void cmd_order(const OrderArgs& a) {
  const Graph graph = load_graph(a.graph);
  OrderingConfig config;
  config.n_clusters = a.clusters;
  config.swap_iterations = a.swap_iterations;
  config.objective = a.objective == "max_cutwidth" ? SwapObjective::max_cutwidth : SwapObjective::p_sum;
  config.validate();
  const LinearArrangement la = build_order(graph, a.strategy, RngSeed{a.seed}, config, a.recompute_every);

  CutwidthProfile profile;
  if (graph.n_nodes() >= 2) profile = cutwidth_profile(graph, la);
  const double p_sum = p_sum_cost(graph, la, 1);
  const fs::path cuts = a.cuts.empty() ? fs::path(a.out.string() + ".cuts.csv") : a.cuts;
  save_arrangement(la, a.out);
  atomic_write(cuts, format_cut_profile(profile));
  std::cout << "max_cutwidth=" << profile.max_cut << " p_sum=" << format_real(p_sum) << '\n';
}

std::string format_trajectory(const Trajectory& traj) {
  CsvWriter csv({"time", "infected_count"});
  for (const auto& s : traj.samples) {
    csv.cell(s.time).cell(static_cast<long long>(s.infected));
    csv.end_row();
  }
  return csv.str();
}

std::string format_events(const Trajectory& traj) {
  CsvWriter csv({"time", "node", "kind"});
  for (const auto& e : traj.events) {
    csv.cell(e.time).cell(static_cast<long long>(e.node));
    csv.cell(e.kind == EventKind::infection ? "infection" : "recovery");
    csv.end_row();
  }
  return csv.str();
}

void cmd_simulate(const SimulateArgs& a, std::size_t jobs) {
  const Graph graph = load_graph(a.graph);
  Strategy strategy = NoControl{};
  if (!a.order.empty()) {
    LinearArrangement order = load_arrangement(a.order);
    require_compatible(graph, order);
    strategy = PriorityPlan{std::move(order)};
  }
  DiffusionParams params;
  params.beta = a.beta;
  params.delta = a.delta;
  params.rho = a.rho;
  params.budget = BudgetSchedule(a.budget);
  params.validate();
  if (a.runs < 1) throw UsageError("--runs must be >= 1");

  const EpidemicState initial = EpidemicState::all_infected(graph);
  EnsembleOptions opts;
  opts.n_runs = a.runs;
  opts.base_seed = a.seed;
  opts.simulation.horizon = a.horizon;
  opts.simulation.sample_dt = a.sample_dt;
  opts.jobs = jobs;
  const EnsembleSummary summary = run_ensemble(graph, params, strategy, initial, opts);
  const double horizon = a.horizon > 0.0 ? a.horizon : default_horizon(graph, params);

  CsvWriter runs({"run", "seed", "extinct", "tau", "peak_infected", "n_events"});
  for (std::size_t i = 0; i < summary.runs.size(); ++i) {
    const auto& run = summary.runs[i];
    runs.cell(static_cast<unsigned long long>(i)).cell(static_cast<unsigned long long>(run.seed)).cell(run.extinct);
    runs.cell(run.tau).cell(static_cast<long long>(run.peak_infected)).cell(static_cast<unsigned long long>(run.n_events));
    runs.end_row();
  }
  CsvWriter sum({"n_runs", "n_extinct", "extinction_fraction", "mean_tau", "median_tau", "stderr_tau", "horizon"});
  sum.cell(static_cast<unsigned long long>(summary.n_runs)).cell(static_cast<unsigned long long>(summary.n_extinct));
  sum.cell(summary.extinction_fraction).cell(summary.mean_tau).cell(summary.median_tau).cell(summary.stderr_tau);
  sum.cell(horizon);
  sum.end_row();
  CsvWriter curve({"time", "mean_infected"});
  for (std::size_t k = 0; k < summary.curve_times.size(); ++k) {
    curve.cell(summary.curve_times[k]).cell(summary.mean_infected[k]);
    curve.end_row();
  }

  std::optional<Trajectory> single;
  if (a.runs == 1) {
    SimulationOptions sim = opts.simulation;
    sim.record_events = a.events;
    single = simulate(graph, params, strategy, initial, RngSeed{a.seed}, sim);
  }

  fs::create_directories(a.out_dir);
  runs.save(a.out_dir / "runs.csv");
  sum.save(a.out_dir / "summary.csv");
  curve.save(a.out_dir / "curve.csv");
  if (single) {
    atomic_write(a.out_dir / "trajectory.csv", format_trajectory(*single));
    if (a.events) atomic_write(a.out_dir / "events.csv", format_events(*single));
  }
  std::cout << "extinction_fraction=" << format_real(summary.extinction_fraction)
            << " mean_tau=" << format_real(summary.mean_tau) << '\n';
}

void cmd_threshold(const ThresholdArgs& a, std::size_t jobs) {
  const Graph graph = load_graph(a.graph);
  const LinearArrangement order = load_arrangement(a.order);
  require_compatible(graph, order);
  ProbeSettings probe;
  probe.n_runs = a.runs;
  probe.horizon_multiplier = a.horizon_multiplier;
  probe.success_fraction = a.success_fraction;

  const std::int64_t c_max = graph.n_nodes() >= 2 ? cutwidth_profile(graph, order).max_cut : 0;
  const double naive = expected_threshold(a.r, static_cast<double>(c_max), static_cast<double>(a.budget));
  const double tol = a.tol ? *a.tol : (naive > 0.0 ? a.tol_fraction * naive : a.tol_fraction);
  const ThresholdEstimate est = estimate_threshold(graph, order, a.r, a.budget, probe, tol, RngSeed{a.seed}, jobs);

  CsvWriter result({"e_star", "e_low", "e_high", "C_max", "naive_threshold", "r", "budget", "runs",
                    "success_fraction", "horizon_multiplier", "tol"});
  result.cell(est.e_star).cell(est.e_low).cell(est.e_high).cell(static_cast<long long>(est.max_cut));
  result.cell(est.naive_threshold).cell(a.r).cell(static_cast<long long>(a.budget));
  result.cell(static_cast<unsigned long long>(a.runs)).cell(a.success_fraction).cell(a.horizon_multiplier).cell(tol);
  result.end_row();
  CsvWriter probes({"e", "extinction_fraction", "mean_tau"});
  for (const auto& p : est.probes) {
    probes.cell(p.e).cell(p.extinction_fraction).cell(p.mean_tau);
    probes.end_row();
  }
  fs::create_directories(a.out_dir);
  result.save(a.out_dir / "threshold.csv");
  probes.save(a.out_dir / "probes.csv");
  std::cout << "e_star=" << format_real(est.e_star) << " e_low=" << format_real(est.e_low)
            << " naive_threshold=" << format_real(est.naive_threshold) << '\n';
}

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

void cmd_bound(const BoundArgs& a) {
  std::int64_t n = 0, dmax = 0, cmax = 0;
  if (!a.graph.empty()) {
    if (a.order.empty()) throw UsageError("--order is required with --graph");
    if (a.n || a.dmax || a.cmax) throw UsageError("--n/--dmax/--cmax cannot be combined with --graph");
    const Graph graph = load_graph(a.graph);
    const LinearArrangement order = load_arrangement(a.order);
    require_compatible(graph, order);
    n = graph.n_nodes();
    dmax = static_cast<std::int64_t>(graph.max_degree());
    cmax = n >= 2 ? cutwidth_profile(graph, order).max_cut : 0;
  } else {
    if (!a.n || !a.dmax || !a.cmax) throw UsageError("either --graph/--order or all of --n, --dmax, --cmax are required");
    n = *a.n, dmax = *a.dmax, cmax = *a.cmax;
  }
  if (a.beta.has_value() == a.r.has_value()) throw UsageError("exactly one of --beta and --r is required");
  const double beta = a.beta ? *a.beta : *a.r * a.delta;
  const BoundReport rep = theorem1_bound(n, dmax, cmax, beta, a.delta, a.rho, a.budget);

  const std::vector<std::pair<std::string, std::string>> rows{
      {"n_nodes", std::to_string(rep.n_nodes)},
      {"max_degree", std::to_string(rep.max_degree)},
      {"C_max", std::to_string(rep.max_cut)},
      {"beta", format_real(rep.beta)},
      {"delta", format_real(rep.delta)},
      {"rho", format_real(rep.rho)},
      {"budget", format_real(rep.budget)},
      {"epsilon", optional_real(rep.epsilon)},
      {"required_rho", format_real(rep.required_rho)},
      {"condition_holds", rep.condition_holds ? "true" : "false"},
      {"extinction_bound", optional_real(rep.extinction_bound)},
      {"corollary_threshold", format_real(rep.corollary_threshold)},
      {"naive_threshold", format_real(rep.naive_threshold)},
      {"degenerate", rep.degenerate ? "true" : "false"},
  };
  std::vector<std::string> header;
  for (const auto& [key, value] : rows) header.push_back(key);
  CsvWriter csv(header);
  for (const auto& [key, value] : rows) {
    std::printf("%-20s %s\n", key.c_str(), value.c_str());
    csv.cell(value);
  }
  csv.end_row();
  std::cout << '\n' << csv.str();
  if (!a.out.empty()) csv.save(a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resource planning against SIS epidemics by cutwidth minimization"};
  app.require_subcommand(1);
  std::size_t jobs = default_jobs();

  auto add_jobs = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", jobs, "Worker threads (default: CUTPLAN_JOBS or hardware concurrency)")
        ->check(CLI::PositiveNumber);
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random network and write it as an edge list");
  gen_cmd->add_option("--model", gen.model)->required()->check(CLI::IsMember({"er", "ba", "ws", "geo", "grid"}));
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--p", gen.p);
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--k", gen.k);
  gen_cmd->add_option("--beta", gen.beta, "Rewiring probability (ws)");
  gen_cmd->add_option("--radius", gen.radius);
  gen_cmd->add_option("--rows", gen.rows);
  gen_cmd->add_option("--cols", gen.cols);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out)->required();
  add_jobs(gen_cmd);

  OrderArgs order;
  auto* order_cmd = app.add_subcommand("order", "Compute a node ordering and its cutwidth profile");
  order_cmd->add_option("--graph", order.graph)->required();
  order_cmd->add_option("--strategy", order.strategy)
      ->required()
      ->check(CLI::IsMember({"rand", "mn", "ln", "lrsr", "mcm", "exact"}));
  order_cmd->add_option("--seed", order.seed);
  order_cmd->add_option("--out", order.out)->required();
  order_cmd->add_option("--cuts", order.cuts, "Cut-profile CSV (default: <out>.cuts.csv)");
  order_cmd->add_option("--clusters", order.clusters);
  order_cmd->add_option("--swap-iterations", order.swap_iterations);
  order_cmd->add_option("--recompute-every", order.recompute_every)->check(CLI::PositiveNumber);
  order_cmd->add_option("--objective", order.objective)->check(CLI::IsMember({"p_sum", "max_cutwidth"}));
  add_jobs(order_cmd);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run an ensemble of controlled SIS simulations");
  sim_cmd->add_option("--graph", sim.graph)->required();
  sim_cmd->add_option("--order", sim.order, "Arrangement file; omit for no control");
  sim_cmd->add_option("--beta", sim.beta)->required();
  sim_cmd->add_option("--delta", sim.delta);
  sim_cmd->add_option("--rho", sim.rho);
  sim_cmd->add_option("--budget", sim.budget);
  sim_cmd->add_option("--runs", sim.runs);
  sim_cmd->add_option("--horizon", sim.horizon, "Time horizon (default 50 N / delta)");
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--sample-dt", sim.sample_dt);
  sim_cmd->add_option("--out-dir", sim.out_dir)->required();
  sim_cmd->add_flag("--events", sim.events, "Also write events.csv (single run only)");
  add_jobs(sim_cmd);

  ThresholdArgs thr;
  auto* thr_cmd = app.add_subcommand("threshold", "Estimate the epidemic threshold of a priority plan");
  thr_cmd->add_option("--graph", thr.graph)->required();
  thr_cmd->add_option("--order", thr.order)->required();
  thr_cmd->add_option("--r", thr.r)->required();
  thr_cmd->add_option("--budget", thr.budget);
  thr_cmd->add_option("--runs", thr.runs);
  thr_cmd->add_option("--horizon-multiplier", thr.horizon_multiplier);
  thr_cmd->add_option("--success-fraction", thr.success_fraction);
  thr_cmd->add_option("--tol", thr.tol, "Absolute bracket width");
  thr_cmd->add_option("--tol-fraction", thr.tol_fraction, "Bracket width relative to r C_max / b_tot");
  thr_cmd->add_option("--seed", thr.seed);
  thr_cmd->add_option("--out-dir", thr.out_dir)->required();
  add_jobs(thr_cmd);

  BoundArgs bnd;
  auto* bnd_cmd = app.add_subcommand("bound", "Evaluate the extinction-time bound");
  bnd_cmd->add_option("--graph", bnd.graph);
  bnd_cmd->add_option("--order", bnd.order);
  bnd_cmd->add_option("--n", bnd.n);
  bnd_cmd->add_option("--dmax", bnd.dmax);
  bnd_cmd->add_option("--cmax", bnd.cmax);
  bnd_cmd->add_option("--beta", bnd.beta);
  bnd_cmd->add_option("--r", bnd.r);
  bnd_cmd->add_option("--delta", bnd.delta);
  bnd_cmd->add_option("--rho", bnd.rho)->required();
  bnd_cmd->add_option("--budget", bnd.budget);
  bnd_cmd->add_option("--out", bnd.out, "Also write the CSV row to this file");
  add_jobs(bnd_cmd);

  fs::path config_path;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a batch experiment from a config file");
  exp_cmd->add_option("config", config_path)->required();
  add_jobs(exp_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cutplan: error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (gen_cmd->parsed()) cmd_gen(gen_cmd, gen);
    else if (order_cmd->parsed()) cmd_order(order);
    else if (sim_cmd->parsed()) cmd_simulate(sim, jobs);
    else if (thr_cmd->parsed()) cmd_threshold(thr, jobs);
    else if (bnd_cmd->parsed()) cmd_bound(bnd);
    else if (exp_cmd->parsed()) std::cout << run_experiment(load_experiment_config(config_path), jobs).string() << '\n';
  } catch (const UsageError& e) {
    std::cerr << "cutplan: usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::string message = e.what();
    for (char& c : message)
      if (c == '\n') c = ' ';
    std::cerr << "cutplan: error: " << message << '\n';
    return 1;
  }
  return 0;
}
