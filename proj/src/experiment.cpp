#include "cutplan/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "cutplan/edge_list.hpp"
#include "cutplan/ensemble.hpp"
#include "cutplan/epidemic.hpp"
#include "cutplan/generators.hpp"
#include "cutplan/io.hpp"
#include "cutplan/parallel.hpp"

namespace cutplan {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [end, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && end == last;
}

/// Collects field-path problems while reading typed values.
class Reader {
 public:
  std::vector<std::string> problems;

  template <typename T>
  void number(const std::string& field, const std::string& text, T& out) {
    if (!parse_number(text, out)) problems.push_back(field + ": not a valid number '" + text + "'");
  }

  void numbers(const std::string& field, const std::string& text, std::vector<double>& out) {
    out.clear();
    for (const auto& item : split_list(text)) {
      double v = 0.0;
      if (!parse_number(item, v)) {
        problems.push_back(field + ": not a valid number '" + item + "'");
        continue;
      }
      out.push_back(v);
    }
    if (out.empty()) problems.push_back(field + ": empty list");
  }

  template <typename T>
  void count(const std::string& field, const std::string& text, T& out) {
    long long v = 0;
    if (!parse_number(text, v) || v < 0) {
      problems.push_back(field + ": expected a nonnegative integer, got '" + text + "'");
      return;
    }
    out = static_cast<T>(v);
  }
};

void read_network_field(Reader& reader, NetworkSpec& spec, const std::string& field, const std::string& key,
                        const std::string& value) {
  if (field == "model") spec.model = value;
  else if (field == "n") reader.count(key, value, spec.n);
  else if (field == "p") reader.number(key, value, spec.p);
  else if (field == "m") reader.count(key, value, spec.m);
  else if (field == "k") reader.count(key, value, spec.k);
  else if (field == "beta") reader.number(key, value, spec.beta);
  else if (field == "radius") reader.number(key, value, spec.radius);
  else if (field == "rows") reader.count(key, value, spec.rows);
  else if (field == "cols") reader.count(key, value, spec.cols);
  else if (field == "path") spec.path = value;
  else if (field == "instances") reader.count(key, value, spec.instances);
  else reader.problems.push_back(key + ": unknown network field");
}

NodeId network_size(const NetworkSpec& spec) {
  if (spec.model == "grid") return spec.rows * spec.cols;
  return spec.n;
}

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::threshold_vs_cutwidth: return "threshold_vs_cutwidth";
    case ExperimentKind::strategy_comparison: return "strategy_comparison";
    case ExperimentKind::bound_check: return "bound_check";
  }
  return "unknown";
}

}  // namespace

std::vector<std::string> NetworkSpec::problems(const std::string& prefix) const {
  std::vector<std::string> out;
  auto need = [&](bool ok, const std::string& field, const std::string& what) {
    if (!ok) out.push_back(prefix + "." + field + ": " + what);
  };
  need(instances >= 1, "instances", "must be >= 1");
  if (model == "er") {
    need(n >= 1, "n", "required, >= 1");
    need(p >= 0.0 && p <= 1.0, "p", "required, in [0, 1]");
  } else if (model == "ba") {
    need(m >= 1, "m", "required, >= 1");
    need(n > m, "n", "required, > m");
  } else if (model == "ws") {
    need(k % 2 == 0, "k", "must be even");
    need(n > k, "n", "required, > k");
    need(beta >= 0.0 && beta <= 1.0, "beta", "must lie in [0, 1]");
  } else if (model == "geo") {
    need(n >= 1, "n", "required, >= 1");
    need(radius > 0.0, "radius", "required, > 0");
  } else if (model == "grid") {
    need(rows >= 1, "rows", "required, >= 1");
    need(cols >= 1, "cols", "required, >= 1");
  } else if (model == "file") {
    need(!path.empty(), "path", "required");
    need(path.empty() || std::filesystem::exists(path), "path", "file does not exist: " + path.string());
  } else {
    need(false, "model", "expected one of er, ba, ws, geo, grid, file");
  }
  return out;
}

Graph build_network(const NetworkSpec& spec, RngSeed seed) {
  if (spec.model == "er") return gen_erdos_renyi(spec.n, spec.p, seed);
  if (spec.model == "ba") return gen_preferential_attachment(spec.n, spec.m, seed);
  if (spec.model == "ws") return gen_small_world(spec.n, spec.k, spec.beta, seed);
  if (spec.model == "geo") return gen_geometric(spec.n, spec.radius, seed);
  if (spec.model == "grid") return gen_grid(spec.rows, spec.cols);
  if (spec.model == "file") return load_edge_list(spec.path).graph;
  throw std::invalid_argument("unknown network model '" + spec.model + "'");
}

bool is_known_strategy(const std::string& name) {
  static const std::set<std::string> known{"rand", "mn", "ln", "lrsr", "mcm", "exact"};
  return known.count(name) > 0;
}

LinearArrangement build_order(const Graph& graph, const std::string& strategy, RngSeed seed,
                              const OrderingConfig& mcm_config, std::optional<std::size_t> lrsr_recompute) {
  if (strategy == "rand") return order_random(graph, seed);
  if (strategy == "mn") return order_most_neighbors(graph);
  if (strategy == "ln") return order_least_neighbors(graph);
  if (strategy == "lrsr")
    return order_lrsr(graph, lrsr_recompute.value_or(default_lrsr_recompute(graph.n_nodes())));
  if (strategy == "mcm") {
    OrderingConfig config = mcm_config;
    config.seed = seed;
    return order_mcm(graph, config).arrangement;
  }
  if (strategy == "exact") return order_exact_min_cutwidth(graph).arrangement;
  throw std::invalid_argument("unknown strategy '" + strategy + "'");
}

ConfigError::ConfigError(const std::vector<std::string>& problems)
    : std::runtime_error("invalid experiment config: " + join(problems, "; ")), problems_(problems) {}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig config;
  Reader reader;
  std::map<std::string, std::size_t> network_index;
  std::set<std::string> seen;
  bool have_kind = false, have_output = false, have_r = false, have_beta = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      reader.problems.push_back("line " + std::to_string(line_no) + ": expected key=value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      reader.problems.push_back(key + ": duplicate key");
      continue;
    }

    if (key.rfind("network.", 0) == 0) {
      const std::string rest = key.substr(8);
      const auto dot = rest.find('.');
      const std::string label = dot == std::string::npos ? "network" : rest.substr(0, dot);
      const std::string field = dot == std::string::npos ? rest : rest.substr(dot + 1);
      auto [it, inserted] = network_index.try_emplace(label, config.networks.size());
      if (inserted) {
        config.networks.emplace_back();
        config.networks.back().label = label;
      }
      read_network_field(reader, config.networks[it->second], field, key, value);
      continue;
    }

    if (key == "experiment.kind") {
      have_kind = true;
      if (value == "threshold_vs_cutwidth") config.kind = ExperimentKind::threshold_vs_cutwidth;
      else if (value == "strategy_comparison") config.kind = ExperimentKind::strategy_comparison;
      else if (value == "bound_check") config.kind = ExperimentKind::bound_check;
      else reader.problems.push_back(key + ": unknown experiment kind '" + value + "'");
    } else if (key == "experiment.seed") {
      reader.number(key, value, config.master_seed.value);
    } else if (key == "experiment.output_dir") {
      have_output = !value.empty();
      config.output_dir = value;
    } else if (key == "strategies") {
      config.strategies = split_list(value);
    } else if (key == "diffusion.r") {
      have_r = true;
      reader.numbers(key, value, config.r_values);
    } else if (key == "diffusion.beta") {
      have_beta = true;
      reader.numbers(key, value, config.beta_values);
    } else if (key == "diffusion.rho") {
      reader.numbers(key, value, config.rho_values);
    } else if (key == "diffusion.delta") {
      reader.number(key, value, config.delta);
    } else if (key == "diffusion.budget") {
      reader.count(key, value, config.budget);
    } else if (key == "probe.runs") {
      reader.count(key, value, config.probe.n_runs);
    } else if (key == "probe.horizon_multiplier") {
      reader.number(key, value, config.probe.horizon_multiplier);
    } else if (key == "probe.success_fraction") {
      reader.number(key, value, config.probe.success_fraction);
    } else if (key == "probe.tol_fraction") {
      reader.number(key, value, config.tol_fraction);
    } else if (key == "probe.early_stop") {
      config.probe.early_stop = value == "true" || value == "1";
    } else if (key == "simulation.runs") {
      reader.count(key, value, config.runs);
    } else if (key == "simulation.horizon") {
      reader.number(key, value, config.horizon);
    } else if (key == "simulation.sample_dt") {
      reader.number(key, value, config.sample_dt);
    } else if (key == "ordering.clusters") {
      std::size_t k = 0;
      reader.count(key, value, k);
      config.ordering.n_clusters = k;
    } else if (key == "ordering.swap_iterations") {
      std::size_t s = 0;
      reader.count(key, value, s);
      config.ordering.swap_iterations = s;
    } else if (key == "ordering.objective") {
      if (value == "p_sum") config.ordering.objective = SwapObjective::p_sum;
      else if (value == "max_cutwidth") config.ordering.objective = SwapObjective::max_cutwidth;
      else reader.problems.push_back(key + ": expected p_sum or max_cutwidth");
    } else {
      reader.problems.push_back(key + ": unknown key");
    }
  }

  auto& problems = reader.problems;
  if (!have_kind) problems.push_back("experiment.kind: required");
  if (!have_output) problems.push_back("experiment.output_dir: required");
  if (config.networks.empty()) problems.push_back("network: at least one network is required");
  for (const auto& net : config.networks) {
    const std::string prefix = net.label == "network" ? "network" : "network." + net.label;
    auto more = net.problems(prefix);
    problems.insert(problems.end(), more.begin(), more.end());
  }
  if (config.strategies.empty()) problems.push_back("strategies: at least one strategy is required");
  for (const auto& s : config.strategies) {
    if (!is_known_strategy(s)) problems.push_back("strategies: unknown strategy '" + s + "'");
    if (s == "exact") {
      for (const auto& net : config.networks)
        if (net.model != "file" && network_size(net) > 10)
          problems.push_back("strategies: 'exact' needs N <= 10 but network " + net.label + " has " +
                             std::to_string(network_size(net)) + " nodes");
    }
  }
  if (!(config.delta > 0.0)) problems.push_back("diffusion.delta: must be > 0");
  if (have_r && have_beta) problems.push_back("diffusion.r: give either diffusion.r or diffusion.beta, not both");
  for (double r : config.r_values)
    if (!(r > 0.0)) problems.push_back("diffusion.r: values must be > 0");
  for (double b : config.beta_values)
    if (!(b >= 0.0)) problems.push_back("diffusion.beta: values must be >= 0");
  for (double rho : config.rho_values)
    if (!(rho >= 0.0)) problems.push_back("diffusion.rho: values must be >= 0");
  if (have_r && !have_beta)
    for (double r : config.r_values) config.beta_values.push_back(r * config.delta);

  switch (config.kind) {
    case ExperimentKind::threshold_vs_cutwidth:
      if (!have_r) problems.push_back("diffusion.r: required for threshold_vs_cutwidth");
      if (config.budget < 1) problems.push_back("diffusion.budget: must be >= 1");
      if (config.probe.n_runs < 1) problems.push_back("probe.runs: must be >= 1");
      if (!(config.probe.horizon_multiplier > 0.0)) problems.push_back("probe.horizon_multiplier: must be > 0");
      if (!(config.probe.success_fraction > 0.0 && config.probe.success_fraction <= 1.0))
        problems.push_back("probe.success_fraction: must lie in (0, 1]");
      if (!(config.tol_fraction > 0.0)) problems.push_back("probe.tol_fraction: must be > 0");
      break;
    case ExperimentKind::strategy_comparison:
      if (config.networks.size() != 1 || (!config.networks.empty() && config.networks[0].instances != 1))
        problems.push_back("network: strategy_comparison takes exactly one network instance");
      if (config.beta_values.size() != 1) problems.push_back("diffusion.beta: exactly one value (or diffusion.r) required");
      if (config.rho_values.size() != 1) problems.push_back("diffusion.rho: exactly one value required");
      if (config.runs < 1) problems.push_back("simulation.runs: must be >= 1");
      if (!(config.sample_dt > 0.0)) problems.push_back("simulation.sample_dt: must be > 0");
      break;
    case ExperimentKind::bound_check:
      if (config.beta_values.empty()) problems.push_back("diffusion.beta: required (or diffusion.r)");
      if (config.rho_values.empty()) problems.push_back("diffusion.rho: required");
      if (config.runs < 1) problems.push_back("simulation.runs: must be >= 1");
      break;
  }
  try {
    config.ordering.validate();
  } catch (const std::invalid_argument& e) {
    problems.push_back(std::string("ordering: ") + e.what());
  }
  if (!problems.empty()) throw ConfigError(problems);
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open " + path.string()});
  return parse_experiment_config(in);
}

namespace {

struct NetworkInstance {
  std::string label;
  std::string model;
  std::uint64_t seed = 0;
  Graph graph;
};

struct OrderTask {
  std::size_t network = 0;
  std::string strategy;
};

std::string instance_label(const NetworkInstance& net) { return net.label + ":" + std::to_string(net.seed); }

}  // namespace

std::filesystem::path run_experiment(const ExperimentConfig& config, std::size_t jobs) {
  std::vector<NetworkInstance> networks;
  for (const auto& spec : config.networks) {
    for (std::size_t i = 0; i < spec.instances; ++i) {
      const RngSeed seed = derive_seed(config.master_seed, "network:" + spec.label + ":" + std::to_string(i));
      networks.push_back({spec.label, spec.model, seed.value, build_network(spec, seed)});
    }
  }
  for (const auto& net : networks)
    for (const auto& s : config.strategies)
      if (s == "exact" && net.graph.n_nodes() > 10)
        throw ConfigError({"strategies: 'exact' needs N <= 10 but network " + net.label + " has " +
                           std::to_string(net.graph.n_nodes()) + " nodes"});

  std::vector<OrderTask> order_tasks;
  for (std::size_t n = 0; n < networks.size(); ++n)
    for (const auto& s : config.strategies) order_tasks.push_back({n, s});

  // Orders are computed once per (network instance, strategy) and shared.
  std::vector<LinearArrangement> orders(order_tasks.size());
  parallel_for(order_tasks.size(), jobs, [&](std::size_t i) {
    const auto& task = order_tasks[i];
    const auto& net = networks[task.network];
    const RngSeed seed = derive_seed(config.master_seed, "order:" + instance_label(net) + ":" + task.strategy);
    orders[i] = build_order(net.graph, task.strategy, seed, config.ordering);
  });

  std::filesystem::create_directories(config.output_dir);
  const auto out_path = config.output_dir / (kind_name(config.kind) + ".csv");

  if (config.kind == ExperimentKind::threshold_vs_cutwidth) {
    struct Row {
      std::int64_t max_cut = 0;
      double e_star = 0.0;
      double naive = 0.0;
    };
    std::vector<Row> rows(order_tasks.size() * config.r_values.size());
    parallel_for(rows.size(), jobs, [&](std::size_t i) {
      const std::size_t t = i / config.r_values.size();
      const double r = config.r_values[i % config.r_values.size()];
      const auto& net = networks[order_tasks[t].network];
      const std::int64_t c_max = net.graph.n_nodes() >= 2 ? cutwidth_profile(net.graph, orders[t]).max_cut : 0;
      const double naive = expected_threshold(r, static_cast<double>(c_max), static_cast<double>(config.budget));
      const double tol = naive > 0.0 ? config.tol_fraction * naive : config.tol_fraction;
      const RngSeed seed = derive_seed(config.master_seed, "probe:" + instance_label(net) + ":" +
                                                               order_tasks[t].strategy + ":" + format_real(r));
      const auto est = estimate_threshold(net.graph, orders[t], r, config.budget, config.probe, tol, seed, 1);
      rows[i] = {c_max, est.e_star, naive};
    });
    CsvWriter csv({"network_type", "seed", "strategy", "C_max", "e_star", "naive_bound", "r"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t t = i / config.r_values.size();
      const auto& net = networks[order_tasks[t].network];
      csv.cell(net.model).cell(static_cast<unsigned long long>(net.seed)).cell(order_tasks[t].strategy);
      csv.cell(static_cast<long long>(rows[i].max_cut)).cell(rows[i].e_star).cell(rows[i].naive);
      csv.cell(config.r_values[i % config.r_values.size()]);
      csv.end_row();
    }
    csv.save(out_path);
    return out_path;
  }

  if (config.kind == ExperimentKind::strategy_comparison) {
    const auto& net = networks.front();
    DiffusionParams params;
    params.beta = config.beta_values.front();
    params.delta = config.delta;
    params.rho = config.rho_values.front();
    params.budget = BudgetSchedule(config.budget);
    std::vector<EnsembleSummary> results(order_tasks.size());
    parallel_for(order_tasks.size(), jobs, [&](std::size_t t) {
      EnsembleOptions opts;
      opts.n_runs = config.runs;
      opts.base_seed = derive_seed(config.master_seed, "sim:" + instance_label(net) + ":" + order_tasks[t].strategy).value;
      opts.simulation.horizon = config.horizon;
      opts.simulation.sample_dt = config.sample_dt;
      results[t] = run_ensemble(net.graph, params, PriorityPlan{orders[t]}, EpidemicState::all_infected(net.graph), opts);
    });
    CsvWriter csv({"strategy", "time", "mean_infected"});
    for (std::size_t t = 0; t < order_tasks.size(); ++t) {
      for (std::size_t k = 0; k < results[t].curve_times.size(); ++k) {
        csv.cell(order_tasks[t].strategy).cell(results[t].curve_times[k]).cell(results[t].mean_infected[k]);
        csv.end_row();
      }
    }
    csv.save(out_path);
    return out_path;
  }

  // bound_check
  struct Job {
    std::size_t task = 0;
    double beta = 0.0;
    double rho = 0.0;
  };
  std::vector<Job> work;
  for (std::size_t t = 0; t < order_tasks.size(); ++t)
    for (double beta : config.beta_values)
      for (double rho : config.rho_values) work.push_back({t, beta, rho});
  std::vector<EnsembleSummary> results(work.size());
  std::vector<BoundReport> reports(work.size());
  parallel_for(work.size(), jobs, [&](std::size_t i) {
    const auto& job = work[i];
    const auto& net = networks[order_tasks[job.task].network];
    const std::int64_t c_max = net.graph.n_nodes() >= 2 ? cutwidth_profile(net.graph, orders[job.task]).max_cut : 0;
    reports[i] = theorem1_bound(net.graph.n_nodes(), static_cast<std::int64_t>(net.graph.max_degree()), c_max,
                                job.beta, config.delta, job.rho, static_cast<double>(config.budget));
    DiffusionParams params;
    params.beta = job.beta;
    params.delta = config.delta;
    params.rho = job.rho;
    params.budget = BudgetSchedule(config.budget);
    EnsembleOptions opts;
    opts.n_runs = config.runs;
    opts.base_seed = derive_seed(config.master_seed, "sim:" + instance_label(net) + ":" + order_tasks[job.task].strategy +
                                                         ":" + format_real(job.beta) + ":" + format_real(job.rho))
                         .value;
    opts.simulation.horizon = config.horizon;
    results[i] = run_ensemble(net.graph, params, PriorityPlan{orders[job.task]}, EpidemicState::all_infected(net.graph), opts);
  });
  CsvWriter csv({"network_type", "seed", "strategy", "n_nodes", "max_degree", "C_max", "beta", "delta", "rho", "budget",
                 "runs", "empirical_mean_tau", "stderr_tau", "theorem_bound", "condition_holds"});
  for (std::size_t i = 0; i < work.size(); ++i) {
    const auto& net = networks[order_tasks[work[i].task].network];
    const auto& rep = reports[i];
    csv.cell(net.model).cell(static_cast<unsigned long long>(net.seed)).cell(order_tasks[work[i].task].strategy);
    csv.cell(static_cast<long long>(rep.n_nodes)).cell(static_cast<long long>(rep.max_degree));
    csv.cell(static_cast<long long>(rep.max_cut)).cell(rep.beta).cell(rep.delta).cell(rep.rho);
    csv.cell(static_cast<long long>(config.budget)).cell(static_cast<unsigned long long>(config.runs));
    csv.cell(results[i].mean_tau).cell(results[i].stderr_tau);
    if (rep.extinction_bound) csv.cell(*rep.extinction_bound);
    else csv.cell("");
    csv.cell(rep.condition_holds);
    csv.end_row();
  }
  csv.save(out_path);
  return out_path;
}

}  // namespace cutplan
