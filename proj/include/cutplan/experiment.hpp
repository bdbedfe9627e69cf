#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutplan/bounds.hpp"
#include "cutplan/graph.hpp"
#include "cutplan/ordering.hpp"
#include "cutplan/rng.hpp"

namespace cutplan {

/// Generator name plus parameters, or an edge-list path (model "file").
struct NetworkSpec {
  std::string label;
  std::string model;
  NodeId n = 0;
  double p = 0.0;
  NodeId m = 0;
  NodeId k = 0;
  double beta = 0.0;  // rewiring probability for "ws"
  double radius = 0.0;
  NodeId rows = 0;
  NodeId cols = 0;
  std::filesystem::path path;
  std::size_t instances = 1;

  /// Field-path diagnostics for missing or invalid model parameters.
  std::vector<std::string> problems(const std::string& prefix) const;
};

Graph build_network(const NetworkSpec& spec, RngSeed seed);

/// Strategy names: rand, mn, ln, lrsr, mcm, exact.
bool is_known_strategy(const std::string& name);
LinearArrangement build_order(const Graph& graph, const std::string& strategy, RngSeed seed,
                              const OrderingConfig& mcm_config = {}, std::optional<std::size_t> lrsr_recompute = {});

enum class ExperimentKind { threshold_vs_cutwidth, strategy_comparison, bound_check };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::threshold_vs_cutwidth;
  RngSeed master_seed{};
  std::filesystem::path output_dir;
  std::vector<NetworkSpec> networks;
  std::vector<std::string> strategies;

  std::vector<double> r_values;
  std::vector<double> beta_values;
  std::vector<double> rho_values;
  double delta = 1.0;
  std::int64_t budget = 1;

  ProbeSettings probe{};
  /// Threshold bracket width as a fraction of r C_max / b_tot.
  double tol_fraction = 0.02;

  std::size_t runs = 100;
  double horizon = 0.0;  // <= 0: 50 N / delta
  double sample_dt = 1.0;

  OrderingConfig ordering{};
};

/// Raised before any computation; what() lists every problem as
/// "field.path: message", separated by "; ".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::vector<std::string>& problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Flat `section.key=value` format; `#` comments. Network keys are either
/// `network.<field>` or `network.<label>.<field>`. Lists are comma separated.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Runs every task (network instance x strategy x parameter) on `jobs`
/// workers and writes `<kind>.csv` into the output directory. Returns the path.
std::filesystem::path run_experiment(const ExperimentConfig& config, std::size_t jobs);

}  // namespace cutplan
