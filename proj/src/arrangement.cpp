#include "cutplan/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "cutplan/errors.hpp"
#include "cutplan/io.hpp"

namespace cutplan {

LinearArrangement LinearArrangement::identity(NodeId n) {
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return from_order(std::move(order));
}

LinearArrangement LinearArrangement::from_order(std::vector<NodeId> order) {
  LinearArrangement la;
  const auto n = order.size();
  la.slot_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    if (v < 0 || static_cast<std::size_t>(v) >= n || la.slot_[v] != -1)
      throw std::invalid_argument("arrangement: order is not a permutation of 0..N-1");
    la.slot_[v] = static_cast<NodeId>(i);
  }
  la.order_ = std::move(order);
  return la;
}

LinearArrangement LinearArrangement::from_positions(std::span<const std::int64_t> positions) {
  const auto n = static_cast<std::int64_t>(positions.size());
  std::vector<NodeId> order(positions.size(), -1);
  for (std::size_t v = 0; v < positions.size(); ++v) {
    const auto p = positions[v];
    if (p < 1 || p > n || order[p - 1] != -1)
      throw std::invalid_argument("arrangement: positions are not a bijection onto 1..N");
    order[p - 1] = static_cast<NodeId>(v);
  }
  return from_order(std::move(order));
}

void LinearArrangement::swap_nodes(NodeId a, NodeId b) {
  std::swap(order_[slot_[a]], order_[slot_[b]]);
  std::swap(slot_[a], slot_[b]);
}

LinearArrangement LinearArrangement::reversed() const {
  std::vector<NodeId> order(order_.rbegin(), order_.rend());
  return from_order(std::move(order));
}

void require_compatible(const Graph& graph, const LinearArrangement& la) {
  if (la.size() != graph.n_nodes())
    throw std::invalid_argument("arrangement has " + std::to_string(la.size()) + " nodes but graph has " +
                                std::to_string(graph.n_nodes()));
}

double p_sum_cost(const Graph& graph, const LinearArrangement& la, int p) {
  if (p < 1) throw std::invalid_argument("p_sum_cost: p must be >= 1");
  require_compatible(graph, la);
  if (p == 1) {
    std::int64_t total = 0;
    for (const auto& e : graph.edges()) total += std::abs(la.position(e.u) - la.position(e.v));
    return static_cast<double>(total);
  }
  double total = 0.0;
  for (const auto& e : graph.edges())
    total += std::pow(static_cast<double>(std::abs(la.position(e.u) - la.position(e.v))), p);
  return std::pow(total, 1.0 / p);
}

CutwidthProfile cutwidth_profile(const Graph& graph, const LinearArrangement& la) {
  require_compatible(graph, la);
  const NodeId n = graph.n_nodes();
  if (n < 2) throw std::invalid_argument("cutwidth_profile: needs at least two nodes");
  // An edge between slots a < b crosses locations a+1..b (1-based).
  std::vector<std::int64_t> diff(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : graph.edges()) {
    const NodeId su = la.slot(e.u), sv = la.slot(e.v);
    const auto [a, b] = std::minmax(su, sv);
    diff[a] += 1;
    diff[b] -= 1;
  }
  CutwidthProfile profile;
  profile.cuts.resize(static_cast<std::size_t>(n) - 1);
  std::int64_t running = 0;
  for (NodeId c = 0; c + 1 < n; ++c) {
    running += diff[c];
    profile.cuts[c] = running;
    if (running > profile.max_cut) {
      profile.max_cut = running;
      profile.argmax_location = static_cast<std::size_t>(c) + 1;
    }
  }
  return profile;
}

std::string format_arrangement(const LinearArrangement& la) {
  std::string text;
  for (NodeId v : la.order()) {
    text += std::to_string(v);
    text += '\n';
  }
  return text;
}

LinearArrangement parse_arrangement(std::istream& in) {
  std::vector<NodeId> order;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value < 0) throw ParseError(line_no, "invalid node id '" + token + "'");
    order.push_back(static_cast<NodeId>(value));
  }
  return LinearArrangement::from_order(std::move(order));
}

LinearArrangement load_arrangement(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open arrangement " + path.string());
  return parse_arrangement(in);
}

void save_arrangement(const LinearArrangement& la, const std::filesystem::path& path) {
  atomic_write(path, format_arrangement(la));
}

std::string format_cut_profile(const CutwidthProfile& profile) {
  CsvWriter csv({"location", "cut"});
  for (std::size_t c = 0; c < profile.cuts.size(); ++c) {
    csv.cell(static_cast<unsigned long long>(c + 1)).cell(static_cast<long long>(profile.cuts[c]));
    csv.end_row();
  }
  return csv.str();
}

}  // namespace cutplan
