#include "cutplan/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace cutplan {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

Graph gen_erdos_renyi(NodeId n, double p, RngSeed seed) {
  require(n >= 1, "erdos_renyi: n must be >= 1");
  require(p >= 0.0 && p <= 1.0, "erdos_renyi: p must lie in [0, 1]");
  std::vector<Edge> edges;
  if (p == 0.0) return Graph(n, {});
  if (p == 1.0) return complete_graph(n);

  // Geometric skipping over the lower triangle (Batagelj-Brandes).
  Rng rng = make_rng(seed);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double u = uniform01(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v)});
  }
  return Graph(n, std::move(edges));
}

Graph gen_preferential_attachment(NodeId n, NodeId m, RngSeed seed) {
  require(m >= 1, "preferential_attachment: m must be >= 1");
  require(n > m, "preferential_attachment: n must exceed m");
  Rng rng = make_rng(seed);
  std::vector<Edge> edges;
  // Every edge endpoint appears once, so uniform draws are degree-proportional.
  std::vector<NodeId> endpoints;
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) {
      edges.push_back({u, v});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<NodeId> targets;
  for (NodeId v = m + 1; v < n; ++v) {
    targets.clear();
    while (static_cast<NodeId>(targets.size()) < m) {
      NodeId t = endpoints[uniform_below(rng, endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_small_world(NodeId n, NodeId k, double beta, RngSeed seed) {
  require(k >= 0 && k % 2 == 0, "small_world: k must be even");
  require(k < n, "small_world: k must be < n");
  require(beta >= 0.0 && beta <= 1.0, "small_world: beta must lie in [0, 1]");
  Rng rng = make_rng(seed);
  std::unordered_set<std::uint64_t> present;
  std::vector<std::vector<NodeId>> ring(static_cast<std::size_t>(n));
  std::vector<std::size_t> degree(static_cast<std::size_t>(n), 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId j = 1; j <= k / 2; ++j) {
      NodeId v = (u + j) % n;
      ring[u].push_back(v);
      present.insert(pair_key(u, v));
      ++degree[u];
      ++degree[v];
    }
  }
  std::vector<Edge> edges;
  for (NodeId j = 1; j <= k / 2; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      NodeId& v = ring[u][j - 1];
      if (uniform01(rng) >= beta || degree[u] + 1 >= static_cast<std::size_t>(n)) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
      } while (w == u || present.count(pair_key(u, w)));
      present.erase(pair_key(u, v));
      present.insert(pair_key(u, w));
      --degree[v];
      ++degree[w];
      v = w;
    }
  }
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v : ring[u]) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

Graph gen_geometric(NodeId n, double radius, RngSeed seed) {
  require(n >= 1, "geometric: n must be >= 1");
  require(radius >= 0.0, "geometric: radius must be >= 0");
  Rng rng = make_rng(seed);
  std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    xs[v] = uniform01(rng);
    ys[v] = uniform01(rng);
  }
  if (radius == 0.0) return Graph(n, {});

  // Bucket points into cells of side >= radius; only neighboring cells can hold partners.
  const auto cells = static_cast<std::int64_t>(std::max(1.0, std::floor(1.0 / radius)));
  auto cell_of = [&](double c) { return std::min<std::int64_t>(cells - 1, static_cast<std::int64_t>(c * cells)); };
  std::vector<std::vector<NodeId>> bucket(static_cast<std::size_t>(cells * cells));
  for (NodeId v = 0; v < n; ++v) bucket[cell_of(xs[v]) * cells + cell_of(ys[v])].push_back(v);

  const double r2 = radius * radius;
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) {
    const std::int64_t cx = cell_of(xs[v]);
    const std::int64_t cy = cell_of(ys[v]);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const std::int64_t bx = cx + dx, by = cy + dy;
        if (bx < 0 || by < 0 || bx >= cells || by >= cells) continue;
        for (NodeId w : bucket[bx * cells + by]) {
          if (w <= v) continue;
          const double ddx = xs[v] - xs[w], ddy = ys[v] - ys[w];
          if (ddx * ddx + ddy * ddy <= r2) edges.push_back({v, w});
        }
      }
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_grid(NodeId rows, NodeId cols) {
  require(rows >= 1 && cols >= 1, "grid: rows and cols must be >= 1");
  std::vector<Edge> edges;
  for (NodeId r = 0; r < rows; ++r) {
    for (NodeId c = 0; c < cols; ++c) {
      const NodeId v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, v + cols});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

}  // namespace cutplan
