#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "cutplan/edge_list.hpp"
#include "cutplan/errors.hpp"
#include "cutplan/generators.hpp"
#include "cutplan/graph.hpp"
#include "cutplan/spectral.hpp"
#include "oracles.hpp"

using namespace cutplan;

namespace {

LoadedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

bool is_cycle(const Graph& g) {
  if (g.n_edges() != static_cast<std::size_t>(g.n_nodes())) return false;
  for (NodeId v = 0; v < g.n_nodes(); ++v)
    if (g.degree(v) != 2) return false;
  return connected_components(g).size() == 1;
}

}  // namespace

TEST_CASE("graph canonicalizes edges and builds symmetric adjacency") {
  const Graph g(4, {{2, 1}, {1, 2}, {0, 3}, {3, 0}, {1, 3}});
  CHECK(g.n_edges() == 3);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(g.max_degree() == 2);
  CHECK_FALSE(find_invariant_violation(g).has_value());
  for (const auto& e : g.edges()) CHECK(e.u < e.v);
}

TEST_CASE("graph rejects self-loops and out-of-range endpoints") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{-1, 2}}), std::invalid_argument);
}

TEST_CASE("named graphs") {
  CHECK(complete_graph(5).n_edges() == 10);
  CHECK(path_graph(6).n_edges() == 5);
  CHECK(is_cycle(cycle_graph(7)));
  const Graph star = star_graph(4);
  CHECK(star.degree(0) == 4);
  CHECK(star.max_degree() == 4);
}

TEST_CASE("erdos-renyi") {
  SUBCASE("p = 1 gives the complete graph") { CHECK(gen_erdos_renyi(4, 1.0, RngSeed{99}) == complete_graph(4)); }
  SUBCASE("p = 0 gives no edges") { CHECK(gen_erdos_renyi(100, 0.0, RngSeed{3}).n_edges() == 0); }
  SUBCASE("edge count within four standard deviations of the binomial mean") {
    const double pairs = 1000.0 * 999.0 / 2.0;
    const double mean = pairs * 0.01, sd = std::sqrt(pairs * 0.01 * 0.99);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto m = static_cast<double>(gen_erdos_renyi(1000, 0.01, RngSeed{s}).n_edges());
      CHECK(std::abs(m - mean) <= 4.0 * sd);
    }
  }
  SUBCASE("invalid probability") {
    CHECK_THROWS_AS(gen_erdos_renyi(10, 1.5, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(gen_erdos_renyi(10, -0.1, RngSeed{1}), std::invalid_argument);
    CHECK_THROWS_AS(gen_erdos_renyi(0, 0.5, RngSeed{1}), std::invalid_argument);
  }
  SUBCASE("each pair appears with frequency p") {
    // Pair (0, 1) over many seeds: binomial(2000, 0.3).
    int hits = 0;
    for (std::uint64_t s = 0; s < 2000; ++s) hits += gen_erdos_renyi(6, 0.3, RngSeed{s}).has_edge(0, 1);
    CHECK(std::abs(hits - 600) <= 4 * std::sqrt(2000 * 0.3 * 0.7));
  }
}

TEST_CASE("preferential attachment") {
  CHECK(gen_preferential_attachment(3, 2, RngSeed{1}) == complete_graph(3));
  const Graph g = gen_preferential_attachment(500, 2, RngSeed{8});
  CHECK(g.n_edges() == 997);
  CHECK(g == gen_preferential_attachment(500, 2, RngSeed{8}));
  CHECK_FALSE(g == gen_preferential_attachment(500, 2, RngSeed{9}));
  CHECK(connected_components(g).size() == 1);
  CHECK_THROWS_AS(gen_preferential_attachment(2, 2, RngSeed{1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_preferential_attachment(5, 0, RngSeed{1}), std::invalid_argument);
}

TEST_CASE("small world") {
  const Graph ring = gen_small_world(10, 2, 0.0, RngSeed{4});
  CHECK(ring == cycle_graph(10));
  CHECK(gen_small_world(100, 4, 0.1, RngSeed{4}).n_edges() == 200);
  CHECK(gen_small_world(100, 4, 1.0, RngSeed{5}).n_edges() == 200);
  CHECK(gen_small_world(5, 4, 0.0, RngSeed{4}) == complete_graph(5));
  CHECK(gen_small_world(5, 4, 0.7, RngSeed{4}) == complete_graph(5));
  CHECK_THROWS_AS(gen_small_world(10, 3, 0.1, RngSeed{1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_small_world(4, 4, 0.1, RngSeed{1}), std::invalid_argument);
}

TEST_CASE("random geometric graph") {
  CHECK(gen_geometric(2, std::sqrt(2.0), RngSeed{12}).n_edges() == 1);
  CHECK(gen_geometric(50, 0.0, RngSeed{12}).n_edges() == 0);
  CHECK_THROWS_AS(gen_geometric(5, -0.1, RngSeed{1}), std::invalid_argument);

  SUBCASE("edges equal the pairwise distance check") {
    // Regenerate the points the generator draws: x then y per node from the same stream.
    for (std::uint64_t s = 0; s < 5; ++s) {
      auto rng = make_rng(RngSeed{s});
      std::vector<double> x(100), y(100);
      for (int i = 0; i < 100; ++i) {
        x[i] = uniform01(rng);
        y[i] = uniform01(rng);
      }
      std::vector<Edge> expected;
      for (int i = 0; i < 100; ++i)
        for (int j = i + 1; j < 100; ++j)
          if (std::hypot(x[i] - x[j], y[i] - y[j]) <= 0.2) expected.push_back({i, j});
      CHECK(gen_geometric(100, 0.2, RngSeed{s}) == Graph(100, expected));
    }
  }
}

TEST_CASE("grid") {
  CHECK(gen_grid(1, 5) == path_graph(5));
  CHECK(gen_grid(3, 3).n_edges() == 12);
  CHECK(is_cycle(gen_grid(2, 2)));
  CHECK(gen_grid(4, 7).n_edges() == 4 * 6 + 7 * 3);
  CHECK_THROWS_AS(gen_grid(0, 3), std::invalid_argument);
}

TEST_CASE("every generator satisfies the graph invariants for many seeds") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const RngSeed seed{s};
    for (const Graph& g : {gen_erdos_renyi(60, 0.1, seed), gen_preferential_attachment(60, 3, seed),
                           gen_small_world(60, 6, 0.3, seed), gen_geometric(60, 0.25, seed), gen_grid(6, 9)}) {
      const auto problem = find_invariant_violation(g);
      CHECK_MESSAGE(!problem.has_value(), problem.value_or(""));
    }
  }
}

TEST_CASE("edge list parsing") {
  SUBCASE("reversed duplicates collapse") {
    const auto loaded = parse("0 1\n1 0\n");
    CHECK(loaded.graph.n_nodes() == 2);
    CHECK(loaded.graph.n_edges() == 1);
  }
  SUBCASE("self-loops are dropped and counted") {
    const auto loaded = parse("0 0\n0 1\n");
    CHECK(loaded.graph.n_edges() == 1);
    CHECK(loaded.dropped_self_loops == 1);
  }
  SUBCASE("ids are compacted in ascending order") {
    const auto loaded = parse("5 9\n9 7\n");
    CHECK(loaded.graph.n_nodes() == 3);
    CHECK(loaded.graph.n_edges() == 2);
    CHECK(loaded.original_ids == std::vector<std::int64_t>{5, 7, 9});
    CHECK(loaded.graph.has_edge(0, 2));
    CHECK(loaded.graph.has_edge(1, 2));
  }
  SUBCASE("comments and blank lines") {
    const auto loaded = parse("# header\n\n  1 2  \n# more\n2\t3\n");
    CHECK(loaded.graph.n_edges() == 2);
  }
  SUBCASE("empty input") { CHECK(parse("").graph.n_nodes() == 0); }
  SUBCASE("bad line reports its number") {
    try {
      parse("0 1\n# ok\n1 x\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse("1 2 3\n"), ParseError);
  }
}

TEST_CASE("edge list round trip is the identity on canonical graphs") {
  const auto dir = std::filesystem::temp_directory_path() / "cutplan_test_graph";
  std::filesystem::create_directories(dir);
  for (const Graph& g : {gen_erdos_renyi(40, 0.1, RngSeed{2}), gen_grid(3, 4), Graph(10, {}),
                         Graph(6, {{0, 1}, {4, 5}})}) {
    save_edge_list(g, dir / "g.txt", "note");
    CHECK(load_edge_list(dir / "g.txt").graph == g);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("connected components") {
  CHECK(connected_components(complete_graph(4)).size() == 1);
  const auto singles = connected_components(Graph(3, {}));
  CHECK(singles == std::vector<std::vector<NodeId>>{{0}, {1}, {2}});
  const Graph triangles(6, {{0, 2}, {2, 4}, {0, 4}, {1, 3}, {3, 5}, {1, 5}});
  CHECK(connected_components(triangles) == std::vector<std::vector<NodeId>>{{0, 2, 4}, {1, 3, 5}});
}

TEST_CASE("spectral radius") {
  CHECK(spectral_radius(complete_graph(4)).value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(spectral_radius(path_graph(3)).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(spectral_radius(star_graph(4)).value == doctest::Approx(2.0).epsilon(1e-9));

  SUBCASE("bipartite graphs need the shift and still converge") {
    const auto pair = spectral_radius(cycle_graph(6));
    CHECK(pair.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(spectral_radius(gen_grid(5, 6)).value ==
          doctest::Approx(oracle::dense_spectral_radius(gen_grid(5, 6))).epsilon(1e-8));
  }

  SUBCASE("matches a dense eigensolver and the degree bounds") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Graph g = gen_preferential_attachment(80, 2, RngSeed{s});
      const auto pair = spectral_radius(g);
      CHECK(pair.value == doctest::Approx(oracle::dense_spectral_radius(g)).epsilon(1e-8));
      const double avg = 2.0 * static_cast<double>(g.n_edges()) / g.n_nodes();
      CHECK(pair.value >= avg - 1e-9);
      CHECK(pair.value <= static_cast<double>(g.max_degree()) + 1e-9);
      CHECK(pair.vector.norm() == doctest::Approx(1.0));
      CHECK(pair.vector.minCoeff() >= -1e-12);
    }
  }

  SUBCASE("edgeless graph has radius zero") { CHECK(spectral_radius(Graph(4, {})).value == 0.0); }
}

TEST_CASE("Fiedler vector of a path is monotone") {
  const auto pair = fiedler_vector(laplacian_matrix(path_graph(5)));
  CHECK(pair.value == doctest::Approx(2.0 - 2.0 * std::cos(M_PI / 5.0)).epsilon(1e-7));
  const auto& x = pair.vector;
  const bool increasing = x(0) < x(1) && x(1) < x(2) && x(2) < x(3) && x(3) < x(4);
  const bool decreasing = x(0) > x(1) && x(1) > x(2) && x(2) > x(3) && x(3) > x(4);
  CHECK((increasing || decreasing));
}

TEST_CASE("lowest nontrivial eigenvectors match a dense solve") {
  const Graph g = gen_small_world(40, 4, 0.2, RngSeed{1});
  Eigen::MatrixXd dense = Eigen::MatrixXd(laplacian_matrix(g));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  // dense_limit 10 forces the iterative block path.
  for (int dense_limit : {1500, 10}) {
    const Eigen::MatrixXd vecs = lowest_nontrivial_eigenvectors(laplacian_matrix(g), 3, dense_limit);
    for (int j = 0; j < 3; ++j) {
      const Eigen::VectorXd v = vecs.col(j);
      CHECK(v.dot(dense * v) == doctest::Approx(solver.eigenvalues()(j + 1)).epsilon(1e-6));
      CHECK(std::abs(v.sum()) < 1e-6);
    }
  }
}
