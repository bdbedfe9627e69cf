#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "cutplan/arrangement.hpp"
#include "cutplan/errors.hpp"
#include "cutplan/generators.hpp"
#include "oracles.hpp"

using namespace cutplan;

namespace {

LinearArrangement fig1_prime() {
  const std::vector<std::int64_t> positions{1, 3, 4, 2, 5};
  return LinearArrangement::from_positions(positions);
}

}  // namespace

TEST_CASE("arrangement construction and inverse") {
  const auto la = LinearArrangement::from_order({2, 0, 1});
  CHECK(la.position(2) == 1);
  CHECK(la.position(0) == 2);
  CHECK(la.position(1) == 3);
  CHECK(la.node_at_slot(0) == 2);
  for (NodeId v = 0; v < 3; ++v) CHECK(la.node_at_slot(la.slot(v)) == v);

  CHECK_THROWS_AS(LinearArrangement::from_order({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(LinearArrangement::from_order({0, 3, 1}), std::invalid_argument);
  const std::vector<std::int64_t> bad{1, 1, 2};
  CHECK_THROWS_AS(LinearArrangement::from_positions(bad), std::invalid_argument);

  auto swapped = la;
  swapped.swap_nodes(2, 1);
  CHECK(swapped.position(1) == 1);
  CHECK(swapped.position(2) == 3);
  CHECK(la.reversed().reversed() == la);
}

TEST_CASE("worked five-node example costs") {
  const Graph g = oracle::fig1_graph();
  const auto id = LinearArrangement::identity(5);
  CHECK(p_sum_cost(g, id, 1) == 8.0);
  const auto profile = cutwidth_profile(g, id);
  CHECK(profile.cuts == std::vector<std::int64_t>{1, 3, 3, 1});
  CHECK(profile.max_cut == 3);
  CHECK(profile.argmax_location == 2);

  CHECK(p_sum_cost(g, fig1_prime(), 1) == 4.0);
  CHECK(cutwidth_profile(g, fig1_prime()).max_cut == 1);
}

TEST_CASE("p-sum cost") {
  for (NodeId n : {2, 7, 30}) CHECK(p_sum_cost(path_graph(n), LinearArrangement::identity(n), 1) == n - 1.0);
  // Edge lengths 1, 2, 3 under identity on a star centered at 0: (1 + 4 + 9)^(1/2).
  CHECK(p_sum_cost(star_graph(3), LinearArrangement::identity(4), 2) == doctest::Approx(std::sqrt(14.0)));
  CHECK_THROWS_AS(p_sum_cost(path_graph(3), LinearArrangement::identity(3), 0), std::invalid_argument);
  CHECK_THROWS_AS(p_sum_cost(path_graph(3), LinearArrangement::identity(4), 1), std::invalid_argument);
}

TEST_CASE("complete graph cut profile") {
  const NodeId n = 9;
  const Graph g = complete_graph(n);
  auto rng = make_rng(RngSeed{5});
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const auto profile = cutwidth_profile(g, LinearArrangement::from_order(order));
  for (NodeId c = 1; c < n; ++c) CHECK(profile.cuts[c - 1] == static_cast<std::int64_t>(c) * (n - c));
  CHECK(profile.max_cut == (n / 2) * ((n + 1) / 2));
}

TEST_CASE("cut profile equals a naive recount and respects its invariants") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto rng = make_rng(RngSeed{s});
    const auto n = static_cast<NodeId>(2 + uniform_below(rng, 49));
    const Graph g = gen_erdos_renyi(n, 0.15, RngSeed{s});
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto la = LinearArrangement::from_order(order);
    const auto profile = cutwidth_profile(g, la);
    CHECK(profile.cuts == oracle::naive_cuts(g, la));
    CHECK(profile.max_cut == *std::max_element(profile.cuts.begin(), profile.cuts.end()));
    CHECK(profile.cuts[0] <= static_cast<std::int64_t>(g.degree(la.node_at_slot(0))));
    for (auto c : profile.cuts) CHECK(c <= static_cast<std::int64_t>(g.n_edges()));

    const auto rev = cutwidth_profile(g, la.reversed());
    CHECK(std::equal(rev.cuts.begin(), rev.cuts.end(), profile.cuts.rbegin()));
    CHECK(rev.max_cut == profile.max_cut);
    CHECK(p_sum_cost(g, la.reversed(), 1) == p_sum_cost(g, la, 1));
  }
}

TEST_CASE("cut profile needs two nodes") {
  CHECK_THROWS_AS(cutwidth_profile(Graph(1, {}), LinearArrangement::identity(1)), std::invalid_argument);
}

TEST_CASE("arrangement file round trip") {
  const auto la = LinearArrangement::from_order({3, 1, 4, 0, 2});
  std::istringstream in(format_arrangement(la));
  CHECK(parse_arrangement(in) == la);

  const auto dir = std::filesystem::temp_directory_path() / "cutplan_test_arrangement";
  std::filesystem::create_directories(dir);
  save_arrangement(la, dir / "a.txt");
  CHECK(load_arrangement(dir / "a.txt") == la);
  std::filesystem::remove_all(dir);

  std::istringstream dup("0\n0\n1\n");
  CHECK_THROWS(parse_arrangement(dup));
  std::istringstream junk("0\nz\n");
  CHECK_THROWS_AS(parse_arrangement(junk), ParseError);
}

TEST_CASE("cut profile CSV") {
  const auto text = format_cut_profile(cutwidth_profile(oracle::fig1_graph(), LinearArrangement::identity(5)));
  CHECK(text == "location,cut\n1,1\n2,3\n3,3\n4,1\n");
}
