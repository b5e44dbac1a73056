#include "test_util.hpp"

#include <set>
#include <sstream>

using namespace walklap;
using testutil::make;

namespace {

Graph parse(const std::string& text, GraphFormat f) {
  std::istringstream in(text);
  return load_graph(in, f);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected walklap::Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("matrix market pattern file gives P3") {
    const Graph g = parse(
        "%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n3 3 2\n1 2\n2 3\n",
        GraphFormat::MatrixMarket);
    CHECK(g.num_nodes() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 2));
  }

  TEST_CASE("matrix market general entries are symmetrized") {
    const Graph g =
        parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 3.5\n", GraphFormat::MatrixMarket);
    CHECK(g.has_edge(1, 0));
    CHECK(g.degree(1) == 1);
  }

  TEST_CASE("edge list collapses duplicates and drops self loops") {
    const Graph g = parse("# header\n0 1\n1 0\n1 1\n", GraphFormat::EdgeList);
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_edges() == 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 1);
  }

  TEST_CASE("malformed input is reported") {
    CHECK(code_of([] { parse("0 x\n", GraphFormat::EdgeList); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse("", GraphFormat::MatrixMarket); }) == ErrorCode::EmptyGraph);
    CHECK(code_of([] {
            parse("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n1 3\n", GraphFormat::MatrixMarket);
          }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([] { load_graph_file("/nonexistent/graph.mtx"); }) == ErrorCode::Io);
  }

  TEST_CASE("csr neighbors are sorted and degrees consistent") {
    const Graph g = gen::karate();
    CHECK(g.num_nodes() == 34);
    CHECK(g.num_edges() == 78);
    Index total = 0;
    for (Index i = 0; i < g.num_nodes(); ++i) {
      const auto nb = g.neighbors(i);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      CHECK(static_cast<Index>(nb.size()) == g.degree(i));
      total += g.degree(i);
    }
    CHECK(total == 2 * g.num_edges());
    CHECK(g.max_degree() == 17);
    const Matrix a = g.dense_adjacency();
    CHECK(testutil::max_diff(a, a.transpose()) == 0.0);
  }

  TEST_CASE("largest component") {
    const Graph two = make(5, {{0, 1}, {1, 2}, {3, 4}});
    const auto r = largest_component(two);
    CHECK(r.graph.num_nodes() == 3);
    CHECK(r.graph.num_edges() == 2);
    CHECK(r.old_to_new[3] == -1);
    CHECK(r.new_to_old == std::vector<Index>{0, 1, 2});

    const Graph p = gen::path(4);
    const auto same = largest_component(p);
    CHECK(same.graph.num_edges() == 3);
    CHECK(same.new_to_old == std::vector<Index>{0, 1, 2, 3});

    const Graph tie = make(4, {{2, 3}, {0, 1}});
    CHECK(largest_component(tie).new_to_old == std::vector<Index>{0, 1});
    CHECK(count_components(tie) == 2);
  }

  TEST_CASE("bfs distances") {
    CHECK(bfs_distances(gen::path(3), 0) == std::vector<Distance>{0, 1, 2});
    CHECK(bfs_distances(gen::complete(3), 0) == std::vector<Distance>{0, 1, 1});
    const auto d = bfs_distances(make(4, {{0, 1}, {2, 3}}), 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == kUnreachable);
    CHECK(d[3] == kUnreachable);
  }

  TEST_CASE("random trees") {
    CHECK(random_tree(1, 5).num_edges() == 0);
    CHECK(random_tree(2, 5).num_edges() == 1);
    for (std::uint64_t seed : {1u, 2u, 99u}) {
      const Graph t = random_tree(100, seed);
      CHECK(t.num_edges() == 99);
      CHECK(count_components(t) == 1);
    }
    CHECK(random_tree(50, 7).edges() == random_tree(50, 7).edges());
    CHECK(random_tree(50, 7).edges() != random_tree(50, 8).edges());
  }

  TEST_CASE("generators") {
    const Graph t = gen::trap(5, 8);
    CHECK(t.num_nodes() == 13);
    CHECK(t.num_edges() == 12);
    CHECK(t.degree(2) == 10);
    CHECK(t.degree(0) == 1);
    CHECK(gen::grid(30, 30).num_edges() == 2 * 30 * 29);
    CHECK(gen::cycle(5).num_edges() == 5);
    CHECK(gen::complete(6).num_edges() == 15);
    CHECK(gen::star(9).degree(0) == 9);
    CHECK(count_components(gen::random_connected(40, 10, 3)) == 1);
    CHECK(gen::from_spec("grid:3x4").num_nodes() == 12);
    CHECK(gen::from_spec("trap:5:8").num_edges() == 12);
    CHECK(gen::from_spec("karate").num_edges() == 78);
    CHECK(code_of([] { gen::from_spec("hypercube:3"); }) == ErrorCode::InvalidParameter);
  }

  TEST_CASE("structural invariants") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Graph g = gen::erdos_renyi(60, 0.05, seed);
      const Matrix a = g.dense_adjacency();
      CHECK(testutil::max_diff(a, a.transpose()) == 0.0);
      CHECK(a.sum() == doctest::Approx(2.0 * g.num_edges()));
      std::vector<std::vector<Distance>> d;
      for (Index s = 0; s < g.num_nodes(); ++s) d.push_back(bfs_distances(g, s));
      bool symmetric = true;
      for (Index i = 0; i < g.num_nodes(); ++i)
        for (Index j = 0; j < g.num_nodes(); ++j) symmetric = symmetric && d[i][j] == d[j][i];
      CHECK(symmetric);
      const Graph lcc = largest_component(g).graph;
      const auto reach = bfs_distances(lcc, 0);
      CHECK(std::none_of(reach.begin(), reach.end(), [](Distance x) { return x == kUnreachable; }));
    }
  }
}
