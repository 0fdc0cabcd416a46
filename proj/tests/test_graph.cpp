#include <doctest.h>

#include "kronres/graph.hpp"
#include "test_util.hpp"

using namespace kronres;
using namespace kronres::testutil;

TEST_CASE("build_graph places weights and rejects bad input") {
  WeightedDigraph g = build_graph(2, {{0, 1, 1.0}});
  Matrix expected(2, 2);
  expected << 0, 1, 0, 0;
  CHECK(max_abs_diff(g.adjacency(), expected) == 0.0);

  WeightedDigraph single = build_graph(1, {});
  CHECK(single.size() == 1);
  CHECK(single.adjacency()(0, 0) == 0.0);

  CHECK_THROWS_AS(build_graph(2, {{0, 2, 1.0}}), PreconditionError);
  CHECK_THROWS_AS(build_graph(2, {{0, 1, 0.0}}), PreconditionError);
  CHECK_THROWS_AS(build_graph(2, {{0, 1, -1.0}}), PreconditionError);
  CHECK_THROWS_AS(build_graph(2, {{0, 1, 1.0}, {0, 1, 2.0}}), PreconditionError);
}

TEST_CASE("loopy Laplacian") {
  Matrix adj(2, 2);
  adj << 0, 2, 3, 0;
  Matrix q = loopy_laplacian(WeightedDigraph(adj));
  Matrix expected(2, 2);
  expected << 2, -2, -3, 3;
  CHECK(max_abs_diff(q, expected) == 0.0);

  adj << 1, 1, 0, 1;
  q = loopy_laplacian(WeightedDigraph(adj));
  expected << 2, -1, 0, 1;
  CHECK(max_abs_diff(q, expected) == 0.0);
  CHECK(q.row(0).sum() == doctest::Approx(1.0));
  CHECK(q.row(1).sum() == doctest::Approx(1.0));
}

TEST_CASE("loopless Laplacian ignores self-loops and has zero row sums") {
  Matrix adj(2, 2);
  adj << 1, 1, 0, 1;
  Matrix l = loopless_laplacian(WeightedDigraph(adj));
  Matrix expected(2, 2);
  expected << 1, -1, 0, 0;
  CHECK(max_abs_diff(l, expected) == 0.0);

  Matrix l3 = loopless_laplacian(cycle3());
  Matrix expected3(3, 3);
  expected3 << 1, -1, 0, 0, 1, -1, -1, 0, 1;
  CHECK(max_abs_diff(l3, expected3) == 0.0);
}

TEST_CASE("graph_from_loopy inverts loopy_laplacian") {
  Matrix q(2, 2);
  q << 2, -1, 0, 1;
  Matrix adj = graph_from_loopy(q).adjacency();
  Matrix expected(2, 2);
  expected << 1, 1, 0, 1;
  CHECK(max_abs_diff(adj, expected) == 0.0);

  CHECK(graph_from_loopy(Matrix::Zero(2, 2)).adjacency().isZero());

  // paper's 6-node Q determines the graph uniquely
  WeightedDigraph g6 = graph_from_loopy(directed6_q());
  CHECK(g6.weight(3, 3) == doctest::Approx(1.0));  // self-loop at node 4
  CHECK(max_abs_diff(loopy_laplacian(g6), directed6_q()) == 0.0);

  Matrix bad(2, 2);
  bad << 1, 1, 0, 1;  // positive off-diagonal
  CHECK_THROWS_AS(graph_from_loopy(bad), PreconditionError);
  bad << 0, -1, 0, 0;  // negative row sum
  CHECK_THROWS_AS(graph_from_loopy(bad), PreconditionError);
}

TEST_CASE("round trip property on random graphs") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    WeightedDigraph g = random_digraph(rng, 2 + t % 9, 0.5, /*allow_self_loops=*/true);
    WeightedDigraph back = graph_from_loopy(loopy_laplacian(g));
    CHECK(max_abs_diff(back.adjacency(), g.adjacency()) <= 1e-12);
    CHECK(loopless_laplacian(g).rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("reachable subsets") {
  WeightedDigraph path = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(is_reachable_subset(path, NodeSubset({2}, 3)));
  CHECK_FALSE(is_reachable_subset(path, NodeSubset({0}, 3)));

  WeightedDigraph g6 = graph_from_loopy(directed6_q());
  CHECK(is_reachable_subset(g6, NodeSubset({0, 1, 2}, 6)));
}

TEST_CASE("reachability is monotone and implied by strong connectivity") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    int n = 3 + t % 8;
    WeightedDigraph g = random_digraph(rng, n, 0.35);
    std::vector<int> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::uniform_int_distribution<int> size_dist(1, n - 1);
    int small = size_dist(rng);
    std::uniform_int_distribution<int> grow(small, n);
    int large = grow(rng);
    std::vector<int> alpha(nodes.begin(), nodes.begin() + small);
    std::vector<int> beta(nodes.begin(), nodes.begin() + large);
    if (is_reachable_subset(g, NodeSubset(alpha, n))) {
      CHECK(is_reachable_subset(g, NodeSubset(beta, n)));
    }
  }
  for (int t = 0; t < 20; ++t) {
    int n = 3 + t % 6;
    WeightedDigraph g = random_strongly_connected(rng, n);
    REQUIRE(is_strongly_connected(g));
    std::uniform_int_distribution<int> pick(0, n - 1);
    CHECK(is_reachable_subset(g, NodeSubset({pick(rng)}, n)));
  }
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(cycle3()));
  CHECK_FALSE(is_strongly_connected(build_graph(2, {{0, 1, 1.0}})));
  CHECK(is_strongly_connected(build_graph(1, {})));
}

TEST_CASE("weight balance") {
  Matrix sym(3, 3);
  sym << 0, 1, 2, 1, 0, 0.5, 2, 0.5, 0;
  CHECK(is_weight_balanced(WeightedDigraph(sym)));
  CHECK(is_weight_balanced(cycle3()));
  CHECK_FALSE(is_weight_balanced(build_graph(2, {{0, 1, 1.0}})));
}

TEST_CASE("weight balance equals zero column sums of the loop-less Laplacian") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    WeightedDigraph g = (t % 2 == 0) ? random_weight_balanced(rng, 3 + t % 6)
                                     : random_digraph(rng, 3 + t % 6, 0.4);
    Vector col_sums = loopless_laplacian(g).colwise().sum();
    bool balanced_by_columns = col_sums.cwiseAbs().maxCoeff() <=
                               1e-9 * std::max(1.0, g.adjacency().maxCoeff());
    CHECK(is_weight_balanced(g) == balanced_by_columns);
  }
}

TEST_CASE("transition matrix with virtual self-loop") {
  Matrix adj(2, 2);
  adj << 0, 2, 3, 0;
  Matrix p = transition_matrix(WeightedDigraph(adj));
  Matrix expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK(max_abs_diff(p, expected) == 0.0);

  adj << 0, 0, 1, 0;
  p = transition_matrix(WeightedDigraph(adj));
  expected << 1, 0, 1, 0;
  CHECK(max_abs_diff(p, expected) == 0.0);

  adj << 1, 1, 1, 1;
  p = transition_matrix(WeightedDigraph(adj));
  expected << 0.5, 0.5, 0.5, 0.5;
  CHECK(max_abs_diff(p, expected) == 0.0);
}
