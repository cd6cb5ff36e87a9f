#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "l2sos/level2.hpp"
#include "oracles.hpp"

using namespace l2sos;

TEST_CASE("pair index is the lexicographic bijection") {
  for (Index n = 2; n <= 9; ++n) {
    const PairIndex pairs(n);
    CHECK(pairs.size() == n * (n - 1) / 2);
    Index k = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        CHECK(pairs.index_of(i, j) == k);
        CHECK(pairs.index_of(j, i) == k);
        CHECK(pairs.pair_of(k) == std::make_pair(i, j));
        ++k;
      }
    CHECK(vertices_for_pair_count(pair_count(n)) == n);
  }
  CHECK_THROWS_AS(vertices_for_pair_count(7), InvalidArgument);
  CHECK_THROWS_AS(PairIndex(4).index_of(2, 2), InvalidArgument);
}

TEST_CASE("level2 vector") {
  CHECK(level2_vector(Eigen::Vector3d(1, 1, 1)).entries == Eigen::Vector3d(1, 1, 1));
  CHECK(level2_vector(Eigen::Vector3d(1, -1, 1)).entries == Eigen::Vector3d(-1, 1, -1));
  CHECK(level2_vector(Eigen::Vector3d(2, 3, 5)).entries == Eigen::Vector3d(6, 10, 15));
  CHECK_THROWS_AS(level2_vector(Eigen::VectorXd::Ones(1)), InvalidArgument);
}

TEST_CASE("factor_level2") {
  CHECK(factor_level2(level2_vector(Eigen::Vector3d(1, -1, 1))) == Eigen::Vector3d(1, -1, 1));
  CHECK(factor_level2(level2_vector(Eigen::VectorXd::Ones(6))) == Eigen::VectorXd::Ones(6));
  CHECK_THROWS_AS(factor_level2(Level2Vector{3, Eigen::Vector3d(-1, -1, -1)}), InconsistentLevel2);
  CHECK_THROWS_AS(factor_level2(Level2Vector{3, Eigen::Vector3d(1, 0.5, 1)}), InconsistentLevel2);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd y = oracle::random_truth(7, rng);
    const Eigen::VectorXd back = factor_level2(level2_vector(y));
    CHECK((back == y || back == -y));
    CHECK(back(0) == 1.0);
  }
}

TEST_CASE("no +-1 labeling factors the all-minus 3-node vector") {
  int found = 0;
  for (int mask = 0; mask < 8; ++mask) {
    Eigen::Vector3d y;
    for (int i = 0; i < 3; ++i) y(i) = (mask >> i) & 1 ? -1.0 : 1.0;
    if (y(0) * y(1) == -1 && y(0) * y(2) == -1 && y(1) * y(2) == -1) ++found;
  }
  CHECK(found == 0);
}

TEST_CASE("level2 graph") {
  CHECK(level2_graph(complete_graph(3)) == complete_graph(3));

  // Path 0-1-2: pairs {0,1}=0, {0,2}=1, {1,2}=2; edge 0-1 joins {0,2}-{1,2},
  // edge 1-2 joins {0,1}-{0,2}.
  const SignedGraph p = level2_graph(path_graph(3));
  CHECK(p.edge_count() == 2);
  CHECK(p.has_edge(1, 2));
  CHECK(p.has_edge(0, 1));

  const SignedGraph k4 = level2_graph(complete_graph(4));
  CHECK(k4.size() == 6);
  CHECK(k4.edge_count() == 12);
  for (Index v = 0; v < 6; ++v) CHECK(degree(k4, v) == 4.0);
  CHECK_THROWS_AS(level2_graph(complete_graph(2)), InvalidArgument);
}

TEST_CASE("level2 observation") {
  CHECK(level2_observation(Eigen::MatrixXd::Zero(4, 4)).edge_count() == 0);

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 4);
  x(0, 1) = x(1, 0) = -1.0;
  const SignedGraph g = level2_observation(x);
  const PairIndex pairs(4);
  CHECK(g.edge_count() == 2);
  CHECK(g.weight(pairs.index_of(0, 2), pairs.index_of(1, 2)) == -1.0);
  CHECK(g.weight(pairs.index_of(0, 3), pairs.index_of(1, 3)) == -1.0);

  // 2x2 grid: 4 edges, each repeated n-2 = 2 times.
  CHECK(level2_observation(grid_graph(2, 2).weights()).edge_count() == 8);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 3);
  bad(0, 1) = bad(1, 0) = 2.0;
  CHECK_THROWS_AS(level2_observation(bad), InvalidArgument);
}

TEST_CASE("johnson and kneser graphs") {
  CHECK(johnson_graph(3) == complete_graph(3));
  const SignedGraph j4 = johnson_graph(4);
  CHECK(j4.edge_count() == 12);
  const SignedGraph j5 = johnson_graph(5);
  for (Index v = 0; v < 10; ++v) CHECK(degree(j5, v) == 6.0);

  const SignedGraph k4 = kneser_graph(4);
  CHECK(k4.edge_count() == 3);
  for (Index v = 0; v < 6; ++v) CHECK(degree(k4, v) == 1.0);
  const SignedGraph k5 = kneser_graph(5);
  CHECK(k5.edge_count() == 15);
  for (Index v = 0; v < 10; ++v) CHECK(degree(k5, v) == 3.0);
  CHECK(j4.edge_count() + k4.edge_count() == 15);
  CHECK_THROWS_AS(kneser_graph(3), InvalidArgument);
  CHECK_THROWS_AS(johnson_graph(2), InvalidArgument);
}

TEST_CASE("petersen graph has girth 5 and diameter 2") {
  const Eigen::MatrixXd a = kneser_graph(5).weights();
  const Eigen::MatrixXd a2 = a * a;
  for (Index i = 0; i < 10; ++i) {
    CHECK((a * a2)(i, i) == 0.0);  // no triangles
    for (Index j = 0; j < 10; ++j)
      if (i != j && a(i, j) == 0.0) CHECK(a2(i, j) == 1.0);  // unique common neighbor, no 4-cycles
  }
}

TEST_CASE("property: adjacency by set intersection, checked per pair") {
  for (Index n = 4; n <= 8; ++n) {
    const PairIndex pairs(n);
    const Eigen::MatrixXd j = johnson_graph(n).weights();
    const Eigen::MatrixXd k = kneser_graph(n).weights();
    const Eigen::MatrixXd full = j + k + Eigen::MatrixXd::Identity(pairs.size(), pairs.size());
    CHECK(full == Eigen::MatrixXd::Ones(pairs.size(), pairs.size()));
    for (Index a = 0; a < pairs.size(); ++a)
      for (Index b = 0; b < pairs.size(); ++b) {
        if (a == b) continue;
        const auto [p, q] = pairs.pair_of(a);
        const auto [r, s] = pairs.pair_of(b);
        const std::set<Index> u{p, q, r, s};
        CHECK(j(a, b) == (u.size() == 3 ? 1.0 : 0.0));
      }
    CHECK(level2_graph(complete_graph(n)) == johnson_graph(n));
  }
}

TEST_CASE("property: level2 graphs sit inside the johnson graph with n-2 multiplicity") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const Index n = 4 + t % 5;
    const SignedGraph g = oracle::random_connected(n, 0.3, rng);
    const SignedGraph l2 = level2_graph(g);
    const Eigen::MatrixXd j = johnson_graph(n).weights();
    CHECK(((l2.weights().array() != 0.0) <= (j.array() != 0.0)).all());
    CHECK(l2.edge_count() == (n - 2) * g.edge_count());
    CHECK(level2_observation(g.weights()) == l2);

    Eigen::MatrixXd x = g.weights();
    const Eigen::VectorXd y = oracle::random_truth(n, rng);
    x = y.asDiagonal() * x * y.asDiagonal();
    for (const Edge& e : g.edges())
      if (rng() % 4 == 0) x(e.u, e.v) = x(e.v, e.u) = -x(e.u, e.v);
    CHECK(level2_observation(x).edge_count() == (n - 2) * g.edge_count());
  }
}

TEST_CASE("pair map sidecar") {
  std::ostringstream s;
  write_level2_edge_list(s, johnson_graph(3), true);
  CHECK(s.str().find("pair 2 1 2") != std::string::npos);
  std::istringstream back(s.str());
  CHECK(read_edge_list(back) == johnson_graph(3));
}
