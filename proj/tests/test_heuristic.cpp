#include <doctest.h>

#include <random>

#include "l2sos/certificate.hpp"
#include "l2sos/heuristic.hpp"
#include "l2sos/level2.hpp"
#include "l2sos/numerics.hpp"
#include "oracles.hpp"

using namespace l2sos;

namespace {

Eigen::MatrixXd conjugated_x2(const Instance& inst) {
  return conjugate_by_truth(lift_to_pairs(inst.observation), inst.truth);
}

}  // namespace

TEST_CASE("c = 0 returns the input") {
  const Eigen::MatrixXd m = conjugated_x2(oracle::worked_example());
  CHECK(algorithm1(m, 0.0).weights() == m);
}

TEST_CASE("symmetric degrees give no Kneser weight") {
  const Eigen::MatrixXd m = lift_to_pairs(complete_graph(6).weights());
  CHECK(kneser_heuristic_weights(m, 0.4).isZero(0.0));
}

TEST_CASE("branch assignment on a hand-built 4-set") {
  // n = 4: pairings {01|23}, {02|13}, {03|12}. Degrees are set through a
  // Johnson-supported matrix so the Kneser entries of m stay zero.
  const PairIndex pairs(4);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6, 6);
  const auto link = [&](Index a, Index b, double w) { m(a, b) = m(b, a) = w; };
  link(pairs.index_of(0, 1), pairs.index_of(0, 2), 2.0);  // raises {01} and {02}
  link(pairs.index_of(0, 1), pairs.index_of(1, 2), 1.0);  // raises {01} and {12}
  const Eigen::VectorXd deg = m.rowwise().sum();
  const auto cls = kneser_class(pairs, 0, 1, 2, 3);
  const double psi0 = deg(cls[0].a) + deg(cls[0].b);  // 3
  const double psi1 = deg(cls[1].a) + deg(cls[1].b);  // 2
  const double psi2 = deg(cls[2].a) + deg(cls[2].b);  // 1
  REQUIRE(psi0 > psi1);
  REQUIRE(psi1 > psi2);
  const Eigen::MatrixXd w = kneser_heuristic_weights(m, 0.1);
  CHECK(w(cls[0].a, cls[0].b) == -0.2);
  CHECK(w(cls[1].a, cls[1].b) == 0.1);
  CHECK(w(cls[2].a, cls[2].b) == 0.1);

  // Top two tied: the smallest pairing takes 2c.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(6, 6);
  t(pairs.index_of(0, 1), pairs.index_of(0, 2)) = t(pairs.index_of(0, 2), pairs.index_of(0, 1)) = 1.0;
  const Eigen::MatrixXd wt = kneser_heuristic_weights(t, 0.1);
  CHECK(wt(cls[0].a, cls[0].b) == -0.1);
  CHECK(wt(cls[1].a, cls[1].b) == -0.1);
  CHECK(wt(cls[2].a, cls[2].b) == 0.2);

  // With a tie tolerance wide enough, everything counts as equal.
  CHECK(kneser_heuristic_weights(m, 0.1, 5.0).isZero(0.0));
}

TEST_CASE("property: zero sums, symmetry and scale equivariance") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Index n = 4 + t % 4;
    const Instance inst = sample(oracle::random_connected(n, 0.5, rng), oracle::random_truth(n, rng), 0.3,
                                 static_cast<std::uint64_t>(t));
    const Eigen::MatrixXd m = conjugated_x2(inst);
    const double c = 0.05 * (t + 1);
    const Eigen::MatrixXd w = kneser_heuristic_weights(m, c);
    CHECK(w == w.transpose());
    const PairIndex pairs(n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        for (Index k = j + 1; k < n; ++k)
          for (Index l = k + 1; l < n; ++l) {
            double sum = 0.0;
            for (const PairEdge& e : kneser_class(pairs, i, j, k, l)) sum += w(e.a, e.b);
            CHECK(std::abs(sum) < 1e-15);
          }
    CHECK(kneser_heuristic_weights(2.5 * m, c) == w);
    CHECK(algorithm1(m, c).weights() == m + w);
  }
}

TEST_CASE("sweep anchor and argmax") {
  const Eigen::MatrixXd m = conjugated_x2(oracle::worked_example());
  const SweepResult r = c_sweep(m, 0.0, 0.6, 61);
  CHECK(r.c_values.size() == 61);
  CHECK(r.lambda2_values(0) == doctest::Approx(oracle::restricted_min(laplacian(SignedGraph(m)), Eigen::VectorXd::Ones(10))).epsilon(1e-12));
  CHECK(r.best_lambda2 == r.lambda2_values.maxCoeff());
  Index first = 0;
  while (r.lambda2_values(first) != r.best_lambda2) ++first;
  CHECK(r.best_c == r.c_values(first));
  CHECK_THROWS_AS(c_sweep(m, 0.0, 0.0, 2), InvalidArgument);
  CHECK_THROWS_AS(c_sweep(m, 0.0, 1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(kneser_heuristic_weights(Eigen::MatrixXd::Zero(7, 7), 0.1), InvalidArgument);
}
