#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "l2sos/level2.hpp"
#include "l2sos/relaxations.hpp"
#include "oracles.hpp"

using namespace l2sos;

namespace {

double value(const SdpProblem& p) {
  SolverConfig cfg;
  cfg.tolerance = 1e-9;
  const SdpSolution s = solve(p, cfg);
  REQUIRE(s.status == SdpStatus::Optimal);
  return s.primal_objective;
}

double apply(const SdpConstraint& c, const Eigen::MatrixXd& y) { return Eigen::MatrixXd(c.a).cwiseProduct(y).sum(); }

// Counts equality constraints for the n^2 form by classifying each
// upper-triangular entry by the multiset of its four indices reduced mod 2.
Index full_constraint_oracle(Index n) {
  std::map<std::vector<Index>, Index> classes;
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        for (Index d = 0; d < n; ++d) {
          if (a * n + b > c * n + d) continue;
          std::vector<Index> t{a, b, c, d};
          std::sort(t.begin(), t.end());
          std::vector<Index> odd;
          for (Index v = 0; v < n; ++v)
            if (std::count(t.begin(), t.end(), v) % 2 == 1) odd.push_back(v);
          ++classes[odd];
        }
  Index total = 0;
  for (const auto& [odd, size] : classes) total += odd.empty() ? size : size - 1;
  return total;
}

}  // namespace

TEST_CASE("constraint counts") {
  std::mt19937_64 rng(1);
  const Instance i4 = sample(complete_graph(4), oracle::random_truth(4, rng), 0.1, 1);
  const SdpProblem sdp = build_sdp(i4);
  CHECK(sdp.dimension == 4);
  CHECK(sdp.constraint_count() == 4);
  CHECK(build_sos4_reduced(i4).constraint_count() == 6 + 6 + 2);
  CHECK(build_sos4_reduced(i4, false).constraint_count() == 6);

  const SosConstraintSet s4 = sos_constraint_set(4);
  CHECK(s4.johnson_constraint_count() == 6);
  CHECK(s4.kneser_constraint_count() == 2);
  for (const auto& cls : s4.johnson_classes) CHECK(cls.size() == 2);

  const Instance i5 = sample(complete_graph(5), oracle::random_truth(5, rng), 0.1, 1);
  CHECK(build_sos4_reduced(i5).constraint_count() == 10 + 20 + 10);

  CHECK(sos_constraint_set(3).kneser_classes.empty());
  CHECK_THROWS_AS(sos_constraint_set(2), InvalidArgument);
}

TEST_CASE("full form matches the class enumeration") {
  std::mt19937_64 rng(2);
  for (Index n = 3; n <= 5; ++n) {
    const Instance inst = sample(complete_graph(n), oracle::random_truth(n, rng), 0.1, 1);
    const SdpProblem p = build_sos4_full(inst);
    CHECK(p.dimension == n * n);
    CHECK(p.constraint_count() == full_constraint_oracle(n));
  }
  CHECK(full_constraint_oracle(3) == 42);
  CHECK_THROWS_AS(build_sos4_full(sample(path_graph(9), Eigen::VectorXd::Ones(9), 0.1, 1)), LimitExceeded);
}

TEST_CASE("objective symmetry") {
  std::mt19937_64 rng(3);
  const Instance inst = sample(complete_graph(5), oracle::random_truth(5, rng), 0.3, 2);
  Instance t = inst;
  t.observation = inst.observation.transpose();
  CHECK(build_sdp(t).objective == build_sdp(inst).objective);
  CHECK(build_sos4_reduced(t).objective == build_sos4_reduced(inst).objective);
}

TEST_CASE("property: every off-diagonal pair entry is in exactly one class") {
  for (Index n = 4; n <= 7; ++n) {
    const SosConstraintSet set = sos_constraint_set(n);
    const Index m = pair_count(n);
    Eigen::MatrixXi hits = Eigen::MatrixXi::Zero(m, m);
    for (const auto& cls : set.johnson_classes)
      for (const PairEdge& e : cls) ++hits(std::min(e.a, e.b), std::max(e.a, e.b));
    for (const auto& cls : set.kneser_classes)
      for (const PairEdge& e : cls) ++hits(std::min(e.a, e.b), std::max(e.a, e.b));
    for (Index a = 0; a < m; ++a)
      for (Index b = a + 1; b < m; ++b) CHECK(hits(a, b) == 1);
    for (const auto& cls : set.johnson_classes) CHECK(static_cast<Index>(cls.size()) == n - 2);
  }
}

TEST_CASE("property: the rank-1 truth point satisfies every constraint") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const Index n = 4 + t % 4;
    const Eigen::VectorXd y = oracle::random_truth(n, rng);
    const Instance inst = sample(complete_graph(n), y, 0.2, static_cast<std::uint64_t>(t));
    const Eigen::VectorXd y2 = level2_vector(y).entries;
    const Eigen::MatrixXd target = y2 * y2.transpose();
    for (const SdpConstraint& c : build_sos4_reduced(inst).constraints) CHECK(apply(c, target) == c.b);
    if (n <= 5) {
      Eigen::VectorXd yy(n * n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) yy(i * n + j) = y(i) * y(j);
      const Eigen::MatrixXd full = yy * yy.transpose();
      for (const SdpConstraint& c : build_sos4_full(inst).constraints) CHECK(apply(c, full) == c.b);
      CHECK(Eigen::MatrixXd(build_sos4_full(inst).objective).cwiseProduct(full).sum() ==
            doctest::Approx(y.dot(inst.observation * y)));
    }
    CHECK(build_sos4_reduced(inst).objective.cwiseProduct(target).sum() ==
          doctest::Approx(y.dot(inst.observation * y)));
  }
}

TEST_CASE("noiseless values and recovery") {
  const Eigen::VectorXd y = (Eigen::VectorXd(4) << 1, 1, -1, 1).finished();
  const Instance inst = sample(path_graph(4), y, 0.0, 0);
  CHECK(value(build_sdp(inst)) == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(value(build_sos4_reduced(inst)) == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(value(build_sos4_full(inst)) == doctest::Approx(6.0).epsilon(1e-6));

  SolverConfig cfg;
  cfg.tolerance = 1e-9;
  const RecoveryReport a = check_recovery(solve(build_sdp(inst), cfg), inst, RelaxationLevel::Sdp, 1e-4);
  CHECK(a.exact);
  CHECK(a.rounding_recovers);
  const RecoveryReport b = check_recovery(solve(build_sos4_reduced(inst), cfg), inst, RelaxationLevel::Sos4, 1e-4);
  CHECK(b.exact);
  CHECK(b.rounding_recovers);
}

TEST_CASE("worked example: degree 2 fails, degree 4 succeeds") {
  const Instance inst = oracle::worked_example();
  SolverConfig cfg;
  cfg.tolerance = 1e-9;
  CHECK_FALSE(check_recovery(solve(build_sdp(inst), cfg), inst, RelaxationLevel::Sdp, 1e-4).exact);
  CHECK(check_recovery(solve(build_sos4_reduced(inst), cfg), inst, RelaxationLevel::Sos4, 1e-4).exact);
}

TEST_CASE("check_recovery requires an optimal solution") {
  const Instance inst = oracle::worked_example();
  SolverConfig cfg;
  cfg.max_iterations = 2;
  CHECK_THROWS_AS(check_recovery(solve(build_sdp(inst), cfg), inst, RelaxationLevel::Sdp, 1e-4), InvalidArgument);
}

TEST_CASE("value ordering on small instances") {
  // The pair block of the n^2 form is a principal submatrix, so the reduced
  // program is never tighter; the constant rows of the n^2 form contain an
  // n x n correlation matrix, so the SDP is never tighter than the n^2 form.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 8; ++t) {
    const Index n = 4 + t % 2;
    const Instance inst = sample(oracle::random_connected(n, 0.5, rng), oracle::random_truth(n, rng), 0.3,
                                 static_cast<std::uint64_t>(t));
    const double sdp = value(build_sdp(inst));
    const double full = value(build_sos4_full(inst));
    const double reduced = value(build_sos4_reduced(inst));
    const double map = oracle::map_value(inst.observation);
    CHECK(sdp >= full - 1e-5);
    CHECK(full >= map - 1e-5);
    CHECK(reduced >= full - 1e-5);
    CHECK(value(build_sos4_reduced(inst, false)) >= reduced - 1e-5);
  }
}

TEST_CASE("the reduced form can be strictly looser") {
  // K4 with every observation negative. The SDP value is 4 (the entries of a
  // correlation matrix sum to at least 0). The pair-level program lives on the
  // octahedron J(4,2) with weights -1/2; three times the projector onto the
  // top eigenspace (eigenvalue 1, multiplicity 2) has unit diagonal, giving 6,
  // which also matches the bound 6 * lambda_max.
  const SignedGraph k4 = complete_graph(4);
  const Instance neg = make_instance(k4, Eigen::VectorXd::Ones(4), 0.1, -k4.weights());
  const Eigen::VectorXd spectrum = oracle::eigenvalues(-lift_to_pairs(k4.weights()) / 2.0);
  CHECK(spectrum(5) == doctest::Approx(1.0));
  CHECK(spectrum(4) == doctest::Approx(1.0));
  CHECK(value(build_sdp(neg)) == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(value(build_sos4_reduced(neg, false)) == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(value(build_sos4_full(neg)) == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(oracle::map_value(neg.observation) == 4.0);

  // A 4-vertex witness where the class constraints do not close the gap: a
  // star at vertex 0 plus a corrupted edge 2-3.
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, 4);
  x(0, 1) = x(1, 0) = x(0, 2) = x(2, 0) = x(0, 3) = x(3, 0) = 1.0;
  x(2, 3) = x(3, 2) = -1.0;
  const Instance inst = make_instance(SignedGraph(x.cwiseAbs()), Eigen::VectorXd::Ones(4), 0.25, x);
  CHECK(value(build_sos4_reduced(inst)) == doctest::Approx(4.5).epsilon(1e-6));
  CHECK(value(build_sos4_full(inst)) == doctest::Approx(4.0).epsilon(1e-6));
}
