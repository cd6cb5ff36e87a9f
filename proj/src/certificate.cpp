#include "l2sos/certificate.hpp"

#include <cmath>

#include "l2sos/level2.hpp"
#include "l2sos/numerics.hpp"
#include "l2sos/relaxations.hpp"

namespace l2sos {

namespace {

constexpr double kReconcileTol = 1e-6;
constexpr double kPsdTol = 1e-6;

Eigen::MatrixXd dual_combination(const SdpProblem& p, const Eigen::VectorXd& duals) {
  Eigen::MatrixXd out = -p.objective;
  for (Index i = 0; i < p.constraint_count(); ++i) out += duals(i) * Eigen::MatrixXd(p.constraints[static_cast<std::size_t>(i)].a);
  return out;
}

// Splits the off-diagonal of Lambda into Johnson and Kneser parts.
void split_weights(const Eigen::MatrixXd& lambda, const Eigen::MatrixXd& x2_scaled, const PairIndex& pairs,
                   Eigen::MatrixXd& wj, Eigen::MatrixXd& wk) {
  const Index m = pairs.size();
  wj = Eigen::MatrixXd::Zero(m, m);
  wk = Eigen::MatrixXd::Zero(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = a + 1; b < m; ++b) {
      const auto [i, j] = pairs.pair_of(a);
      const auto [k, l] = pairs.pair_of(b);
      const bool share = i == k || i == l || j == k || j == l;
      const double off = 0.5 * (lambda(a, b) + lambda(b, a));
      if (share) {
        wj(a, b) = wj(b, a) = -off - x2_scaled(a, b);
      } else {
        wk(a, b) = wk(b, a) = -off;
      }
    }
}

void fill_spectrum(Certificate& c, const Eigen::VectorXd& y2) {
  c.lambda1 = lambda_min(c.lambda_matrix);
  c.lambda2_restricted = lambda2_restricted(c.lambda_matrix, y2);
  c.psd = c.lambda1 >= -kPsdTol;
}

}  // namespace

Certificate extract_certificate(const SdpSolution& sol, const Instance& inst) {
  if (sol.status != SdpStatus::Optimal) throw InvalidArgument("extract_certificate: solution is not optimal");
  const Index n = inst.size();
  const PairIndex pairs(n);
  const Index m = pairs.size();
  const SdpProblem with = build_sos4_reduced(inst, true);
  const SdpProblem* problem = nullptr;
  SdpProblem without;
  if (sol.duals.size() == with.constraint_count()) {
    problem = &with;
  } else if (sol.duals.size() == m) {
    without = build_sos4_reduced(inst, false);
    problem = &without;
  } else {
    throw InvalidArgument("extract_certificate: solution does not belong to the reduced program");
  }
  if (sol.slack.rows() != m) throw InvalidArgument("extract_certificate: slack has the wrong size");
  const Eigen::MatrixXd rebuilt = dual_combination(*problem, sol.duals);
  if ((rebuilt - sol.slack).cwiseAbs().maxCoeff() > kReconcileTol)
    throw NumericalError("extract_certificate: slack does not match the dual combination");

  Certificate c;
  c.n = n;
  c.lambda_matrix = 0.5 * (sol.slack + sol.slack.transpose());
  c.v_diag = sol.duals.head(m);
  Eigen::MatrixXd wj, wk;
  split_weights(c.lambda_matrix, problem->objective, pairs, wj, wk);
  c.w_johnson = SignedGraph(std::move(wj));
  c.w_kneser = SignedGraph(std::move(wk));
  fill_spectrum(c, level2_vector(inst.truth).entries);
  return c;
}

Certificate certificate_from_weights(const Instance& inst, const Eigen::MatrixXd& w_johnson,
                                     const Eigen::MatrixXd& w_kneser) {
  const Index n = inst.size();
  const PairIndex pairs(n);
  const Index m = pairs.size();
  if (w_johnson.rows() != m || w_johnson.cols() != m || w_kneser.rows() != m || w_kneser.cols() != m)
    throw InvalidArgument("certificate_from_weights: weight matrices must be C(n,2) square");
  const Eigen::MatrixXd x2 = lift_to_pairs(inst.observation) / static_cast<double>(n - 2);
  const Eigen::MatrixXd mm = x2 + w_johnson + w_kneser;
  const Eigen::VectorXd y2 = level2_vector(inst.truth).entries;

  Certificate c;
  c.n = n;
  c.v_diag = y2.cwiseProduct(mm * y2);
  c.lambda_matrix = Eigen::MatrixXd(c.v_diag.asDiagonal()) - mm;
  Eigen::MatrixXd wj, wk;
  split_weights(c.lambda_matrix, x2, pairs, wj, wk);
  c.w_johnson = SignedGraph(std::move(wj));
  c.w_kneser = SignedGraph(std::move(wk));
  fill_spectrum(c, y2);
  return c;
}

Certificate zero_weight_certificate(const Instance& inst) {
  const Index m = pair_count(inst.size());
  return certificate_from_weights(inst, Eigen::MatrixXd::Zero(m, m), Eigen::MatrixXd::Zero(m, m));
}

ZeroSumReport check_zero_sums(const Certificate& c, double tol) {
  ZeroSumReport r;
  const SosConstraintSet set = sos_constraint_set(c.n);
  const Eigen::MatrixXd& wj = c.w_johnson.weights();
  const Eigen::MatrixXd& wk = c.w_kneser.weights();
  for (const auto& cls : set.johnson_classes) {
    double sum = 0.0;
    for (const PairEdge& e : cls) sum += wj(e.a, e.b);
    r.johnson_max = std::max(r.johnson_max, std::abs(sum));
  }
  for (const auto& cls : set.kneser_classes) {
    double sum = 0.0;
    for (const PairEdge& e : cls) sum += wk(e.a, e.b);
    r.kneser_max = std::max(r.kneser_max, std::abs(sum));
  }
  r.ok = r.johnson_max <= tol && r.kneser_max <= tol;
  return r;
}

Eigen::MatrixXd conjugate_by_truth(const Eigen::MatrixXd& m, const Eigen::VectorXd& truth) {
  const Eigen::VectorXd u = level2_vector(truth).entries;
  if (m.rows() != u.size() || m.cols() != u.size()) throw InvalidArgument("conjugate_by_truth: size mismatch");
  return u.asDiagonal() * m * u.asDiagonal();
}

Eigen::MatrixXd expected_certificate(const Instance& inst) {
  const Index n = inst.size();
  const double scale = (1.0 - 2.0 * inst.noise) / static_cast<double>(n - 2);
  return scale * conjugate_by_truth(laplacian(level2_graph(inst.graph)), inst.truth);
}

SignedGraph combined_graph(const Instance& inst, const Certificate& c) {
  const Index n = inst.size();
  if (c.n != n) throw InvalidArgument("combined_graph: certificate belongs to another instance");
  const Eigen::MatrixXd x2 = lift_to_pairs(inst.observation) / static_cast<double>(n - 2);
  Eigen::MatrixXd w = conjugate_by_truth(x2 + c.w_johnson.weights() + c.w_kneser.weights(), inst.truth);
  w = 0.5 * (w + w.transpose()).eval();
  SignedGraph g(std::move(w));
  const double lap = lambda2_restricted(laplacian(g), Eigen::VectorXd::Ones(g.size()));
  if (std::abs(lap - c.lambda2_restricted) > kReconcileTol)
    throw NumericalError("combined_graph: Laplacian connectivity " + std::to_string(lap) +
                         " disagrees with the certificate's " + std::to_string(c.lambda2_restricted));
  return g;
}

SignedBoundReport signed_cheeger_bound(const SignedGraph& g, Index limit) {
  if (g.size() < 2) throw InvalidArgument("signed_cheeger_bound: need at least 2 vertices");
  SignedBoundReport r;
  r.lambda2 = lambda2_restricted(laplacian(g), Eigen::VectorXd::Ones(g.size()));
  const auto [pos, neg] = split_signs(g);
  r.degenerate_positive_part = pos.edge_count() == 0;
  r.degmax_pos = max_degree(pos);
  r.cheeger_pos = r.degenerate_positive_part ? 0.0 : *cheeger_constant(pos, limit).ratio;
  r.mincut_neg = min_cut(neg, limit).boundary_weight;
  const double expansion = r.degmax_pos > 0.0 ? r.cheeger_pos * r.cheeger_pos / (2.0 * r.degmax_pos) : 0.0;
  r.bound = expansion + 2.0 * r.mincut_neg;
  r.satisfied = r.lambda2 >= r.bound - 1e-8;
  return r;
}

WeylDecompositionReport weyl_decomposition_report(const Instance& inst, const Certificate& c) {
  const Eigen::VectorXd y2 = level2_vector(inst.truth).entries;
  const Eigen::MatrixXd expected = expected_certificate(inst);
  const WeylReport w = weyl_check(expected, c.lambda_matrix - expected, y2);
  WeylDecompositionReport r;
  r.lambda2 = w.lhs;
  r.lambda2_expected = lambda2_restricted(expected, y2);
  r.deviation_lambda1 = lambda_min(c.lambda_matrix - expected);
  r.holds = r.lambda2 >= w.rhs - 1e-8;
  return r;
}

}  // namespace l2sos
