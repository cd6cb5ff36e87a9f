#include "l2sos/heuristic.hpp"

#include <algorithm>
#include <cmath>

#include "l2sos/level2.hpp"
#include "l2sos/numerics.hpp"

namespace l2sos {

Eigen::MatrixXd kneser_heuristic_weights(const Eigen::MatrixXd& m, double c, double tie_tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("algorithm1: matrix must be square");
  const Index n = vertices_for_pair_count(m.rows());
  if (n < 4) throw InvalidArgument("algorithm1: need n >= 4");
  const PairIndex pairs(n);
  const Eigen::VectorXd deg = m.rowwise().sum();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  if (c == 0.0) return w;

  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k)
        for (Index l = k + 1; l < n; ++l) {
          const auto cls = kneser_class(pairs, i, j, k, l);
          std::array<double, 3> psi{};
          for (int t = 0; t < 3; ++t) psi[t] = deg(cls[t].a) + deg(cls[t].b);
          std::array<int, 3> order{0, 1, 2};
          std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return psi[a] > psi[b]; });
          const double p1 = psi[order[0]], p2 = psi[order[1]], p3 = psi[order[2]];
          std::array<double, 3> assign{};
          if (p1 - p3 <= tie_tol) {
            continue;
          } else if (p1 - p2 <= tie_tol) {
            assign[order[0]] = -c;
            assign[order[1]] = -c;
            assign[order[2]] = 2.0 * c;
          } else {
            assign[order[0]] = -2.0 * c;
            assign[order[1]] = c;
            assign[order[2]] = c;
          }
          for (int t = 0; t < 3; ++t) {
            w(cls[t].a, cls[t].b) = assign[t];
            w(cls[t].b, cls[t].a) = assign[t];
          }
        }
  return w;
}

SignedGraph algorithm1(const Eigen::MatrixXd& m, double c, double tie_tol) {
  return SignedGraph(Eigen::MatrixXd(m + kneser_heuristic_weights(m, c, tie_tol)));
}

SweepResult c_sweep(const Eigen::MatrixXd& m, double c_min, double c_max, Index steps, double tie_tol) {
  if (steps < 2) throw InvalidArgument("c_sweep: need at least 2 steps");
  if (!(c_min < c_max)) throw InvalidArgument("c_sweep: need c_min < c_max");
  SweepResult r;
  r.c_values = Eigen::VectorXd::LinSpaced(steps, c_min, c_max);
  r.lambda2_values.resize(steps);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.rows());
  for (Index s = 0; s < steps; ++s)
    r.lambda2_values(s) = lambda2_restricted(laplacian(algorithm1(m, r.c_values(s), tie_tol)), ones);
  Index best = 0;
  for (Index s = 1; s < steps; ++s)
    if (r.lambda2_values(s) > r.lambda2_values(best)) best = s;
  r.best_c = r.c_values(best);
  r.best_lambda2 = r.lambda2_values(best);
  return r;
}

}  // namespace l2sos
