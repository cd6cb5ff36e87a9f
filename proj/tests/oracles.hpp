#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the code under test beyond the plain data types.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "l2sos/graph.hpp"
#include "l2sos/model.hpp"

namespace oracle {

using l2sos::Index;

// Eigen's own solver as the spectral reference.
inline Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

// min over v orthogonal to w, by projecting with I - ww'/w'w and shifting the
// w direction far up.
inline double restricted_min(const Eigen::MatrixXd& a, const Eigen::VectorXd& w) {
  const Eigen::VectorXd u = w.normalized();
  const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(a.rows(), a.rows()) - u * u.transpose();
  const double shift = 10.0 * (1.0 + a.cwiseAbs().sum());
  return eigenvalues(p * a * p + shift * u * u.transpose())(0);
}

inline double cut_weight(const Eigen::MatrixXd& w, std::uint32_t mask) {
  double s = 0.0;
  for (Index i = 0; i < w.rows(); ++i)
    for (Index j = i + 1; j < w.rows(); ++j)
      if (((mask >> i) & 1u) != ((mask >> j) & 1u)) s += w(i, j);
  return s;
}

inline double cheeger(const Eigen::MatrixXd& w) {
  const Index n = w.rows();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << n) - 1; ++mask) {
    const int size = __builtin_popcount(mask);
    if (2 * size > n) continue;
    best = std::min(best, cut_weight(w, mask) / size);
  }
  return best;
}

inline double mincut(const Eigen::MatrixXd& w) {
  const Index n = w.rows();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << n) - 1; ++mask) best = std::min(best, cut_weight(w, mask));
  return best;
}

// max over all 2^n labelings of y'Xy (no sign fixing).
inline double map_value(const Eigen::MatrixXd& x) {
  const Index n = x.rows();
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Eigen::VectorXd y(n);
    for (Index i = 0; i < n; ++i) y(i) = (mask >> i) & 1u ? -1.0 : 1.0;
    best = std::max(best, y.dot(x * y));
  }
  return best;
}

// Random connected unweighted graph: a random spanning tree plus extra edges.
inline l2sos::SignedGraph random_connected(Index n, double extra, std::mt19937_64& rng) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Index v = 1; v < n; ++v) {
    const Index parent = std::uniform_int_distribution<Index>(0, v - 1)(rng);
    w(v, parent) = w(parent, v) = 1.0;
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (w(i, j) == 0.0 && u(rng) < extra) w(i, j) = w(j, i) = 1.0;
  return l2sos::SignedGraph(w);
}

inline Eigen::VectorXd random_truth(Index n, std::mt19937_64& rng) {
  Eigen::VectorXd y(n);
  for (Index i = 0; i < n; ++i) y(i) = rng() & 1u ? -1.0 : 1.0;
  return y;
}

// K5 without edges 1-4 and 2-3, edge 1-2 corrupted, all-ones labels.
inline l2sos::Instance worked_example() {
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(5, 5) - Eigen::MatrixXd::Identity(5, 5);
  w(1, 4) = w(4, 1) = 0.0;
  w(2, 3) = w(3, 2) = 0.0;
  Eigen::MatrixXd x = w;
  x(1, 2) = x(2, 1) = -1.0;
  return l2sos::make_instance(l2sos::SignedGraph(w), Eigen::VectorXd::Ones(5), 0.125, x);
}

}  // namespace oracle
