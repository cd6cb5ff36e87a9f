#pragma once

#include <Eigen/Dense>

#include "l2sos/graph.hpp"

namespace l2sos {

/// Degree-driven Kneser weights for a pair-indexed weight matrix `m`
/// (zero diagonal). For each 4-set the three pairings are ranked by the
/// summed degree of their endpoints:
///   all equal            -> 0, 0, 0
///   top two equal        -> -c, -c, 2c  (2c on the smallest pairing)
///   otherwise            -> -2c on the largest pairing, c on the others
/// Degrees within `tie_tol` count as equal. Every 4-set sums to zero.
Eigen::MatrixXd kneser_heuristic_weights(const Eigen::MatrixXd& m, double c, double tie_tol = 0.0);

/// m + kneser_heuristic_weights(m, c) as a graph.
SignedGraph algorithm1(const Eigen::MatrixXd& m, double c, double tie_tol = 0.0);

struct SweepResult {
  Eigen::VectorXd c_values;
  Eigen::VectorXd lambda2_values;  // Laplacian lambda2 on the complement of the all-ones vector
  double best_c = 0.0;
  double best_lambda2 = 0.0;
};

/// Uniform grid of `steps` values over [c_min, c_max]; the first maximizer wins.
SweepResult c_sweep(const Eigen::MatrixXd& m, double c_min, double c_max, Index steps, double tie_tol = 0.0);

}  // namespace l2sos
