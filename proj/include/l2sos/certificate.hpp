#pragma once

#include <Eigen/Dense>

#include "l2sos/graph.hpp"
#include "l2sos/model.hpp"
#include "l2sos/sdp.hpp"

namespace l2sos {

/// Dual certificate of the reduced degree-4 program.
///
/// lambda_matrix is on the scale of the reduced program (objective
/// X^(2)/(n-2)); `connectivity()` rescales lambda2_restricted by n-2 to the
/// scale of the unnormalized level-2 Laplacian, where the numbers quoted for
/// worked examples live.
struct Certificate {
  Eigen::MatrixXd lambda_matrix;
  Eigen::VectorXd v_diag;
  SignedGraph w_johnson;
  SignedGraph w_kneser;
  double lambda1 = 0.0;
  double lambda2_restricted = 0.0;  // w.r.t. the truth's level-2 vector
  bool psd = false;
  Index n = 0;

  double connectivity() const { return static_cast<double>(n - 2) * lambda2_restricted; }
};

/// Certificate from a solved reduced program (with or without class
/// constraints): Lambda is the solver slack; Johnson and Kneser weights are
/// read off its off-diagonal. Throws InvalidArgument when the solution is
/// not Optimal or does not belong to either program, and NumericalError when
/// the slack cannot be reconstructed from the duals within 1e-6.
Certificate extract_certificate(const SdpSolution& sol, const Instance& inst);

/// The closed-form certificate for given Johnson/Kneser weight matrices:
/// M = X^(2)/(n-2) + WJ + WK and Lambda = D - M with D_CC = sum_D y2_C M_CD y2_D,
/// so that Lambda y2 = 0 by construction.
Certificate certificate_from_weights(const Instance& inst, const Eigen::MatrixXd& w_johnson,
                                     const Eigen::MatrixXd& w_kneser);

/// The mu = 0 certificate (no Johnson or Kneser weights).
Certificate zero_weight_certificate(const Instance& inst);

struct ZeroSumReport {
  double johnson_max = 0.0;  // max |sum of W^J over a symmetric-difference class|
  double kneser_max = 0.0;   // max |sum of W^K over a 4-set|
  bool ok = false;
};

ZeroSumReport check_zero_sums(const Certificate& c, double tol);

/// ((1-2p)/(n-2)) * U * L(G^(2)) * U with U = diag(level-2 truth).
Eigen::MatrixXd expected_certificate(const Instance& inst);

/// U m U with U = diag(level2_vector(truth)).
Eigen::MatrixXd conjugate_by_truth(const Eigen::MatrixXd& m, const Eigen::VectorXd& truth);

/// Truth-conjugated X^(2)/(n-2) + W^J + W^K. Its Laplacian's lambda2 on the
/// complement of the all-ones vector must equal the certificate's
/// lambda2_restricted within 1e-6, else NumericalError.
SignedGraph combined_graph(const Instance& inst, const Certificate& c);

struct SignedBoundReport {
  double lambda2 = 0.0;     // of L restricted to the complement of the all-ones vector
  double cheeger_pos = 0.0;
  double degmax_pos = 0.0;
  double mincut_neg = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  bool degenerate_positive_part = false;  // H+ edgeless, phi taken as 0
};

/// lambda2(L) >= phi(H+)^2 / (2 degmax(H+)) + 2 mincut(H-), via the exhaustive oracles.
SignedBoundReport signed_cheeger_bound(const SignedGraph& g, Index limit = kDefaultExhaustiveLimit);

struct WeylDecompositionReport {
  double lambda2 = 0.0;           // lambda2_restricted(Lambda)
  double lambda2_expected = 0.0;  // lambda2_restricted(E[Lambda])
  double deviation_lambda1 = 0.0; // lambda1(Lambda - E[Lambda])
  bool holds = false;             // lambda2 >= lambda2_expected + deviation_lambda1 - 1e-8
};

WeylDecompositionReport weyl_decomposition_report(const Instance& inst, const Certificate& c);

}  // namespace l2sos
