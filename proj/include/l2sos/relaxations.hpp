#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

#include "l2sos/level2.hpp"
#include "l2sos/model.hpp"
#include "l2sos/sdp.hpp"

namespace l2sos {

/// Equality structure of the reduced degree-4 program on C(n,2) pair-vertices.
struct SosConstraintSet {
  Index n = 0;
  std::vector<Index> diagonal;                            // every pair index
  std::vector<std::vector<PairEdge>> johnson_classes;     // one per {i,j}, n-2 members each
  std::vector<std::array<PairEdge, 3>> kneser_classes;    // one per 4-set

  /// Chained equalities: n-3 per Johnson class, 2 per Kneser class.
  Index johnson_constraint_count() const;
  Index kneser_constraint_count() const;
};

SosConstraintSet sos_constraint_set(Index n);

/// maximize <X, Y> s.t. Y_ii = 1.
SdpProblem build_sdp(const Instance& inst);

inline constexpr Index kFullSosLimit = 8;

/// Degree-4 program over the n^2 x n^2 matrix indexed by ordered pairs
/// (i, j) -> i*n + j. Entries whose index multisets reduce (mod 2) to the
/// same set are tied together; the empty set is pinned to 1.
SdpProblem build_sos4_full(const Instance& inst);

/// Degree-4 program on the C(n,2) pair matrix with objective X^(2)/(n-2).
/// Without class constraints only the unit diagonal is imposed.
SdpProblem build_sos4_reduced(const Instance& inst, bool include_class_constraints = true);

enum class RelaxationLevel { Sdp, Sos4 };

struct RecoveryReport {
  double distance = 0.0;  // ||Y - target||_F
  bool exact = false;     // distance <= tol * m
  std::optional<Eigen::VectorXd> rounded;  // top-eigenvector labels, when consistent
  bool rounding_recovers = false;
};

/// Compares the primal with the rank-1 target (yy' or y2 y2') and rounds the
/// top eigenvector. Throws InvalidArgument unless the solution is Optimal.
RecoveryReport check_recovery(const SdpSolution& sol, const Instance& inst, RelaxationLevel level, double tol);

}  // namespace l2sos
