#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <iosfwd>
#include <vector>

#include "l2sos/error.hpp"

namespace l2sos {

using Index = Eigen::Index;

/// One symmetric entry of a constraint matrix: A(row, col) = A(col, row) = value.
struct SymmetricEntry {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

/// <A, Y> = b with A symmetric (both triangles stored).
struct SdpConstraint {
  Eigen::SparseMatrix<double> a;
  double b = 0.0;
};

/// maximize <C, Y>  subject to  <A_i, Y> = b_i,  Y PSD.
struct SdpProblem {
  Index dimension = 0;
  Eigen::MatrixXd objective;
  std::vector<SdpConstraint> constraints;

  SdpProblem() = default;
  explicit SdpProblem(Index m) : dimension(m), objective(Eigen::MatrixXd::Zero(m, m)) {}

  /// Appends <A, Y> = b where A holds each listed entry at (row, col) and
  /// (col, row). Entries listed twice accumulate.
  void add_constraint(const std::vector<SymmetricEntry>& entries, double b);
  /// Y(row, col) = b.
  void add_entry_constraint(Index row, Index col, double b);
  /// Y(r1, c1) = Y(r2, c2).
  void add_equal_entries(Index r1, Index c1, Index r2, Index c2);

  Index constraint_count() const { return static_cast<Index>(constraints.size()); }

  /// Throws InvalidArgument on asymmetric or mis-sized matrices and on
  /// exact duplicate constraints.
  void validate() const;
};

enum class SdpStatus { Optimal, MaxIterations, InfeasibleSuspected };

const char* to_string(SdpStatus status);

struct SolverConfig {
  double tolerance = 1e-7;
  int max_iterations = 100000;
  /// Initial penalty parameter of the augmented Lagrangian.
  double step = 1.0;
  /// Over-relaxation factor in (0, 2).
  double relaxation = 1.5;
  /// Rebalance the penalty when primal and dual residuals drift apart.
  bool adaptive_step = true;
  /// When set, receives `iter,primal_res,dual_res,gap` rows.
  std::ostream* trace = nullptr;
};

struct SdpSolution {
  Eigen::MatrixXd primal;  // Y, PSD
  Eigen::VectorXd duals;   // one per constraint, input order
  Eigen::MatrixXd slack;   // sum_i duals_i A_i - C
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  SdpStatus status = SdpStatus::MaxIterations;
  int iterations = 0;
  bool rank_deficient = false;
};

/// Alternating-direction augmented Lagrangian method on the dual:
/// a linear step for the multipliers through the prefactored normal
/// equations, a projection onto the PSD cone, and a primal update.
SdpSolution solve(const SdpProblem& problem, const SolverConfig& config = {});

struct KktReport {
  double primal_feasibility = 0.0;  // ||A(Y) - b|| / (1 + ||b||)
  double primal_psd = 0.0;          // max(0, -lambda_min(Y))
  double dual_psd = 0.0;            // max(0, -lambda_min(slack))
  double stationarity = 0.0;        // ||sum duals A - C - slack||_F / (1 + ||C||_F)
  double complementarity = 0.0;     // |<slack, Y>|
  double gap = 0.0;                 // |<C,Y> - b'duals| / (1 + |<C,Y>|)
  Index dimension = 0;

  /// Every residual within tol; complementarity within tol * dimension.
  bool satisfied(double tol) const;
};

KktReport verify_kkt(const SdpProblem& problem, const SdpSolution& solution, double tol);

/// `# dimension <m>` followed by one `eq <b> ; <row> <col> <coef> ...` line
/// per constraint, listing the upper-triangular entries.
void write_problem(std::ostream& out, const SdpProblem& problem);

}  // namespace l2sos
