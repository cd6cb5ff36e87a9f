#include "l2sos/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <tuple>

#include "l2sos/jacobi.hpp"
#include "l2sos/numerics.hpp"

namespace l2sos {

void SdpProblem::add_constraint(const std::vector<SymmetricEntry>& entries, double b) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size() * 2);
  for (const SymmetricEntry& e : entries) {
    if (e.row < 0 || e.col < 0 || e.row >= dimension || e.col >= dimension)
      throw InvalidArgument("SdpProblem: constraint entry out of range");
    triplets.emplace_back(e.row, e.col, e.value);
    if (e.row != e.col) triplets.emplace_back(e.col, e.row, e.value);
  }
  SdpConstraint c;
  c.a.resize(dimension, dimension);
  c.a.setFromTriplets(triplets.begin(), triplets.end());
  c.a.prune(0.0);
  c.b = b;
  constraints.push_back(std::move(c));
}

void SdpProblem::add_entry_constraint(Index row, Index col, double b) {
  // <A, Y> = 2 * a * Y(row, col) for an off-diagonal entry stored twice.
  add_constraint({{row, col, row == col ? 1.0 : 0.5}}, b);
}

void SdpProblem::add_equal_entries(Index r1, Index c1, Index r2, Index c2) {
  const double w1 = r1 == c1 ? 1.0 : 0.5;
  const double w2 = r2 == c2 ? 1.0 : 0.5;
  add_constraint({{r1, c1, w1}, {r2, c2, -w2}}, 0.0);
}

void SdpProblem::validate() const {
  if (objective.rows() != dimension || objective.cols() != dimension)
    throw InvalidArgument("SdpProblem: objective has wrong shape");
  if (!objective.allFinite()) throw InvalidArgument("SdpProblem: objective has non-finite entries");
  if ((objective - objective.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw InvalidArgument("SdpProblem: objective is not symmetric");
  using Key = std::vector<std::tuple<Index, Index, double>>;
  std::map<std::pair<Key, double>, Index> seen;
  for (Index i = 0; i < constraint_count(); ++i) {
    const SdpConstraint& c = constraints[static_cast<std::size_t>(i)];
    if (c.a.rows() != dimension || c.a.cols() != dimension)
      throw InvalidArgument("SdpProblem: constraint " + std::to_string(i) + " has wrong shape");
    Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(c.a.transpose()) - c.a;
    diff.prune(0.0);
    if (diff.nonZeros() != 0) throw InvalidArgument("SdpProblem: constraint " + std::to_string(i) + " is not symmetric");
    Key key;
    for (Index col = 0; col < c.a.outerSize(); ++col)
      for (Eigen::SparseMatrix<double>::InnerIterator it(c.a, col); it; ++it)
        key.emplace_back(it.row(), it.col(), it.value());
    auto [pos, inserted] = seen.emplace(std::make_pair(std::move(key), c.b), i);
    if (!inserted)
      throw InvalidArgument("SdpProblem: constraint " + std::to_string(i) + " duplicates constraint " +
                            std::to_string(pos->second));
  }
}

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::Optimal:
      return "Optimal";
    case SdpStatus::MaxIterations:
      return "MaxIterations";
    case SdpStatus::InfeasibleSuspected:
      return "InfeasibleSuspected";
  }
  return "?";
}

namespace {

using RowMajorSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// The constraint map A: Sym(m) -> R^k as a k x m^2 matrix acting on vec(X).
class ConstraintOperator {
 public:
  explicit ConstraintOperator(const SdpProblem& p) : m_(p.dimension), op_(p.constraint_count(), m_ * m_) {
    std::vector<Eigen::Triplet<double>> triplets;
    for (Index i = 0; i < p.constraint_count(); ++i) {
      const auto& a = p.constraints[static_cast<std::size_t>(i)].a;
      for (Index col = 0; col < a.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(a, col); it; ++it)
          triplets.emplace_back(i, it.row() + it.col() * m_, it.value());
    }
    op_.setFromTriplets(triplets.begin(), triplets.end());
    adjoint_ = op_.transpose();
  }

  Eigen::VectorXd apply(const Eigen::MatrixXd& x) const {
    return op_ * Eigen::Map<const Eigen::VectorXd>(x.data(), m_ * m_);
  }

  Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const {
    Eigen::MatrixXd out(m_, m_);
    Eigen::Map<Eigen::VectorXd>(out.data(), m_ * m_) = adjoint_ * y;
    return out;
  }

  Eigen::SparseMatrix<double> gram() const { return Eigen::SparseMatrix<double>(op_ * adjoint_); }

 private:
  Index m_;
  RowMajorSparse op_;
  Eigen::SparseMatrix<double> adjoint_;
};

// Factorization of A A^T, regularized when the constraints are rank deficient.
class NormalEquations {
 public:
  explicit NormalEquations(const Eigen::SparseMatrix<double>& gram) {
    const Index k = gram.rows();
    if (k == 0) return;
    ldlt_.compute(gram);
    bool ok = ldlt_.info() == Eigen::Success;
    if (ok) {
      const Eigen::VectorXd d = ldlt_.vectorD();
      const double dmax = d.cwiseAbs().maxCoeff();
      ok = d.minCoeff() > kRankTolerance * dmax;
    }
    if (!ok) {
      rank_deficient_ = true;
      Eigen::SparseMatrix<double> eye(k, k);
      eye.setIdentity();
      ldlt_.compute(gram + kRegularizer * eye);
      if (ldlt_.info() != Eigen::Success) throw NumericalError("solve: normal equations could not be factored");
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    if (rhs.size() == 0) return rhs;
    return ldlt_.solve(rhs);
  }

  bool rank_deficient() const { return rank_deficient_; }

 private:
  static constexpr double kRankTolerance = 1e-12;
  static constexpr double kRegularizer = 1e-10;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  bool rank_deficient_ = false;
};

double frobenius_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a.cwiseProduct(b).sum(); }

struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double worst() const { return std::max({primal, dual, gap}); }
};

// Penalty rebalancing: every kAdaptEvery iterations, when one residual
// exceeds the other by kImbalance, scale the penalty by kStepFactor.
constexpr int kAdaptEvery = 10;
constexpr double kImbalance = 5.0;
constexpr double kStepFactor = 1.6;
constexpr double kStepMin = 1e-6;
constexpr double kStepMax = 1e6;
constexpr double kDivergence = 1e12;

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverConfig& config) {
  problem.validate();
  if (!(config.relaxation > 0.0 && config.relaxation < 2.0))
    throw InvalidArgument("solve: relaxation factor must lie in (0, 2)");
  if (!(config.step > 0.0)) throw InvalidArgument("solve: step must be positive");
  if (!(config.tolerance > 0.0)) throw InvalidArgument("solve: tolerance must be positive");

  const Index m = problem.dimension;
  const Index k = problem.constraint_count();
  const ConstraintOperator op(problem);
  const NormalEquations normal(op.gram());

  Eigen::VectorXd b(k);
  for (Index i = 0; i < k; ++i) b(i) = problem.constraints[static_cast<std::size_t>(i)].b;

  // Internally: minimize <c, X> with c = -C; dual feasibility A*(y) + S = c.
  const Eigen::MatrixXd c = -problem.objective;
  const Eigen::VectorXd a_c = op.apply(c);
  const double b_scale = 1.0 + b.norm();
  const double c_scale = 1.0 + problem.objective.norm();
  const double alpha = config.relaxation;

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(m, m);
  double mu = config.step;

  JacobiEigenSolver<Eigen::MatrixXd> eig;

  SdpSolution best;
  double best_worst = std::numeric_limits<double>::infinity();
  Residuals res;
  Eigen::MatrixXd a_star_y;

  if (config.trace) *config.trace << "iter,primal_res,dual_res,gap\n";

  SdpStatus status = SdpStatus::MaxIterations;
  int iter = 0;
  double primal_sum = 0.0;
  double dual_sum = 0.0;
  while (iter < config.max_iterations) {
    ++iter;
    y = normal.solve(mu * (b - op.apply(x)) + a_c - op.apply(s));
    a_star_y = op.adjoint(y);
    Eigen::MatrixXd v = c - (alpha * a_star_y + (1.0 - alpha) * (c - s)) - mu * x;
    v = 0.5 * (v + v.transpose()).eval();

    eig.compute(v, basis);
    basis = eig.eigenvectors();
    const Eigen::VectorXd& lam = eig.eigenvalues();
    Index negative = 0;
    while (negative < m && lam(negative) < 0.0) ++negative;
    if (negative > 0) {
      const auto vn = basis.leftCols(negative);
      const Eigen::VectorXd scale = (-lam.head(negative) / mu).cwiseSqrt();
      const Eigen::MatrixXd factor = vn * scale.asDiagonal();
      x.noalias() = factor * factor.transpose();
    } else {
      x.setZero();
    }
    s = v + mu * x;

    if (!x.allFinite() || !y.allFinite()) throw NumericalError("solve: iteration produced non-finite values");

    const double pobj = frobenius_dot(problem.objective, x);
    const double dobj = -b.dot(y);
    res.primal = (op.apply(x) - b).norm() / b_scale;
    res.dual = (a_star_y + s - c).norm() / c_scale;
    res.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));

    if (config.trace) {
      char line[128];
      std::snprintf(line, sizeof line, "%d,%.12g,%.12g,%.12g\n", iter, res.primal, res.dual, res.gap);
      *config.trace << line;
    }

    if (res.worst() < best_worst) {
      best_worst = res.worst();
      best.primal = x;
      best.duals = -y;
      best.primal_residual = res.primal;
      best.dual_residual = res.dual;
      best.gap = res.gap;
      best.iterations = iter;
    }
    if (res.worst() <= config.tolerance) {
      status = SdpStatus::Optimal;
      break;
    }
    if (x.norm() > kDivergence || y.norm() > kDivergence) {
      status = SdpStatus::InfeasibleSuspected;
      break;
    }

    if (config.adaptive_step) {
      primal_sum += std::log(std::max(res.primal, 1e-300));
      dual_sum += std::log(std::max(res.dual, 1e-300));
      if (iter % kAdaptEvery == 0) {
        const double ratio = std::exp((primal_sum - dual_sum) / kAdaptEvery);
        if (ratio > kImbalance) {
          mu = std::min(mu * kStepFactor, kStepMax);
        } else if (ratio < 1.0 / kImbalance) {
          mu = std::max(mu / kStepFactor, kStepMin);
        }
        primal_sum = 0.0;
        dual_sum = 0.0;
      }
    }
  }

  SdpSolution out;
  if (status == SdpStatus::Optimal) {
    out.primal = x;
    out.duals = -y;
    out.primal_residual = res.primal;
    out.dual_residual = res.dual;
    out.gap = res.gap;
    out.iterations = iter;
  } else {
    out = std::move(best);
    if (out.primal.size() == 0) {
      out.primal = x;
      out.duals = -y;
    }
    out.iterations = iter;
  }
  out.status = status;
  out.rank_deficient = normal.rank_deficient();
  out.primal = 0.5 * (out.primal + out.primal.transpose()).eval();
  out.slack = op.adjoint(out.duals) - problem.objective;
  out.primal_objective = frobenius_dot(problem.objective, out.primal);
  out.dual_objective = b.dot(out.duals);
  return out;
}

bool KktReport::satisfied(double tol) const {
  return primal_feasibility <= tol && primal_psd <= tol && dual_psd <= tol && stationarity <= tol && gap <= tol &&
         complementarity <= tol * static_cast<double>(std::max<Index>(dimension, 1));
}

KktReport verify_kkt(const SdpProblem& problem, const SdpSolution& solution, double /*tol*/) {
  const Index m = problem.dimension;
  if (solution.primal.rows() != m || solution.slack.rows() != m ||
      solution.duals.size() != problem.constraint_count())
    throw InvalidArgument("verify_kkt: solution does not match problem");
  const ConstraintOperator op(problem);
  Eigen::VectorXd b(problem.constraint_count());
  for (Index i = 0; i < b.size(); ++i) b(i) = problem.constraints[static_cast<std::size_t>(i)].b;

  KktReport r;
  r.dimension = m;
  r.primal_feasibility = (op.apply(solution.primal) - b).norm() / (1.0 + b.norm());
  if (m > 0) {
    r.primal_psd = std::max(0.0, -lambda_min(solution.primal));
    r.dual_psd = std::max(0.0, -lambda_min(solution.slack));
  }
  r.stationarity = (op.adjoint(solution.duals) - problem.objective - solution.slack).norm() /
                   (1.0 + problem.objective.norm());
  r.complementarity = std::abs(frobenius_dot(solution.slack, solution.primal));
  const double pobj = frobenius_dot(problem.objective, solution.primal);
  r.gap = std::abs(pobj - b.dot(solution.duals)) / (1.0 + std::abs(pobj));
  return r;
}

void write_problem(std::ostream& out, const SdpProblem& problem) {
  out << "# dimension " << problem.dimension << '\n';
  char buf[64];
  for (const SdpConstraint& c : problem.constraints) {
    std::snprintf(buf, sizeof buf, "%.17g", c.b);
    out << "eq " << buf << " ;";
    // Upper triangle only, in column order.
    for (Index col = 0; col < c.a.outerSize(); ++col)
      for (Eigen::SparseMatrix<double>::InnerIterator it(c.a, col); it; ++it) {
        if (it.row() > it.col()) continue;
        std::snprintf(buf, sizeof buf, "%.17g", it.value());
        out << ' ' << it.row() << ' ' << it.col() << ' ' << buf;
      }
    out << '\n';
  }
}

}  // namespace l2sos
