#include "l2sos/numerics.hpp"

#include <cmath>

namespace l2sos {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& a, const char* who) {
  if (a.rows() != a.cols()) throw InvalidArgument(std::string(who) + ": matrix must be square");
  if (!a.allFinite()) throw InvalidArgument(std::string(who) + ": non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidArgument(std::string(who) + ": matrix is not symmetric");
  return 0.5 * (a + a.transpose());
}

}  // namespace

EigenDecomposition eigh(const Eigen::MatrixXd& a) {
  JacobiEigenSolver<Eigen::MatrixXd> solver(symmetrized(a, "eigh"));
  if (!solver.converged()) throw NumericalError("eigh: Jacobi sweeps did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double lambda_min(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) throw InvalidArgument("lambda_min: empty matrix");
  return eigh(a).values(0);
}

Eigen::MatrixXd complement_basis(const Eigen::VectorXd& w) {
  const Eigen::Index m = w.size();
  const double norm = w.norm();
  if (m == 0 || norm == 0.0 || !std::isfinite(norm)) throw InvalidArgument("complement_basis: zero vector");
  // Householder reflection H with H w parallel to e_1; columns 2..m of H
  // span the complement of w.
  Eigen::VectorXd u = w / norm;
  u(0) += (u(0) >= 0.0 ? 1.0 : -1.0);
  const double unorm2 = u.squaredNorm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) - (2.0 / unorm2) * u * u.transpose();
  return h.rightCols(m - 1);
}

double lambda2_restricted(const Eigen::MatrixXd& a, const Eigen::VectorXd& w) {
  if (a.rows() != w.size()) throw InvalidArgument("lambda2_restricted: size mismatch");
  if (w.size() < 2) throw InvalidArgument("lambda2_restricted: need dimension >= 2");
  const Eigen::MatrixXd q = complement_basis(w);
  Eigen::MatrixXd reduced = q.transpose() * symmetrized(a, "lambda2_restricted") * q;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  return lambda_min(reduced);
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& a) {
  const EigenDecomposition d = eigh(a);
  const Eigen::VectorXd clamped = d.values.cwiseMax(0.0);
  Eigen::MatrixXd out = d.vectors * clamped.asDiagonal() * d.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

WeylReport weyl_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::VectorXd& w) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("weyl_check: size mismatch");
  return {lambda2_restricted(a + b, w), lambda2_restricted(a, w) + lambda_min(b)};
}

}  // namespace l2sos
