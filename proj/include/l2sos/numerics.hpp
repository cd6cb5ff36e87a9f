#pragma once

#include <Eigen/Dense>

#include "l2sos/error.hpp"
#include "l2sos/jacobi.hpp"

namespace l2sos {

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, matching `values`
};

/// Full symmetric eigendecomposition (cyclic Jacobi). The input is averaged
/// with its transpose first; asymmetry beyond 1e-12 relative or non-finite
/// entries throw InvalidArgument.
EigenDecomposition eigh(const Eigen::MatrixXd& a);

/// Smallest eigenvalue.
double lambda_min(const Eigen::MatrixXd& a);

/// Orthonormal basis (m x (m-1)) of the orthogonal complement of w.
Eigen::MatrixXd complement_basis(const Eigen::VectorXd& w);

/// min over v orthogonal to w of v'Av / v'v.
double lambda2_restricted(const Eigen::MatrixXd& a, const Eigen::VectorXd& w);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clamped to 0).
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& a);

struct WeylReport {
  double lhs = 0.0;  // lambda2_restricted(a + b, w)
  double rhs = 0.0;  // lambda2_restricted(a, w) + lambda_min(b)
};

WeylReport weyl_check(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::VectorXd& w);

}  // namespace l2sos
