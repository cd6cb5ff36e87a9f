#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace l2sos {

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Sweeps over all (p, q), p < q, annihilating each off-diagonal entry with a
/// plane rotation, until the off-diagonal Frobenius norm drops below
/// `tolerance * ||A||_F` or `max_sweeps` is reached. Eigenvalues come out
/// ascending; each eigenvector is signed so that its largest-magnitude entry
/// (lowest index on ties) is positive. The result depends only on the input
/// bits.
///
/// `compute(a, basis)` starts from an orthonormal basis that already nearly
/// diagonalizes `a` (typically the eigenvectors of a nearby matrix), which
/// cuts the number of sweeps inside iterative solvers.
template <typename MatrixType_>
class JacobiEigenSolver {
 public:
  using MatrixType = MatrixType_;
  using Scalar = typename MatrixType::Scalar;
  using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Index = Eigen::Index;

  JacobiEigenSolver() = default;

  template <typename Derived>
  explicit JacobiEigenSolver(const Eigen::MatrixBase<Derived>& a) {
    compute(a);
  }

  void set_tolerance(Scalar tol) { tolerance_ = tol; }
  void set_max_sweeps(int sweeps) { max_sweeps_ = sweeps; }

  template <typename Derived>
  JacobiEigenSolver& compute(const Eigen::MatrixBase<Derived>& a) {
    work_ = a;
    vectors_ = MatrixType::Identity(a.rows(), a.cols());
    return run();
  }

  template <typename Derived, typename BasisDerived>
  JacobiEigenSolver& compute(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<BasisDerived>& basis) {
    vectors_ = basis;
    work_.noalias() = vectors_.transpose() * a * vectors_;
    work_ = (work_ + work_.transpose()).eval() * Scalar(0.5);
    return run();
  }

  const RealVector& eigenvalues() const { return values_; }
  const MatrixType& eigenvectors() const { return vectors_; }
  int sweeps() const { return sweeps_; }
  bool converged() const { return converged_; }

 private:
  static Scalar off_norm2(const MatrixType& a) {
    Scalar total(0);
    for (Index j = 0; j < a.cols(); ++j)
      for (Index i = 0; i < j; ++i) total += a(i, j) * a(i, j);
    return Scalar(2) * total;
  }

  void rotate(Index p, Index q) {
    const Scalar apq = work_(p, q);
    const Scalar app = work_(p, p);
    const Scalar aqq = work_(q, q);
    const Scalar theta = (aqq - app) / (Scalar(2) * apq);
    Scalar t;
    if (std::abs(theta) > Scalar(1e150)) {
      t = Scalar(1) / (Scalar(2) * theta);
    } else {
      t = Scalar(1) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
      if (theta < Scalar(0)) t = -t;
    }
    const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
    const Scalar s = t * c;
    const Index m = work_.rows();
    // A <- A P (columns p, q), then A <- P^T A (rows p, q), V <- V P.
    for (Index r = 0; r < m; ++r) {
      const Scalar xp = work_(r, p);
      const Scalar xq = work_(r, q);
      work_(r, p) = c * xp - s * xq;
      work_(r, q) = s * xp + c * xq;
    }
    for (Index r = 0; r < m; ++r) {
      const Scalar xp = work_(p, r);
      const Scalar xq = work_(q, r);
      work_(p, r) = c * xp - s * xq;
      work_(q, r) = s * xp + c * xq;
    }
    work_(p, p) = app - t * apq;
    work_(q, q) = aqq + t * apq;
    work_(p, q) = Scalar(0);
    work_(q, p) = Scalar(0);
    for (Index r = 0; r < vectors_.rows(); ++r) {
      const Scalar vp = vectors_(r, p);
      const Scalar vq = vectors_(r, q);
      vectors_(r, p) = c * vp - s * vq;
      vectors_(r, q) = s * vp + c * vq;
    }
  }

  JacobiEigenSolver& run() {
    const Index m = work_.rows();
    const Scalar norm2 = work_.squaredNorm();
    const Scalar target2 = tolerance_ * tolerance_ * norm2;
    const Scalar skip = tolerance_ * Scalar(1e-2) * std::sqrt(norm2) / Scalar(std::max<Index>(m, 1));
    sweeps_ = 0;
    converged_ = off_norm2(work_) <= target2;
    while (!converged_ && sweeps_ < max_sweeps_) {
      for (Index p = 0; p + 1 < m; ++p)
        for (Index q = p + 1; q < m; ++q)
          if (std::abs(work_(p, q)) > skip) rotate(p, q);
      ++sweeps_;
      converged_ = off_norm2(work_) <= target2;
    }
    finish();
    return *this;
  }

  void finish() {
    const Index m = work_.rows();
    std::vector<Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return work_(a, a) < work_(b, b); });
    values_.resize(m);
    MatrixType sorted(vectors_.rows(), m);
    for (Index k = 0; k < m; ++k) {
      const Index src = order[static_cast<std::size_t>(k)];
      values_(k) = work_(src, src);
      sorted.col(k) = vectors_.col(src);
      Index lead = 0;
      for (Index r = 1; r < sorted.rows(); ++r)
        if (std::abs(sorted(r, k)) > std::abs(sorted(lead, k))) lead = r;
      if (sorted.rows() > 0 && sorted(lead, k) < Scalar(0)) sorted.col(k) = -sorted.col(k);
    }
    vectors_ = std::move(sorted);
  }

  MatrixType work_;
  MatrixType vectors_;
  RealVector values_;
  Scalar tolerance_ = Scalar(1e-12);
  int max_sweeps_ = 100;
  int sweeps_ = 0;
  bool converged_ = false;
};

}  // namespace l2sos
