// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "emcap/errors.hpp"

namespace emcap::numerics {

/// Dense self-adjoint matrix (Hermitian for complex scalars, symmetric for
/// real ones). Construction checks self-adjointness against a tolerance
/// relative to the largest entry and then symmetrizes exactly.
template <typename Scalar>
class SelfAdjointMatrix {
 public:
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  SelfAdjointMatrix() = default;
  explicit SelfAdjointMatrix(Dense m, double tol = 1e-10);

  static SelfAdjointMatrix zero(Eigen::Index dim);
  static SelfAdjointMatrix identity(Eigen::Index dim);
  static SelfAdjointMatrix diagonal(const std::vector<double>& values);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Dense& dense() const noexcept { return m_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  SelfAdjointMatrix operator+(const SelfAdjointMatrix& other) const;
  SelfAdjointMatrix scaled(double factor) const;
  /// Q·this·Q^H for an arbitrary (not necessarily square) Q.
  SelfAdjointMatrix congruence(const Dense& q) const;

 private:
  struct Trusted {};
  SelfAdjointMatrix(Dense m, Trusted) : m_(std::move(m)) {}
  Dense m_;
};

using HermitianMatrix = SelfAdjointMatrix<std::complex<double>>;
using SymmetricMatrix = SelfAdjointMatrix<double>;

template <typename Scalar>
struct EigenDecomposition {
  /// Sorted descending.
  Eigen::VectorXd values;
  /// Column k is the eigenvector for values[k].
  typename SelfAdjointMatrix<Scalar>::Dense vectors;
};

/// Eigen-decomposition m = Q·diag(values)·Q^H with descending eigenvalues.
///
/// Eigenvectors are put in a canonical form so output is reproducible:
/// inside a cluster of numerically equal eigenvalues the basis is obtained by
/// orthonormalizing the projections of e_0, e_1, ... in index order, and every
/// vector is phased so its first largest-magnitude component is real positive.
template <typename Scalar>
EigenDecomposition<Scalar> eigh(const SelfAdjointMatrix<Scalar>& m);

/// Eigenvalues only, sorted descending.
template <typename Scalar>
Eigen::VectorXd eigvalsh(const SelfAdjointMatrix<Scalar>& m);

/// log det of a positive-definite matrix via Cholesky; DomainError if the
/// factorization fails.
template <typename Scalar>
double log_det_pd(const SelfAdjointMatrix<Scalar>& m);

/// Ratio of the extreme eigenvalues; +inf when the smallest is <= 0.
template <typename Scalar>
double condition_number(const SelfAdjointMatrix<Scalar>& m);

extern template class SelfAdjointMatrix<double>;
extern template class SelfAdjointMatrix<std::complex<double>>;

}  // namespace emcap::numerics
