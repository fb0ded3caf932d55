// SPDX-License-Identifier: Apache-2.0
#include "emcap/numerics/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <type_traits>

namespace emcap::numerics {
namespace {

template <typename Scalar>
double conj_if_complex_abs(const Scalar& a, const Scalar& b) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return std::abs(a - b);
  } else {
    return std::abs(a - std::conj(b));
  }
}

// Phase v so that its first largest-magnitude component is real positive.
template <typename Vector>
void canonical_phase(Vector& v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-9)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  v *= std::abs(v(best)) / v(best);
}

}  // namespace

template <typename Scalar>
SelfAdjointMatrix<Scalar>::SelfAdjointMatrix(Dense m, double tol) {
  if (m.rows() != m.cols()) throw ShapeError("self-adjoint matrix must be square");
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) throw DomainError("matrix has non-finite entries");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (conj_if_complex_abs(m(i, j), m(j, i)) > tol * std::max(scale, 1e-300)) {
        throw DomainError("matrix is not self-adjoint within tolerance");
      }
    }
  }
  m_ = 0.5 * (m + m.adjoint());
}

template <typename Scalar>
SelfAdjointMatrix<Scalar> SelfAdjointMatrix<Scalar>::zero(Eigen::Index dim) {
  return SelfAdjointMatrix(Dense::Zero(dim, dim), Trusted{});
}

template <typename Scalar>
SelfAdjointMatrix<Scalar> SelfAdjointMatrix<Scalar>::identity(Eigen::Index dim) {
  return SelfAdjointMatrix(Dense::Identity(dim, dim), Trusted{});
}

template <typename Scalar>
SelfAdjointMatrix<Scalar> SelfAdjointMatrix<Scalar>::diagonal(const std::vector<double>& values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Dense m = Dense::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return SelfAdjointMatrix(std::move(m), Trusted{});
}

template <typename Scalar>
SelfAdjointMatrix<Scalar> SelfAdjointMatrix<Scalar>::operator+(const SelfAdjointMatrix& other) const {
  if (dim() != other.dim()) throw ShapeError("matrix dimensions differ");
  return SelfAdjointMatrix(m_ + other.m_, Trusted{});
}

template <typename Scalar>
SelfAdjointMatrix<Scalar> SelfAdjointMatrix<Scalar>::scaled(double factor) const {
  return SelfAdjointMatrix(m_ * factor, Trusted{});
}

template <typename Scalar>
SelfAdjointMatrix<Scalar> SelfAdjointMatrix<Scalar>::congruence(const Dense& q) const {
  if (q.cols() != dim()) throw ShapeError("congruence: column count must match dimension");
  Dense out = q * m_ * q.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return SelfAdjointMatrix(std::move(out), Trusted{});
}

template <typename Scalar>
EigenDecomposition<Scalar> eigh(const SelfAdjointMatrix<Scalar>& m) {
  using Dense = typename SelfAdjointMatrix<Scalar>::Dense;
  const Eigen::Index n = m.dim();
  EigenDecomposition<Scalar> out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Dense> solver(m.dense());
  if (solver.info() != Eigen::Success) throw AccuracyError("eigh: eigensolver did not converge", 0.0, 0.0);

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }

  const double scale = std::max(out.values.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double cluster_tol = 1e-12 * scale;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && out.values(stop - 1) - out.values(stop) <= cluster_tol) ++stop;
    const Eigen::Index size = stop - start;
    if (size == 1) {
      auto col = out.vectors.col(start);
      canonical_phase(col);
    } else {
      const Dense basis = out.vectors.middleCols(start, size);
      Dense canonical(n, size);
      Eigen::Index found = 0;
      for (Eigen::Index e = 0; e < n && found < size; ++e) {
        // Projection of e_e onto the cluster's eigenspace.
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = basis * basis.row(e).adjoint();
        for (Eigen::Index p = 0; p < found; ++p) {
          v -= canonical.col(p) * canonical.col(p).dot(v);
        }
        const double norm = v.norm();
        if (norm > 1e-6) canonical.col(found++) = v / norm;
      }
      out.vectors.middleCols(start, size) = canonical;
      const double mean = out.values.segment(start, size).mean();
      out.values.segment(start, size).setConstant(mean);
    }
    start = stop;
  }
  return out;
}

template <typename Scalar>
Eigen::VectorXd eigvalsh(const SelfAdjointMatrix<Scalar>& m) {
  if (m.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<typename SelfAdjointMatrix<Scalar>::Dense> solver(m.dense(),
                                                                                  Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw AccuracyError("eigvalsh: eigensolver did not converge", 0.0, 0.0);
  return solver.eigenvalues().reverse();
}

template <typename Scalar>
double log_det_pd(const SelfAdjointMatrix<Scalar>& m) {
  Eigen::LLT<typename SelfAdjointMatrix<Scalar>::Dense> llt(m.dense());
  if (llt.info() != Eigen::Success) throw DomainError("log_det_pd: matrix is not positive definite");
  double sum = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < m.dim(); ++i) sum += std::log(std::real(l(i, i)));
  return 2.0 * sum;
}

template <typename Scalar>
double condition_number(const SelfAdjointMatrix<Scalar>& m) {
  Eigen::SelfAdjointEigenSolver<typename SelfAdjointMatrix<Scalar>::Dense> solver(m.dense(),
                                                                                  Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues()(0);
  const double hi = solver.eigenvalues()(m.dim() - 1);
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

template class SelfAdjointMatrix<double>;
template class SelfAdjointMatrix<std::complex<double>>;
template EigenDecomposition<double> eigh(const SelfAdjointMatrix<double>&);
template EigenDecomposition<std::complex<double>> eigh(const SelfAdjointMatrix<std::complex<double>>&);
template Eigen::VectorXd eigvalsh(const SelfAdjointMatrix<double>&);
template Eigen::VectorXd eigvalsh(const SelfAdjointMatrix<std::complex<double>>&);
template double log_det_pd(const SelfAdjointMatrix<double>&);
template double log_det_pd(const SelfAdjointMatrix<std::complex<double>>&);
template double condition_number(const SelfAdjointMatrix<double>&);
template double condition_number(const SelfAdjointMatrix<std::complex<double>>&);

}  // namespace emcap::numerics
