// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "emcap/green.hpp"
#include "emcap/numerics/interval.hpp"
#include "emcap/numerics/linalg.hpp"

namespace emcap::sampled {

using numerics::HermitianMatrix;
using numerics::Interval;

enum class FieldModel {
  /// One field component per point, scalar line-to-line kernel.
  scalar_line,
  /// Three field components per point, dyadic kernel; the source line is the
  /// x axis and the destination line is x at z = d.
  dyadic_3d,
};

/// Quadrature points along the source and destination lines. Coordinates are
/// axial positions in meters; weights are element lengths.
struct SamplingLayout {
  FieldModel model = FieldModel::scalar_line;
  Interval source_region{0.0, 1.0};
  Interval dest_region{0.0, 1.0};
  std::vector<double> source_points;
  std::vector<double> source_weights;
  std::vector<double> dest_points;
  std::vector<double> dest_weights;

  /// Midpoint rule with `n_source` and `n_dest` equal elements.
  static SamplingLayout midpoint(Interval source, std::size_t n_source, Interval dest, std::size_t n_dest,
                                 FieldModel model = FieldModel::scalar_line);

  /// Field components per destination point (1 or 3).
  int components() const noexcept { return model == FieldModel::dyadic_3d ? 3 : 1; }
  Eigen::Index field_dim() const noexcept {
    return static_cast<Eigen::Index>(dest_points.size()) * components();
  }

  /// ShapeError on mismatched lengths or empty lists, DomainError on
  /// non-positive weights or points outside their regions.
  void validate() const;
};

/// Source current autocorrelation R_J(s, s') = E[J(s) J(s')^*] on a support
/// interval. The stationary form takes a lag function r with
/// R_J(s, s') = r(s' - s).
class SourceAutocorrelation {
 public:
  using LagFunction = std::function<std::complex<double>(double)>;
  using PairFunction = std::function<std::complex<double>(double, double)>;

  static SourceAutocorrelation stationary(LagFunction r, Interval support);
  static SourceAutocorrelation general(PairFunction r, Interval support);
  /// R_J = 0 on `support`.
  static SourceAutocorrelation zero(Interval support);

  std::complex<double> operator()(double s, double s2) const;
  const Interval& support() const noexcept { return support_; }
  bool is_stationary() const noexcept { return static_cast<bool>(lag_); }

  /// Spot check of R(s, s) >= 0 real and R(s', s) = conj(R(s, s')) on
  /// `pairs` random points of the support; DomainError on failure.
  void check_hermitian(std::uint64_t seed = 0, int pairs = 32) const;

 private:
  SourceAutocorrelation(LagFunction lag, PairFunction pair, Interval support)
      : lag_(std::move(lag)), pair_(std::move(pair)), support_(support) {}
  LagFunction lag_;
  PairFunction pair_;
  Interval support_;
};

/// Source covariance R_J(s_a, s_b) at the layout's source points.
HermitianMatrix source_covariance(const SamplingLayout& layout, const SourceAutocorrelation& r_j);

/// Transfer matrix T with T(i, a) = w_a g(r_i - s_a), destination rows by
/// source columns (3x3 blocks in the dyadic model).
Eigen::MatrixXcd transfer_matrix(const PhysicalScene& scene, const SamplingLayout& layout);

/// Received-field covariance K_E = T R T^H. Small negative eigenvalues from
/// rounding are clipped at -1e-12 of the largest; anything below that means
/// the source autocorrelation is not PSD and raises DomainError. In the
/// dyadic model every current component carries R_J independently.
HermitianMatrix receive_covariance(const PhysicalScene& scene, const SamplingLayout& layout,
                                   const SourceAutocorrelation& r_j);

struct ResolutionCheck {
  double relative_change = 0.0;  ///< ||K_E(2 n_s) - K_E(n_s)||_F / ||K_E(n_s)||_F
  bool resolved = true;          ///< relative_change <= 1%
};

/// Compares K_E against a layout with twice the source points.
ResolutionCheck check_source_resolution(const PhysicalScene& scene, const SamplingLayout& layout,
                                        const SourceAutocorrelation& r_j);

/// Sampled white noise of covariance sigma2 delta(r - r'): diag(sigma2 / w_i).
HermitianMatrix white_noise_covariance(const SamplingLayout& layout, double sigma2);

/// log det(K_E + K_N) - log det(K_N), nats, through a Cholesky whitening of
/// K_N. ConditioningError when cond(K_N) > 1e12.
double mutual_information(const HermitianMatrix& k_e, const HermitianMatrix& k_n);

struct SweepPoint {
  std::size_t n = 0;  ///< destination samples
  double mi_nats = 0.0;
  double mi_per_meter = 0.0;
  ResolutionCheck source_resolution;
};

/// MI per meter of a destination of `region_length` centered on the source
/// support, for each density (samples per meter). The source grid uses the
/// same density, at least 16 points, doubled until the 1% resolution
/// criterion holds (at most 4 doublings).
std::vector<SweepPoint> normalized_capacity_sweep(const PhysicalScene& scene, double region_length,
                                                  const std::vector<double>& densities,
                                                  const SourceAutocorrelation& r_j, double sigma2,
                                                  FieldModel model = FieldModel::scalar_line);

}  // namespace emcap::sampled
