// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "emcap/sampled.hpp"

namespace emcap::bounds {

using numerics::HermitianMatrix;
using numerics::Interval;
using sampled::SourceAutocorrelation;

/// Stationary process obtained by repeating a length-L source with
/// independent periods and averaging over a uniform random shift.
struct StationarizedSource {
  double period = 0.0;
  /// R''(lag) = E[J''(s) J''(s + lag)^*]; zero for |lag| >= period.
  std::function<std::complex<double>(double)> autocorrelation;

  std::complex<double> operator()(double lag) const;
  /// The stationary autocorrelation restricted to `support`.
  SourceAutocorrelation as_autocorrelation(Interval support) const;
};

/// R''(lag) = (1/L) int R_J(s, s + lag) ds over the overlap of the support
/// with its shift by -lag. Each evaluation runs an adaptive quadrature.
/// DomainError when a 64-point Nystrom check finds R_J not PSD.
StationarizedSource stationarize(const SourceAutocorrelation& r_j);

/// MI between the source support (n midpoint samples) and the destination
/// `dest`, sampled with the same spacing, in white noise sigma2.
/// ShapeError when dest.width() is not a whole number of source spacings.
double mi_line_to_line(const PhysicalScene& scene, const SourceAutocorrelation& r_j, Interval dest, double sigma2,
                       std::size_t n);

/// Destination of the source's length starting at dest_offset.
double mi_finite_finite(const PhysicalScene& scene, const SourceAutocorrelation& r_j, double dest_offset,
                        double sigma2, std::size_t n);

/// Covariance of the shift-averaged periodic source at the midpoints of
/// 2m+1 periods, n per period, starting m periods below the support. Shifts
/// are t L / q for t = 0..q-1.
HermitianMatrix shift_averaged_covariance(const SourceAutocorrelation& r_j, std::size_t n, int m, int q);

/// MI of the (2m+1)-period shift-averaged source against `dest`.
double mi_virtual_line(const PhysicalScene& scene, const SourceAutocorrelation& r_j, Interval dest, double sigma2,
                       std::size_t n, int m, int q);

struct ChainCheckOptions {
  int virtual_periods = 4;
  int shift_samples = 16;
};

struct ChainCheck {
  double i_LL = 0.0;
  double i_L2L = 0.0;
  double i_inf2L = 0.0;
  /// i_inf2L with one more virtual period on each side.
  double i_inf2L_next = 0.0;
  bool m_stable = false;  ///< |i_inf2L_next - i_inf2L| <= 1% i_inf2L
  bool chain_holds = false;
};

/// i_LL: destination facing the source. i_L2L: destination of length 2L
/// starting L/2 below the source, so it contains the i_LL destination grid.
/// chain_holds compares with slack 1e-6 i_LL. Requires n even and >= 16,
/// m >= 3, q >= 8.
ChainCheck mi_chain_check(const PhysicalScene& scene, const SourceAutocorrelation& r_j, double sigma2,
                          std::size_t n, ChainCheckOptions options = {});

/// log det(k_x + k_y + k_n) >= log det(k_x + k_n) - 1e-10.
bool entropy_sum_check(const HermitianMatrix& k_x, const HermitianMatrix& k_y, const HermitianMatrix& k_n);

/// Random PSD autocorrelation on `support`: a sum of 1 to 4 rank-one terms
/// u(s) u(s')^*, each u a random combination of the Fourier modes
/// exp(2 pi j p (s - lo) / L), |p| <= 3, scaled so the mean of R(s, s) is 1.
SourceAutocorrelation random_psd_source(std::uint64_t seed, Interval support);

}  // namespace emcap::bounds
