// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "emcap/sampled.hpp"

namespace emcap::mercer {

/// R_E(r, r') = power * exp(-alpha |r - r'|) on a destination [0, length].
/// `power` is the received-field power, unrelated to any source power budget.
struct ExponentialKernelParams {
  double power = 1.0;
  double alpha = 1.0;
  double length = 1.0;

  void validate() const;
};

struct MercerMode {
  double eigenvalue = 0.0;
  /// Closed-form modes only.
  std::optional<double> frequency;
  /// Closed-form modes only; phi = (omega cos(omega r) + alpha sin(omega r)) / normalization.
  std::optional<double> normalization;
  /// Eigenfunction at MercerSpectrum::sample_points; empty when not sampled.
  std::vector<double> samples;
};

struct MercerSpectrum {
  double length = 0.0;
  /// int_0^L R(r, r) dr (or its quadrature), used for the truncation bound.
  double trace = 0.0;
  std::vector<MercerMode> modes;  ///< eigenvalues non-increasing
  std::vector<double> sample_points;
  std::vector<double> sample_weights;  ///< trapezoidal
};

/// Closed-form eigen system of the exponential kernel: omega_k is the root of
/// 2 atan(omega/alpha) + omega L = k pi on ((k-1) pi/L, k pi/L),
/// lambda_k = 2 alpha P / (alpha^2 + omega_k^2). With sample_count > 1 the
/// eigenfunctions are tabulated on a uniform grid of that many points.
MercerSpectrum exp_kernel_modes(const ExponentialKernelParams& params, std::size_t k_max,
                                std::size_t sample_count = 0);

/// Left side of the frequency equation minus k pi; zero at omega_k.
double frequency_residual(const ExponentialKernelParams& params, int k, double omega);

/// Nystrom eigen system of a real symmetric kernel on [0, L] with n
/// trapezoidal nodes; keeps the top k_max modes. Requires n >= 4 k_max.
/// DomainError when an eigenvalue is below -1e-10 of the largest.
MercerSpectrum nystrom_modes(const std::function<double(double, double)>& r_e, double length, std::size_t n,
                             std::size_t k_max);

struct MercerInformation {
  /// sum_k log(1 + 2 lambda_k / n0) over the retained modes, plus the
  /// first-order tail 2 (trace - sum lambda_k) / n0.
  double nats = 0.0;
  /// The first-order tail alone.
  double tail_estimate = 0.0;
  /// nats - tail_bound <= I <= nats.
  double tail_bound = 0.0;
  std::size_t modes_used = 0;
};

/// Mutual information of a destination observing R_E in white noise of
/// density n0/2. Modes below 1e-12 of the largest eigenvalue are dropped and
/// folded into the tail. Since x - x^2/2 <= log(1+x) <= x, the tail term
/// overestimates by at most T^2/2 where T is the tail estimate.
MercerInformation mercer_mutual_information(const MercerSpectrum& spectrum, double n0);

/// Modes needed so that the first-order tail of the exponential kernel is at
/// most `tail_tolerance` nats: the tail is below 4 alpha P L^2 / (pi^2 n0 K).
std::size_t exp_kernel_mode_count(const ExponentialKernelParams& params, double n0, double tail_tolerance);

/// Closed-form MI for the exponential kernel with a mode count from
/// exp_kernel_mode_count.
MercerInformation exp_kernel_mutual_information(const ExponentialKernelParams& params, double n0,
                                                double tail_tolerance = 1e-2);

struct SzegoComparison {
  double length = 0.0;
  double mi_per_meter = 0.0;  ///< I(L)/L at L = 32/alpha
  double ssd_capacity = 0.0;  ///< nats per meter of the infinite line
};

/// (1/2 pi) int log(1 + S_E / (n0 / (2 sqrt(2 pi)))) dkappa with
/// S_E = (1/sqrt(2 pi)) 2 alpha P / (alpha^2 + kappa^2), by quadrature.
double exp_kernel_ssd_capacity(double power, double alpha, double n0);

/// I(L)/L at L = 32/alpha against the infinite-line SSD capacity.
/// params.length is ignored.
SzegoComparison mercer_vs_ssd_limit(const ExponentialKernelParams& params, double n0);

/// Eigenvalues of the received-field covariance on a midpoint destination
/// grid of n points over `dest`, as Nystrom approximations of the field's
/// Mercer eigenvalues. No eigenfunctions are sampled.
MercerSpectrum field_mercer_spectrum(const PhysicalScene& scene, const sampled::SourceAutocorrelation& r_j,
                                     numerics::Interval dest, std::size_t n, std::size_t source_points);

}  // namespace emcap::mercer
