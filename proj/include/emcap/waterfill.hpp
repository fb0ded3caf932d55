// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "emcap/numerics/linalg.hpp"
#include "emcap/spectrum.hpp"

namespace emcap::waterfill {

using spectrum::SpectralDensity;
using spectrum::TransferSpectrum;

/// Receiver noise: white with a constant spatial spectral density, or an
/// arbitrary tabulated density. All densities must be strictly positive.
class NoiseModel {
 public:
  static NoiseModel white(double ssd);
  static NoiseModel tabulated(SpectralDensity density);

  /// Noise density sampled on `grid`; ShapeError if a tabulated model lives
  /// on a different grid.
  SpectralDensity on(const spectrum::WavenumberGrid& grid) const;

 private:
  NoiseModel() = default;
  double white_ssd_ = 0.0;
  std::optional<SpectralDensity> table_;
};

/// Noise referred to the source: S_N / (2 pi |G|^2). Bins where |G| falls
/// below 1e-14 of its peak are set to +inf and never receive power.
SpectralDensity equivalent_noise(const NoiseModel& noise, const TransferSpectrum& g_spec);

struct WaterfillResult {
  SpectralDensity source;  ///< optimal S_J
  double water_level = 0.0;
  /// Multiplier of the power constraint; water_level = 1 / (2 pi lagrange_multiplier).
  double lagrange_multiplier = 0.0;
  double capacity = 0.0;         ///< nats per meter
  double allocated_power = 0.0;  ///< trapezoidal int S_J
};

/// Optimal source density under int S_J dkappa = power:
/// S_J = (w - S_N')^+ with the water level w fixed by the power constraint.
WaterfillResult waterfill_ssd(const SpectralDensity& noise_eq, double power);

/// (1/2 pi) int log(1 + S_J / S_N') dkappa by the trapezoidal rule, nats/m.
double capacity_ssd(const SpectralDensity& s_j, const SpectralDensity& noise_eq);

struct CovarianceAllocation {
  numerics::HermitianMatrix k_e;
  double mutual_info = 0.0;  ///< nats
  double water_level = 0.0;
  /// Power on each noise eigenmode, in the descending-eigenvalue order of eigh.
  std::vector<double> allocation;
};

/// Kuhn-Tucker allocation of a sampled field covariance against noise k_n
/// under tr(k_e) = n_samples * power_per_sample.
CovarianceAllocation kkt_covariance_allocate(const numerics::HermitianMatrix& k_n, double power_per_sample,
                                             int n_samples);

}  // namespace emcap::waterfill
