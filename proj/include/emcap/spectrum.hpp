// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "emcap/green.hpp"
#include "emcap/numerics/quadrature.hpp"

namespace emcap::spectrum {

/// Uniform wavenumber grid (rad/m), strictly increasing.
class WavenumberGrid {
 public:
  WavenumberGrid(double first, double spacing, std::size_t count);

  /// `count` nodes at half-integer multiples of `spacing`. Even counts are
  /// symmetric about 0; odd counts carry one extra node on the positive side.
  /// No node is closer than spacing/2 to 0 or to any integer multiple of
  /// `spacing`.
  static WavenumberGrid centered(std::size_t count, double spacing);

  /// Grid for the Green spectrum of `scene`. The spacing divides kappa0
  /// exactly, so the branch points +-kappa0 fall midway between nodes; the
  /// half-width is at least max(8 kappa0, 24/d). With samples == 0 the
  /// spacing is min(kappa0/256, 0.02/d) rounded to a divisor of kappa0.
  static WavenumberGrid for_scene(const PhysicalScene& scene, std::size_t samples = 0);

  std::size_t size() const noexcept { return count_; }
  double spacing() const noexcept { return spacing_; }
  double operator[](std::size_t i) const noexcept { return first_ + spacing_ * static_cast<double>(i); }
  double front() const noexcept { return first_; }
  double back() const noexcept { return (*this)[count_ - 1]; }
  std::vector<double> nodes() const;
  /// Trapezoidal weights (spacing, halved at both ends).
  std::vector<double> trapezoid_weights() const;

  bool operator==(const WavenumberGrid& other) const = default;

 private:
  double first_;
  double spacing_;
  std::size_t count_;
};

/// Values sampled on a wavenumber grid: real for densities, complex for
/// transfer spectra.
template <typename T>
struct Spectrum {
  WavenumberGrid grid;
  std::vector<T> values;
};

using SpectralDensity = Spectrum<double>;
using TransferSpectrum = Spectrum<std::complex<double>>;

/// Fourier transform of the spherical-wave factor of the scalar kernel
/// (Hankel/Bessel form in the propagating band, K0 outside). Even in kappa.
/// SingularityError within 1e-9 kappa0 of the branch points +-kappa0.
std::complex<double> f1_closed(const PhysicalScene& scene, double kappa);

/// Fourier transform of the near-field bracket of the scalar kernel: the
/// five-term exponential / K0 / K1 closed form. SingularityError at kappa = 0.
std::complex<double> f2_closed(const PhysicalScene& scene, double kappa);

/// G = (1/sqrt(2 pi)) F1 * F2 on `grid`.
///
/// The convolution is a product midpoint rule over cells of width spacing in
/// which each factor is replaced by its exact cell average (adaptive
/// quadrature split at the log singularities), so the singular cells carry
/// their integrable mass instead of a point sample.
///
/// Throws DomainError if a node lies within spacing/2 of 0 or +-kappa0 and
/// GridTooNarrowError if |F1| or |F2| at the grid edges exceeds 1e-8 of its
/// peak on the grid.
TransferSpectrum green_spectrum(const PhysicalScene& scene, const WavenumberGrid& grid);

struct FourierOracleOptions {
  int panels = 2048;
  double abs_tol = 1e-10;
};

/// (1/sqrt(2 pi)) int f(x) w(x) e^{j kappa x} dx over [-half_width, half_width]
/// with w a raised-cosine taper over the outer `taper` meters on each side.
numerics::QuadratureResult<std::complex<double>> numerical_ft_oracle(
    const std::function<std::complex<double>(double)>& f, double kappa, double half_width, double taper,
    FourierOracleOptions options = {});

struct LobeSummary {
  std::size_t peak_index = 0;
  double peak = 0.0;
  /// Main lobe spans [main_lo, main_hi] (node indices), bounded by the first
  /// local minima on either side of the global peak.
  std::size_t main_lo = 0;
  std::size_t main_hi = 0;
  /// Largest |G| outside the main lobe divided by the peak; 0 if none.
  double side_lobe_ratio = 0.0;
};

LobeSummary lobe_summary(const TransferSpectrum& g);

/// Trapezoidal int |G|^2 dkappa.
double spectral_energy(const TransferSpectrum& g);

}  // namespace emcap::spectrum
