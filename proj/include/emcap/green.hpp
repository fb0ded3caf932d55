// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace emcap {

using Vec3 = std::array<double, 3>;

/// Free-space geometry of a parallel-line link: wavelength and line spacing,
/// both in meters.
class PhysicalScene {
 public:
  /// Free-space intrinsic impedance mu0*c, ohms.
  static constexpr double kImpedance = 120.0 * std::numbers::pi;

  PhysicalScene(double wavelength, double distance);

  double wavelength() const noexcept { return wavelength_; }
  double distance() const noexcept { return distance_; }
  /// kappa0 = 2 pi / lambda, rad/m.
  double wavenumber() const noexcept { return wavenumber_; }

 private:
  double wavelength_;
  double distance_;
  double wavenumber_;
};

namespace green {

/// xx-element of the dyadic Green function between a source on the line y=0
/// and a receiver on the line y=d, as a function of the axial offset x = r - s.
/// Includes the 1/(k R) and 1/(k R)^2 near-field terms; even in x.
std::complex<double> scalar_kernel(const PhysicalScene& scene, double x);

struct DyadicGreenSample {
  Eigen::Matrix3cd matrix;
  Vec3 separation;
};

/// Far-field (transverse projector) form of the free-space dyadic Green
/// function, -(j k Z0 / 4 pi) e^{j k |p|} / |p| (I - p^ p^H).
/// Throws SingularityError for p = 0.
DyadicGreenSample dyadic_green(const PhysicalScene& scene, const Vec3& p);

}  // namespace green
}  // namespace emcap
