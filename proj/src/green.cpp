// SPDX-License-Identifier: Apache-2.0
#include "emcap/green.hpp"

#include <cmath>
#include <string>

#include "emcap/errors.hpp"

namespace emcap {

PhysicalScene::PhysicalScene(double wavelength, double distance)
    : wavelength_(wavelength), distance_(distance), wavenumber_(2.0 * std::numbers::pi / wavelength) {
  if (!std::isfinite(wavelength) || !(wavelength > 0.0)) {
    throw DomainError("wavelength must be positive and finite, got " + std::to_string(wavelength));
  }
  if (!std::isfinite(distance) || !(distance > 0.0)) {
    throw DomainError("distance must be positive and finite, got " + std::to_string(distance));
  }
}

namespace green {

using namespace std::complex_literals;

std::complex<double> scalar_kernel(const PhysicalScene& scene, double x) {
  if (!std::isfinite(x)) throw DomainError("scalar_kernel: offset must be finite");
  const double d = scene.distance();
  const double k = scene.wavenumber();
  const double r2 = x * x + d * d;
  const double r = std::sqrt(r2);
  const double kr = k * r;
  const double near = (d * d - 2.0 * x * x) / r2;
  const std::complex<double> bracket = d * d / r2 + 1i / kr * near - near / (kr * kr);
  const std::complex<double> prefactor =
      -1i * PhysicalScene::kImpedance * std::exp(1i * kr) / (2.0 * scene.wavelength() * r);
  return prefactor * bracket;
}

DyadicGreenSample dyadic_green(const PhysicalScene& scene, const Vec3& p) {
  const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  if (!(norm > 0.0)) throw SingularityError("dyadic_green: zero separation");
  if (!std::isfinite(norm)) throw DomainError("dyadic_green: separation must be finite");
  const double k = scene.wavenumber();
  const Eigen::Vector3d unit(p[0] / norm, p[1] / norm, p[2] / norm);
  const Eigen::Matrix3d projector = Eigen::Matrix3d::Identity() - unit * unit.transpose();
  const std::complex<double> prefactor =
      -1i * k * PhysicalScene::kImpedance / (4.0 * std::numbers::pi) * std::exp(1i * k * norm) / norm;
  return {prefactor * projector.cast<std::complex<double>>(), p};
}

}  // namespace green
}  // namespace emcap
