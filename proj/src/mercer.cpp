// SPDX-License-Identifier: Apache-2.0
#include "emcap/mercer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "emcap/errors.hpp"
#include "emcap/numerics/linalg.hpp"
#include "emcap/numerics/parallel.hpp"
#include "emcap/numerics/quadrature.hpp"
#include "emcap/numerics/roots.hpp"

namespace emcap::mercer {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDropRatio = 1e-12;
constexpr double kMaxModes = 1e8;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(std::string(name) + " must be positive and finite");
}

std::vector<double> uniform_nodes(double length, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = length * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = length;
  return out;
}

std::vector<double> trapezoid(double length, std::size_t n) {
  std::vector<double> w(n, length / static_cast<double>(n - 1));
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

}  // namespace

void ExponentialKernelParams::validate() const {
  require_positive(power, "kernel power");
  require_positive(alpha, "kernel decay rate alpha");
  require_positive(length, "destination length");
}

double frequency_residual(const ExponentialKernelParams& params, int k, double omega) {
  return 2.0 * std::atan(omega / params.alpha) + omega * params.length - k * kPi;
}

MercerSpectrum exp_kernel_modes(const ExponentialKernelParams& params, std::size_t k_max,
                                std::size_t sample_count) {
  params.validate();
  if (k_max < 1) throw DomainError("exp_kernel_modes: k_max must be at least 1");
  if (static_cast<double>(k_max) > kMaxModes) throw DomainError("exp_kernel_modes: k_max too large");
  if (sample_count == 1) throw DomainError("exp_kernel_modes: need 0 or at least 2 sample points");
  const double length = params.length;
  const double alpha = params.alpha;

  MercerSpectrum out;
  out.length = length;
  out.trace = params.power * length;
  if (sample_count > 1) {
    out.sample_points = uniform_nodes(length, sample_count);
    out.sample_weights = trapezoid(length, sample_count);
  }
  out.modes.resize(k_max);
  numerics::parallel_for(k_max, [&](std::size_t idx) {
    const int k = static_cast<int>(idx) + 1;
    const numerics::Interval bracket((k - 1) * kPi / length, k * kPi / length);
    const double omega =
        numerics::find_root([&](double w) { return frequency_residual(params, k, w); }, bracket, 1e-13);
    const double z2 = (omega * omega + alpha * alpha) * length / 2.0 +
                      (omega * omega - alpha * alpha) * std::sin(2.0 * omega * length) / (4.0 * omega) +
                      alpha * std::sin(omega * length) * std::sin(omega * length);
    MercerMode& mode = out.modes[idx];
    mode.eigenvalue = 2.0 * alpha * params.power / (alpha * alpha + omega * omega);
    mode.frequency = omega;
    mode.normalization = std::sqrt(z2);
    if (sample_count > 1) {
      mode.samples.resize(sample_count);
      for (std::size_t i = 0; i < sample_count; ++i) {
        const double r = out.sample_points[i];
        mode.samples[i] = (omega * std::cos(omega * r) + alpha * std::sin(omega * r)) / *mode.normalization;
      }
    }
  });
  return out;
}

MercerSpectrum nystrom_modes(const std::function<double(double, double)>& r_e, double length, std::size_t n,
                             std::size_t k_max) {
  require_positive(length, "destination length");
  if (k_max < 1) throw DomainError("nystrom_modes: k_max must be at least 1");
  if (n < 4 * k_max) {
    throw DomainError("nystrom_modes: grid of " + std::to_string(n) + " points is too coarse for " +
                      std::to_string(k_max) + " modes (need n >= 4 k_max)");
  }
  const auto nodes = uniform_nodes(length, n);
  const auto weights = trapezoid(length, n);
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a(dim, dim);
  double trace = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto si = static_cast<std::size_t>(i);
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      const double v = std::sqrt(weights[si] * weights[sj]) * r_e(nodes[si], nodes[sj]);
      a(i, j) = v;
      a(j, i) = v;
    }
    trace += a(i, i);
  }
  const auto eig = numerics::eigh(numerics::SymmetricMatrix(std::move(a)));
  const double top = eig.values(0);
  if (eig.values(dim - 1) < -1e-10 * std::abs(top)) {
    throw DomainError("nystrom_modes: kernel is not positive semi-definite (eigenvalue " +
                      std::to_string(eig.values(dim - 1)) + ")");
  }

  MercerSpectrum out;
  out.length = length;
  out.trace = trace;
  out.sample_points = nodes;
  out.sample_weights = weights;
  out.modes.resize(k_max);
  for (std::size_t k = 0; k < k_max; ++k) {
    MercerMode& mode = out.modes[k];
    mode.eigenvalue = std::max(eig.values(static_cast<Eigen::Index>(k)), 0.0);
    mode.samples.resize(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mode.samples[i] = eig.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) /
                        std::sqrt(weights[i]);
      peak = std::max(peak, std::abs(mode.samples[i]));
    }
    // Orient so the eigenfunction rises from r = 0; if it starts flat, so its
    // first significant value is positive.
    double slope = mode.samples[1] - mode.samples[0];
    if (std::abs(slope) <= 1e-9 * peak) {
      slope = 0.0;
      for (double v : mode.samples) {
        if (std::abs(v) > 1e-6 * peak) {
          slope = v;
          break;
        }
      }
    }
    if (slope < 0.0) {
      for (double& v : mode.samples) v = -v;
    }
  }
  return out;
}

MercerInformation mercer_mutual_information(const MercerSpectrum& spectrum, double n0) {
  require_positive(n0, "noise density n0");
  MercerInformation out;
  if (spectrum.modes.empty()) {
    out.tail_estimate = std::max(0.0, 2.0 * spectrum.trace / n0);
  } else {
    const double floor = kDropRatio * spectrum.modes.front().eigenvalue;
    double head = 0.0;
    double captured = 0.0;
    for (const auto& mode : spectrum.modes) {
      if (!(mode.eigenvalue > 0.0) || mode.eigenvalue < floor) continue;
      head += std::log1p(2.0 * mode.eigenvalue / n0);
      captured += mode.eigenvalue;
      ++out.modes_used;
    }
    out.tail_estimate = std::max(0.0, 2.0 * (spectrum.trace - captured) / n0);
    out.nats = head;
  }
  out.nats += out.tail_estimate;
  out.tail_bound = 0.5 * out.tail_estimate * out.tail_estimate;
  return out;
}

std::size_t exp_kernel_mode_count(const ExponentialKernelParams& params, double n0, double tail_tolerance) {
  params.validate();
  require_positive(n0, "noise density n0");
  require_positive(tail_tolerance, "tail tolerance");
  const double l = params.length;
  const double k = std::ceil(4.0 * params.alpha * params.power * l * l / (kPi * kPi * n0 * tail_tolerance)) + 1.0;
  if (k > kMaxModes) throw DomainError("exp_kernel_mode_count: tolerance needs more than 1e8 modes");
  return static_cast<std::size_t>(std::max(k, 8.0));
}

MercerInformation exp_kernel_mutual_information(const ExponentialKernelParams& params, double n0,
                                                double tail_tolerance) {
  const std::size_t k = exp_kernel_mode_count(params, n0, tail_tolerance);
  return mercer_mutual_information(exp_kernel_modes(params, k), n0);
}

double exp_kernel_ssd_capacity(double power, double alpha, double n0) {
  require_positive(power, "kernel power");
  require_positive(alpha, "kernel decay rate alpha");
  require_positive(n0, "noise density n0");
  const double c = 4.0 * alpha * power / n0;
  // kappa = alpha tan(theta) maps the real line onto (-pi/2, pi/2).
  auto integrand = [&](double theta) {
    const double cs = std::cos(theta);
    const double c2 = cs * cs;
    return alpha * std::log1p(c * c2 / (alpha * alpha)) / c2;
  };
  const auto res =
      numerics::integrate(integrand, numerics::Interval(-kPi / 2.0, kPi / 2.0), 1e-14, {0.0}, {1e-13, 4000});
  return res.value / (2.0 * kPi);
}

SzegoComparison mercer_vs_ssd_limit(const ExponentialKernelParams& params, double n0) {
  ExponentialKernelParams at_limit = params;
  require_positive(params.alpha, "kernel decay rate alpha");
  at_limit.length = 32.0 / params.alpha;
  SzegoComparison out;
  out.length = at_limit.length;
  out.mi_per_meter = exp_kernel_mutual_information(at_limit, n0).nats / at_limit.length;
  out.ssd_capacity = exp_kernel_ssd_capacity(params.power, params.alpha, n0);
  return out;
}

MercerSpectrum field_mercer_spectrum(const PhysicalScene& scene, const sampled::SourceAutocorrelation& r_j,
                                     numerics::Interval dest, std::size_t n, std::size_t source_points) {
  const auto layout = sampled::SamplingLayout::midpoint(r_j.support(), source_points, dest, n);
  const auto k_e = sampled::receive_covariance(scene, layout, r_j);
  const double h = dest.width() / static_cast<double>(n);
  const Eigen::VectorXd values = numerics::eigvalsh(k_e) * h;
  MercerSpectrum out;
  out.length = dest.width();
  for (Eigen::Index i = 0; i < k_e.dim(); ++i) out.trace += h * std::real(k_e(i, i));
  out.modes.resize(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    out.modes[static_cast<std::size_t>(k)].eigenvalue = std::max(values(k), 0.0);
  }
  return out;
}

}  // namespace emcap::mercer
