// SPDX-License-Identifier: Apache-2.0
#include "emcap/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "emcap/errors.hpp"
#include "emcap/numerics/bessel.hpp"
#include "emcap/numerics/parallel.hpp"

namespace emcap::spectrum {

using namespace std::complex_literals;
using numerics::Interval;

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934382;
constexpr double kEdgeThreshold = 1e-8;
constexpr double kCellRelTol = 1e-10;

// F1 without the branch-point guard. Quadrature nodes can round onto the
// branch point itself, where the log singularity is replaced by its value at
// the smallest normal argument.
std::complex<double> f1_unchecked(const PhysicalScene& scene, double kappa) {
  const double k0 = scene.wavenumber();
  const double a = std::abs(kappa);
  const double m = std::sqrt(std::abs((k0 - a) * (k0 + a)));
  const double dm = std::max(scene.distance() * m, std::numeric_limits<double>::min());
  const std::complex<double> prefactor = -1i * PhysicalScene::kImpedance * kInvSqrt2Pi / scene.wavelength();
  if (a < k0) {
    return prefactor * (std::numbers::pi / 2.0) * (1i * numerics::bessel_j0(dm) - numerics::bessel_y0(dm));
  }
  return prefactor * numerics::bessel_k0(dm);
}

std::complex<double> f2_unchecked(const PhysicalScene& scene, double kappa) {
  const double d = scene.distance();
  const double lambda = scene.wavelength();
  const double a = std::abs(kappa);
  const double da = d * a;
  const double decay = std::exp(-da);
  const double k0 = numerics::bessel_k0(da);
  const double k1 = numerics::bessel_k1(da);
  const double sqrt_2_over_pi = std::sqrt(2.0 / std::numbers::pi);
  const double sqrt_pi_over_2 = std::sqrt(std::numbers::pi / 2.0);
  const double q = (lambda / (2.0 * std::numbers::pi)) * (lambda / (2.0 * std::numbers::pi));

  std::complex<double> value = d * sqrt_pi_over_2 * decay;
  value += 1i * d * lambda / (2.0 * std::numbers::pi) * sqrt_2_over_pi * a * k1;
  value -= 1i * lambda / std::numbers::pi * (sqrt_2_over_pi * k0 - d * sqrt_2_over_pi * a * k1);
  value -= q / (2.0 * d) * sqrt_pi_over_2 * (1.0 + da) * decay;
  value += q * (sqrt_pi_over_2 * 2.0 * decay / d - sqrt_pi_over_2 / d * (1.0 + da) * decay);
  return value;
}

template <typename F>
std::complex<double> cell_average(F&& f, double lo, double hi, std::span<const double> breaks) {
  numerics::QuadratureOptions options;
  options.rel_tol = kCellRelTol;
  options.max_subdivisions = 400;
  const double width = hi - lo;
  try {
    return numerics::integrate(f, Interval(lo, hi), 1e-300, breaks, options).value / width;
  } catch (const AccuracyError& e) {
    // The singular cells converge slowly; the best estimate is still far
    // below the midpoint-rule error of the surrounding sum.
    return e.estimate() / width;
  }
}

}  // namespace

WavenumberGrid::WavenumberGrid(double first, double spacing, std::size_t count)
    : first_(first), spacing_(spacing), count_(count) {
  if (count < 2) throw DomainError("wavenumber grid needs at least 2 samples");
  if (!std::isfinite(first) || !std::isfinite(spacing) || !(spacing > 0.0)) {
    throw DomainError("wavenumber grid needs finite start and positive spacing");
  }
}

WavenumberGrid WavenumberGrid::centered(std::size_t count, double spacing) {
  if (count < 2) throw DomainError("wavenumber grid needs at least 2 samples");
  // Even: nodes at (i - (n-1)/2) h, already half-integers. Odd: shift by h/2.
  const double offset = (count % 2 == 0) ? 0.0 : 0.5;
  const double first = (-(static_cast<double>(count) - 1.0) / 2.0 + offset) * spacing;
  return WavenumberGrid(first, spacing, count);
}

WavenumberGrid WavenumberGrid::for_scene(const PhysicalScene& scene, std::size_t samples) {
  const double k0 = scene.wavenumber();
  const double half_width = std::max(8.0 * k0, 24.0 / scene.distance());
  if (samples == 0) {
    const double per_k0 = std::max(256.0, std::ceil(k0 * scene.distance() / 0.02));
    const double spacing = k0 / per_k0;
    const auto count = static_cast<std::size_t>(2.0 * std::ceil(half_width / spacing));
    return centered(count, spacing);
  }
  if (samples < 2) throw DomainError("wavenumber grid needs at least 2 samples");
  const double per_k0 = std::max(1.0, std::floor(static_cast<double>(samples) * k0 / (2.0 * half_width)));
  return centered(samples, k0 / per_k0);
}

std::vector<double> WavenumberGrid::nodes() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = (*this)[i];
  return out;
}

std::vector<double> WavenumberGrid::trapezoid_weights() const {
  std::vector<double> w(count_, spacing_);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

std::complex<double> f1_closed(const PhysicalScene& scene, double kappa) {
  if (!std::isfinite(kappa)) throw DomainError("f1_closed: kappa must be finite");
  const double k0 = scene.wavenumber();
  if (std::abs(std::abs(kappa) - k0) <= 1e-9 * k0) {
    throw SingularityError("f1_closed: kappa at the branch point |kappa| = kappa0; offset the grid");
  }
  return f1_unchecked(scene, kappa);
}

std::complex<double> f2_closed(const PhysicalScene& scene, double kappa) {
  if (!std::isfinite(kappa)) throw DomainError("f2_closed: kappa must be finite");
  if (kappa == 0.0) throw SingularityError("f2_closed: logarithmic singularity at kappa = 0");
  return f2_unchecked(scene, kappa);
}

TransferSpectrum green_spectrum(const PhysicalScene& scene, const WavenumberGrid& grid) {
  const double h = grid.spacing();
  const double k0 = scene.wavenumber();
  const std::size_t n = grid.size();
  const double clearance = 0.5 * h * (1.0 - 1e-6);
  for (std::size_t i = 0; i < n; ++i) {
    const double kappa = grid[i];
    if (std::abs(kappa) < clearance || std::abs(std::abs(kappa) - k0) < clearance) {
      throw DomainError("green_spectrum: grid node " + std::to_string(kappa) +
                        " is closer than spacing/2 to 0 or +-kappa0");
    }
  }

  auto f1 = [&](double kappa) { return f1_unchecked(scene, kappa); };
  auto f2 = [&](double kappa) { return f2_unchecked(scene, kappa); };

  std::vector<std::complex<double>> f1_avg(n);
  numerics::parallel_for(n, [&](std::size_t j) {
    const double lo = grid[j] - 0.5 * h;
    const double hi = grid[j] + 0.5 * h;
    const double breaks[] = {-k0, k0};
    f1_avg[j] = cell_average(f1, lo, hi, breaks);
  });

  // F2 is even: cell averages on the difference lattice m h, m = 0..n-1.
  std::vector<std::complex<double>> f2_avg(n);
  numerics::parallel_for(n, [&](std::size_t m) {
    if (m == 0) {
      f2_avg[0] = cell_average(f2, 0.0, 0.5 * h, {});
    } else {
      const double center = static_cast<double>(m) * h;
      f2_avg[m] = cell_average(f2, center - 0.5 * h, center + 0.5 * h, {});
    }
  });

  auto max_abs = [](const std::vector<std::complex<double>>& v) {
    double best = 0.0;
    for (const auto& z : v) best = std::max(best, std::abs(z));
    return best;
  };
  const double f1_peak = max_abs(f1_avg);
  const double f1_edge = std::max(std::abs(f1_avg.front()), std::abs(f1_avg.back()));
  const double f2_peak = max_abs(f2_avg);
  const double f2_edge = std::max(std::abs(f2(grid.front())), std::abs(f2(grid.back())));
  if (f1_edge >= kEdgeThreshold * f1_peak || f2_edge >= kEdgeThreshold * f2_peak) {
    throw GridTooNarrowError("green_spectrum: grid [" + std::to_string(grid.front()) + ", " +
                             std::to_string(grid.back()) + "] truncates F1 or F2 (edge/peak " +
                             std::to_string(std::max(f1_edge / f1_peak, f2_edge / f2_peak)) + ")");
  }

  TransferSpectrum out{grid, std::vector<std::complex<double>>(n)};
  const double scale = h * kInvSqrt2Pi;
  numerics::parallel_for(n, [&](std::size_t i) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t lag = i > j ? i - j : j - i;
      acc += f1_avg[j] * f2_avg[lag];
    }
    out.values[i] = scale * acc;
  });
  return out;
}

numerics::QuadratureResult<std::complex<double>> numerical_ft_oracle(
    const std::function<std::complex<double>(double)>& f, double kappa, double half_width, double taper,
    FourierOracleOptions options) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("numerical_ft_oracle: half_width must be positive");
  }
  if (!(taper >= 0.0) || !(taper < half_width)) {
    throw DomainError("numerical_ft_oracle: taper must lie in [0, half_width)");
  }
  if (options.panels < 1) throw DomainError("numerical_ft_oracle: panels must be positive");
  const double flat = half_width - taper;
  auto integrand = [&](double x) {
    const double ax = std::abs(x);
    double w = 1.0;
    if (ax > flat) w = 0.5 * (1.0 + std::cos(std::numbers::pi * (ax - flat) / taper));
    return f(x) * w * std::exp(1i * (kappa * x)) * kInvSqrt2Pi;
  };
  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(options.panels) + 2);
  for (int p = 1; p < options.panels; ++p) {
    breaks.push_back(-half_width + 2.0 * half_width * p / options.panels);
  }
  if (taper > 0.0) {
    breaks.push_back(-flat);
    breaks.push_back(flat);
  }
  numerics::QuadratureOptions qopt;
  qopt.max_subdivisions = 20 * options.panels + 4000;
  return numerics::integrate(integrand, Interval(-half_width, half_width), options.abs_tol, breaks, qopt);
}

LobeSummary lobe_summary(const TransferSpectrum& g) {
  const auto& v = g.values;
  const std::size_t n = v.size();
  LobeSummary out;
  if (n == 0) return out;
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(v[i]);
  out.peak_index = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
  out.peak = mag[out.peak_index];
  std::size_t lo = out.peak_index;
  while (lo > 0 && mag[lo - 1] <= mag[lo]) --lo;
  std::size_t hi = out.peak_index;
  while (hi + 1 < n && mag[hi + 1] <= mag[hi]) ++hi;
  out.main_lo = lo;
  out.main_hi = hi;
  double side = 0.0;
  for (std::size_t i = 0; i < lo; ++i) side = std::max(side, mag[i]);
  for (std::size_t i = hi + 1; i < n; ++i) side = std::max(side, mag[i]);
  out.side_lobe_ratio = out.peak > 0.0 ? side / out.peak : 0.0;
  return out;
}

double spectral_energy(const TransferSpectrum& g) {
  const auto w = g.grid.trapezoid_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.values.size(); ++i) sum += w[i] * std::norm(g.values[i]);
  return sum;
}

}  // namespace emcap::spectrum
