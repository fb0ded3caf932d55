// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "emcap/errors.hpp"
#include "emcap/numerics/interval.hpp"

namespace emcap::numerics {

template <typename T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
};

struct QuadratureOptions {
  /// Relative tolerance applied alongside the absolute one; the stricter of
  /// the two does not win, the looser does (QUADPACK convention).
  double rel_tol = 0.0;
  int max_subdivisions = 4000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
  double lo;
  double hi;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> gauss_kronrod_15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::array<T, 15> samples;
  samples[7] = static_cast<T>(f(center));
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    samples[i] = static_cast<T>(f(center - dx));
    samples[14 - i] = static_cast<T>(f(center + dx));
  }
  T kronrod = samples[7] * kKronrodWeights[7];
  T gauss = samples[7] * kGaussWeights[3];
  double abs_sum = std::abs(samples[7]) * kKronrodWeights[7];
  for (int i = 0; i < 7; ++i) {
    const T pair = samples[i] + samples[14 - i];
    kronrod += pair * kKronrodWeights[i];
    abs_sum += (std::abs(samples[i]) + std::abs(samples[14 - i])) * kKronrodWeights[i];
    if (i % 2 == 1) gauss += pair * kGaussWeights[i / 2];
  }
  const T mean = kronrod * 0.5;
  double asc = std::abs(samples[7] - mean) * kKronrodWeights[7];
  for (int i = 0; i < 7; ++i) {
    asc += (std::abs(samples[i] - mean) + std::abs(samples[14 - i] - mean)) * kKronrodWeights[i];
  }
  const double abs_half = std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  asc *= abs_half;
  abs_sum *= abs_half;
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * abs_sum, error);
  }
  if (!std::isfinite(std::abs(kronrod))) error = std::numeric_limits<double>::infinity();
  return {lo, hi, kronrod * half, error};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature.
///
/// `breakpoints` strictly inside the domain split the initial panels; put
/// integrable singularities and kinks there so that no node lands on them.
/// The integrand may be real or complex valued. Throws AccuracyError with the
/// best estimate when the subdivision budget runs out.
template <typename F>
auto integrate(F&& f, Interval domain, double abs_tol, std::span<const double> breakpoints = {},
               QuadratureOptions options = {}) {
  using Raw = std::invoke_result_t<F&, double>;
  using T = std::conditional_t<std::is_floating_point_v<Raw>, double, std::complex<double>>;
  if (!(abs_tol >= 0.0) || !(options.rel_tol >= 0.0) || (abs_tol == 0.0 && options.rel_tol == 0.0)) {
    throw DomainError("integrate: tolerances must be non-negative and not both zero");
  }

  std::vector<double> cuts{domain.lo()};
  for (double b : breakpoints) {
    if (domain.interior(b)) cuts.push_back(b);
  }
  cuts.push_back(domain.hi());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Panel<T>> panels;
  T total{};
  double total_error = 0.0;
  int evaluations = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto p = detail::gauss_kronrod_15<T>(f, cuts[i], cuts[i + 1]);
    evaluations += 15;
    total += p.value;
    total_error += p.error;
    panels.push(p);
  }

  auto tolerance = [&] { return std::max(abs_tol, options.rel_tol * std::abs(total)); };
  int subdivisions = 0;
  while (total_error > tolerance()) {
    if (subdivisions >= options.max_subdivisions) {
      throw AccuracyError("integrate: subdivision limit reached", std::complex<double>(total),
                          total_error);
    }
    auto worst = panels.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw AccuracyError("integrate: panel width below floating-point resolution",
                          std::complex<double>(total), total_error);
    }
    panels.pop();
    auto left = detail::gauss_kronrod_15<T>(f, worst.lo, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.hi);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  // Re-sum to shed the cancellation accumulated by the running updates.
  T resummed{};
  double err = 0.0;
  while (!panels.empty()) {
    resummed += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  return QuadratureResult<T>{resummed, err, evaluations};
}

template <typename F>
auto integrate(F&& f, Interval domain, double abs_tol, std::initializer_list<double> breakpoints,
               QuadratureOptions options = {}) {
  return integrate(std::forward<F>(f), domain, abs_tol,
                   std::span<const double>(breakpoints.begin(), breakpoints.size()), options);
}

}  // namespace emcap::numerics
