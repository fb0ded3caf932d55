// SPDX-License-Identifier: Apache-2.0
#include "emcap/numerics/bessel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "emcap/errors.hpp"

namespace emcap::numerics {
namespace {

constexpr double kEps = 1e-17;
constexpr double kGamma = std::numbers::egamma;
constexpr double kAsymptoticThreshold = 25.0;
constexpr double kSeriesThreshold = 2.0;

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw DomainError(std::string(name) + ": argument is not finite");
}

void require_positive(double x, const char* name) {
  require_finite(x, name);
  if (!(x > 0.0)) {
    throw DomainError(std::string(name) + ": argument must be positive (logarithmic singularity at 0)");
  }
}

struct Pair {
  double j0;
  double y0;
};

// Hankel expansion: J0 = A (P cos chi - Q sin chi), Y0 = A (P sin chi + Q cos chi).
Pair hankel_asymptotic(double x) {
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double previous = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -odd * odd / (8.0 * k * x);
    if (std::abs(term) > previous) break;  // series started diverging
    previous = std::abs(term);
    // k even -> P, sign (-1)^(k/2); k odd -> Q, sign (-1)^((k-1)/2)
    const int half = k / 2;
    const double sign = (half % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (previous < kEps) break;
  }
  const double amplitude = std::sqrt(2.0 / (std::numbers::pi * x));
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double cos_chi = (c + s) * std::numbers::sqrt2 / 2.0;
  const double sin_chi = (s - c) * std::numbers::sqrt2 / 2.0;
  return {amplitude * (p * cos_chi - q * sin_chi), amplitude * (p * sin_chi + q * cos_chi)};
}

// Miller's backward recurrence, normalized by J0 + 2 sum J_2k = 1. The same
// pass accumulates the Neumann series for Y0.
Pair miller(double x) {
  const int start = 2 * static_cast<int>(std::ceil((1.5 * x + 40.0) / 2.0));
  double j_next = 0.0;
  double j_cur = 1e-30;
  double norm = 0.0;
  double neumann = 0.0;  // sum_{k>=1} (-1)^k J_2k / k, unnormalized
  for (int k = start; k >= 1; --k) {
    const double j_prev = (2.0 * k / x) * j_cur - j_next;
    j_next = j_cur;
    j_cur = j_prev;  // now holds J_{k-1}
    const int order = k - 1;
    if (order > 0 && order % 2 == 0) {
      norm += 2.0 * j_cur;
      const int half = order / 2;
      neumann += ((half % 2 == 0) ? 1.0 : -1.0) * j_cur / half;
    }
    if (std::abs(j_cur) > 1e250) {
      j_cur *= 1e-250;
      j_next *= 1e-250;
      norm *= 1e-250;
      neumann *= 1e-250;
    }
  }
  norm += j_cur;
  const double j0 = j_cur / norm;
  const double y0 =
      (2.0 / std::numbers::pi) * ((std::log(0.5 * x) + kGamma) * j0 - 2.0 * neumann / norm);
  return {j0, y0};
}

double j0_series(double x) {
  const double z = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60 && std::abs(term) > kEps * std::abs(sum); ++k) {
    term *= z / (static_cast<double>(k) * k);
    sum += term;
  }
  return sum;
}

double y0_series(double x) {
  const double z = 0.25 * x * x;
  double term = 1.0;
  double harmonic = 0.0;
  double tail = 0.0;
  for (int k = 1; k < 60; ++k) {
    term *= z / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    const double contribution = ((k % 2 == 1) ? 1.0 : -1.0) * harmonic * term;
    tail += contribution;
    if (std::abs(contribution) < kEps * std::abs(tail)) break;
  }
  return (2.0 / std::numbers::pi) * ((std::log(0.5 * x) + kGamma) * j0_series(x) + tail);
}

struct KPair {
  double k0;
  double k1;
};

KPair k_series(double x) {
  const double z = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  // K0
  double term0 = 1.0;  // z^k / (k!)^2
  double i0 = 1.0;
  double harmonic = 0.0;
  double sum0 = 0.0;
  // K1
  double term1 = 1.0;  // z^k / (k! (k+1)!)
  double i1_sum = 1.0;
  double psi_sum = -2.0 * kGamma + 1.0;  // psi(1) + psi(2)
  double sum1 = psi_sum;
  for (int k = 1; k < 60; ++k) {
    term0 *= z / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term0;
    sum0 += harmonic * term0;
    term1 *= z / (static_cast<double>(k) * (k + 1));
    i1_sum += term1;
    // psi(k+1) + psi(k+2) = H_k + H_{k+1} - 2 gamma
    const double psi = 2.0 * harmonic + 1.0 / (k + 1) - 2.0 * kGamma;
    sum1 += psi * term1;
    if (term0 < kEps * i0 && term1 < kEps * i1_sum) break;
  }
  const double k0 = -(log_half + kGamma) * i0 + sum0;
  const double i1 = 0.5 * x * i1_sum;
  const double k1 = 1.0 / x + log_half * i1 - 0.25 * x * sum1;
  return {k0, k1};
}

// Steed's continued fraction CF2 for K_0 and K_1 (Temme normalization).
KPair k_continued_fraction(double x) {
  constexpr double a1 = 0.25;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

KPair bessel_k_pair(double x) {
  return x <= kSeriesThreshold ? k_series(x) : k_continued_fraction(x);
}

}  // namespace

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  const double ax = std::abs(x);
  if (ax <= kSeriesThreshold) return j0_series(ax);
  if (ax <= kAsymptoticThreshold) return miller(ax).j0;
  return hankel_asymptotic(ax).j0;
}

double bessel_y0(double x) {
  require_positive(x, "bessel_y0");
  if (x <= kSeriesThreshold) return y0_series(x);
  if (x <= kAsymptoticThreshold) return miller(x).y0;
  return hankel_asymptotic(x).y0;
}

double bessel_k0(double x) {
  require_positive(x, "bessel_k0");
  return bessel_k_pair(x).k0;
}

double bessel_k1(double x) {
  require_positive(x, "bessel_k1");
  return bessel_k_pair(x).k1;
}

}  // namespace emcap::numerics
