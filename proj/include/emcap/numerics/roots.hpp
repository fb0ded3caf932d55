// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <utility>

#include "emcap/errors.hpp"
#include "emcap/numerics/interval.hpp"

namespace emcap::numerics {

/// Brent's method on a sign-changing bracket. Interpolation steps that do not
/// shrink the bracket fast enough fall back to bisection, so convergence is
/// guaranteed. Returns x with |f(x)| <= tol or a final bracket no wider than
/// tol.
template <typename F>
double find_root(F&& f, Interval bracket, double tol, int max_iterations = 500) {
  if (!(tol > 0.0)) throw DomainError("find_root: tolerance must be positive");
  double a = bracket.lo();
  double b = bracket.hi();
  double fa = f(a);
  double fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw DomainError("find_root: function is not finite at the bracket ends");
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketError("find_root: no sign change on the bracket");
  }

  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double half_width = 0.5 * (c - b);
    if (std::abs(fb) <= tol || std::abs(half_width) <= 0.5 * tol) return b;

    if (std::abs(e) >= 0.5 * tol && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points differ.
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * half_width * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * half_width * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * half_width * q - std::abs(0.5 * tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = half_width;
        e = d;
      }
    } else {
      d = half_width;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::abs(d) > 0.5 * tol) {
      b += d;
    } else {
      b += (half_width > 0.0 ? 0.5 * tol : -0.5 * tol);
    }
    fb = f(b);
  }
  return b;
}

}  // namespace emcap::numerics
