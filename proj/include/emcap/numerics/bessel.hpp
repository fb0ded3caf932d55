// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Integer-order Bessel functions needed by the Green-function spectra.
///
/// J0 and Y0 use the power series near the origin, Miller's backward
/// recurrence (with the Neumann series for Y0) at moderate arguments and the
/// Hankel asymptotic expansion beyond x = 25. K0 and K1 use the ascending
/// series for x <= 2 and Steed's continued fraction above. Relative accuracy
/// is close to machine precision away from the zeros of J0 and Y0. K0 and K1
/// underflow to zero beyond x ~ 700.
///
/// Every function throws DomainError for non-finite input; Y0, K0 and K1 also
/// for x <= 0.

namespace emcap::numerics {

double bessel_j0(double x);
double bessel_y0(double x);
double bessel_k0(double x);
double bessel_k1(double x);

}  // namespace emcap::numerics
