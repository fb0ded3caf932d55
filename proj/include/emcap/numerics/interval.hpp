// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

#include "emcap/errors.hpp"

namespace emcap::numerics {

/// Closed real interval [lo, hi] with lo < hi, both finite.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw DomainError("interval requires finite lo < hi, got [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }
  bool interior(double x) const noexcept { return x > lo_ && x < hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace emcap::numerics
