// SPDX-License-Identifier: Apache-2.0
#include "emcap/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "emcap/errors.hpp"

namespace emcap::waterfill {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBisectionSteps = 200;

void require_same_grid(const spectrum::WavenumberGrid& a, const spectrum::WavenumberGrid& b,
                       const char* what) {
  if (!(a == b)) throw ShapeError(std::string(what) + ": spectra live on different grids");
}

// Water level w with sum_i weight_i (w - floor_i)^+ = target. Bisection on the
// monotone fill function, then an exact solve on the identified support.
double solve_water_level(const std::vector<double>& floors, const std::vector<double>& weights,
                         double target) {
  double lo = kInf;
  double hi_floor = 0.0;
  double total_weight = 0.0;
  for (std::size_t i = 0; i < floors.size(); ++i) {
    if (!std::isfinite(floors[i])) continue;
    lo = std::min(lo, floors[i]);
    hi_floor = std::max(hi_floor, floors[i]);
    total_weight += weights[i];
  }
  if (!std::isfinite(lo)) throw DomainError("water-filling: no bin has finite noise");
  auto fill = [&](double w) {
    double sum = 0.0;
    for (std::size_t i = 0; i < floors.size(); ++i) {
      if (floors[i] < w) sum += weights[i] * (w - floors[i]);
    }
    return sum;
  };
  double hi = lo + target / total_weight + hi_floor;
  while (fill(hi) < target) hi = lo + 2.0 * (hi - lo);
  for (int step = 0; step < kBisectionSteps; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (fill(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Exact level on the support {floor < w}; iterate in case the support
  // shifts by a bin at the boundary.
  double w = hi;
  for (int pass = 0; pass < 4; ++pass) {
    double weight_sum = 0.0;
    double floor_sum = 0.0;
    for (std::size_t i = 0; i < floors.size(); ++i) {
      if (floors[i] < w) {
        weight_sum += weights[i];
        floor_sum += weights[i] * floors[i];
      }
    }
    const double next = (target + floor_sum) / weight_sum;
    if (next == w) break;
    w = next;
  }
  return w;
}

}  // namespace

NoiseModel NoiseModel::white(double ssd) {
  if (!std::isfinite(ssd) || !(ssd > 0.0)) throw DomainError("white noise density must be positive");
  NoiseModel m;
  m.white_ssd_ = ssd;
  return m;
}

NoiseModel NoiseModel::tabulated(SpectralDensity density) {
  for (double v : density.values) {
    if (!(v > 0.0)) throw DomainError("tabulated noise density must be strictly positive");
  }
  NoiseModel m;
  m.table_ = std::move(density);
  return m;
}

SpectralDensity NoiseModel::on(const spectrum::WavenumberGrid& grid) const {
  if (!table_) return {grid, std::vector<double>(grid.size(), white_ssd_)};
  require_same_grid(table_->grid, grid, "NoiseModel::on");
  return *table_;
}

SpectralDensity equivalent_noise(const NoiseModel& noise, const TransferSpectrum& g_spec) {
  const SpectralDensity s_n = noise.on(g_spec.grid);
  double peak = 0.0;
  for (const auto& z : g_spec.values) peak = std::max(peak, std::abs(z));
  SpectralDensity out{g_spec.grid, std::vector<double>(g_spec.values.size())};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double mag = std::abs(g_spec.values[i]);
    out.values[i] = (mag < 1e-14 * peak || mag == 0.0)
                        ? kInf
                        : s_n.values[i] / (2.0 * std::numbers::pi * mag * mag);
  }
  return out;
}

WaterfillResult waterfill_ssd(const SpectralDensity& noise_eq, double power) {
  if (!std::isfinite(power) || !(power > 0.0)) throw DomainError("waterfill_ssd: power must be positive");
  for (double v : noise_eq.values) {
    if (!(v > 0.0)) throw DomainError("waterfill_ssd: equivalent noise must be positive");
  }
  const auto weights = noise_eq.grid.trapezoid_weights();
  const double level = solve_water_level(noise_eq.values, weights, power);

  WaterfillResult out{{noise_eq.grid, std::vector<double>(noise_eq.values.size(), 0.0)}, level, 0.0, 0.0, 0.0};
  double allocated = 0.0;
  for (std::size_t i = 0; i < noise_eq.values.size(); ++i) {
    const double s = noise_eq.values[i] < level ? level - noise_eq.values[i] : 0.0;
    out.source.values[i] = s;
    allocated += weights[i] * s;
  }
  out.allocated_power = allocated;
  out.lagrange_multiplier = 1.0 / (2.0 * std::numbers::pi * level);
  out.capacity = capacity_ssd(out.source, noise_eq);
  return out;
}

double capacity_ssd(const SpectralDensity& s_j, const SpectralDensity& noise_eq) {
  require_same_grid(s_j.grid, noise_eq.grid, "capacity_ssd");
  if (s_j.values.size() != noise_eq.values.size()) throw ShapeError("capacity_ssd: length mismatch");
  const auto weights = s_j.grid.trapezoid_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < s_j.values.size(); ++i) {
    if (s_j.values[i] < 0.0) throw DomainError("capacity_ssd: source density must be non-negative");
    if (s_j.values[i] == 0.0) continue;
    sum += weights[i] * std::log1p(s_j.values[i] / noise_eq.values[i]);
  }
  return sum / (2.0 * std::numbers::pi);
}

CovarianceAllocation kkt_covariance_allocate(const numerics::HermitianMatrix& k_n, double power_per_sample,
                                             int n_samples) {
  if (!std::isfinite(power_per_sample) || !(power_per_sample > 0.0)) {
    throw DomainError("kkt_covariance_allocate: power per sample must be positive");
  }
  if (n_samples < 1) throw DomainError("kkt_covariance_allocate: sample count must be positive");
  const auto eig = numerics::eigh(k_n);
  const auto dim = static_cast<std::size_t>(k_n.dim());
  std::vector<double> noise(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    noise[i] = eig.values(static_cast<Eigen::Index>(i));
    if (!(noise[i] > 0.0)) throw DomainError("kkt_covariance_allocate: noise covariance is singular");
  }
  const double budget = static_cast<double>(n_samples) * power_per_sample;
  const double level = solve_water_level(noise, std::vector<double>(dim, 1.0), budget);

  CovarianceAllocation out;
  out.water_level = level;
  out.allocation.resize(dim);
  double mi = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double a = noise[i] < level ? level - noise[i] : 0.0;
    out.allocation[i] = a;
    mi += std::log1p(a / noise[i]);
  }
  out.mutual_info = mi;
  out.k_e = numerics::HermitianMatrix::diagonal(out.allocation).congruence(eig.vectors);
  return out;
}

}  // namespace emcap::waterfill
