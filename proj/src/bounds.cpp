// SPDX-License-Identifier: Apache-2.0
#include "emcap/bounds.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "emcap/errors.hpp"
#include "emcap/numerics/linalg.hpp"
#include "emcap/numerics/quadrature.hpp"
#include "emcap/numerics/random.hpp"

namespace emcap::bounds {
namespace {

constexpr int kPsdCheckPoints = 64;
constexpr int kFourierOrder = 3;

void require_psd(const SourceAutocorrelation& r_j) {
  const Interval& support = r_j.support();
  const double h = support.width() / kPsdCheckPoints;
  Eigen::MatrixXcd m(kPsdCheckPoints, kPsdCheckPoints);
  for (int i = 0; i < kPsdCheckPoints; ++i) {
    for (int j = 0; j < kPsdCheckPoints; ++j) {
      m(i, j) = h * r_j(support.lo() + (i + 0.5) * h, support.lo() + (j + 0.5) * h);
    }
  }
  const Eigen::VectorXd values = numerics::eigvalsh(HermitianMatrix(std::move(m), 1e-8));
  if (values(values.size() - 1) < -1e-9 * std::max(values(0), 0.0)) {
    throw DomainError("stationarize: source autocorrelation is not PSD");
  }
}

std::size_t grid_steps(double width, double spacing) {
  const double steps = width / spacing;
  const double rounded = std::round(steps);
  if (rounded < 1.0 || std::abs(steps - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw ShapeError("destination length " + std::to_string(width) +
                     " is not a whole number of source spacings " + std::to_string(spacing));
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

std::complex<double> StationarizedSource::operator()(double lag) const { return autocorrelation(lag); }

SourceAutocorrelation StationarizedSource::as_autocorrelation(Interval support) const {
  return SourceAutocorrelation::stationary(autocorrelation, support);
}

StationarizedSource stationarize(const SourceAutocorrelation& r_j) {
  require_psd(r_j);
  const double lo = r_j.support().lo();
  const double hi = r_j.support().hi();
  const double period = hi - lo;
  StationarizedSource out;
  out.period = period;
  out.autocorrelation = [r_j, lo, hi, period](double lag) -> std::complex<double> {
    if (!(std::abs(lag) < period)) return 0.0;
    const double a = std::max(lo, lo - lag);
    const double b = std::min(hi, hi - lag);
    if (!(a < b)) return 0.0;
    auto integrand = [&](double s) { return r_j(s, s + lag); };
    const double scale = std::abs(r_j(0.5 * (a + b), 0.5 * (a + b) + lag)) + std::abs(r_j(a, a));
    numerics::QuadratureOptions options;
    options.rel_tol = 1e-11;
    try {
      return numerics::integrate(integrand, Interval(a, b), 1e-14 * std::max(scale, 1e-300) * period, {}, options)
                 .value /
             period;
    } catch (const AccuracyError& e) {
      return e.estimate() / period;
    }
  };
  return out;
}

double mi_line_to_line(const PhysicalScene& scene, const SourceAutocorrelation& r_j, Interval dest, double sigma2,
                       std::size_t n) {
  if (n < 1) throw DomainError("mi_line_to_line: need at least one sample");
  const double h = r_j.support().width() / static_cast<double>(n);
  const auto layout = sampled::SamplingLayout::midpoint(r_j.support(), n, dest, grid_steps(dest.width(), h));
  return sampled::mutual_information(sampled::receive_covariance(scene, layout, r_j),
                                     sampled::white_noise_covariance(layout, sigma2));
}

double mi_finite_finite(const PhysicalScene& scene, const SourceAutocorrelation& r_j, double dest_offset,
                        double sigma2, std::size_t n) {
  return mi_line_to_line(scene, r_j, Interval(dest_offset, dest_offset + r_j.support().width()), sigma2, n);
}

HermitianMatrix shift_averaged_covariance(const SourceAutocorrelation& r_j, std::size_t n, int m, int q) {
  if (n < 1 || m < 0 || q < 1) throw DomainError("shift_averaged_covariance: need n >= 1, m >= 0, q >= 1");
  const double lo = r_j.support().lo();
  const double period = r_j.support().width();
  const double h = period / static_cast<double>(n);
  const std::size_t count = (2 * static_cast<std::size_t>(m) + 1) * n;
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = lo + (static_cast<double>(i) - static_cast<double>(static_cast<std::size_t>(m) * n) + 0.5) * h;
  }
  // Independent periods: correlated only when both points fall in the same one.
  auto periodic = [&](double s, double s2) -> std::complex<double> {
    const double ps = std::floor((s - lo) / period);
    const double ps2 = std::floor((s2 - lo) / period);
    if (ps != ps2) return 0.0;
    return r_j(s - ps * period, s2 - ps2 * period);
  };
  const auto dim = static_cast<Eigen::Index>(count);
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(dim, dim);
  for (int t = 0; t < q; ++t) {
    const double theta = period * t / q;
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        r(i, j) += periodic(x[static_cast<std::size_t>(i)] + theta, x[static_cast<std::size_t>(j)] + theta);
      }
    }
  }
  r /= static_cast<double>(q);
  return HermitianMatrix(std::move(r), 1e-9);
}

double mi_virtual_line(const PhysicalScene& scene, const SourceAutocorrelation& r_j, Interval dest, double sigma2,
                       std::size_t n, int m, int q) {
  const double period = r_j.support().width();
  const double h = period / static_cast<double>(n);
  const Interval line(r_j.support().lo() - m * period, r_j.support().hi() + m * period);
  const auto layout = sampled::SamplingLayout::midpoint(line, (2 * static_cast<std::size_t>(m) + 1) * n, dest,
                                                        grid_steps(dest.width(), h));
  const auto k_e = shift_averaged_covariance(r_j, n, m, q).congruence(sampled::transfer_matrix(scene, layout));
  return sampled::mutual_information(k_e, sampled::white_noise_covariance(layout, sigma2));
}

ChainCheck mi_chain_check(const PhysicalScene& scene, const SourceAutocorrelation& r_j, double sigma2,
                          std::size_t n, ChainCheckOptions options) {
  if (n < 16 || n % 2 != 0) throw DomainError("mi_chain_check: need an even grid of at least 16 points");
  if (options.virtual_periods < 3) throw DomainError("mi_chain_check: need at least 3 virtual periods");
  if (options.shift_samples < 8) throw DomainError("mi_chain_check: need at least 8 shift samples");
  const double lo = r_j.support().lo();
  const double period = r_j.support().width();
  const Interval dest_2l(lo - 0.5 * period, lo + 1.5 * period);

  ChainCheck out;
  out.i_LL = mi_finite_finite(scene, r_j, lo, sigma2, n);
  out.i_L2L = mi_line_to_line(scene, r_j, dest_2l, sigma2, n);
  out.i_inf2L = mi_virtual_line(scene, r_j, dest_2l, sigma2, n, options.virtual_periods, options.shift_samples);
  out.i_inf2L_next =
      mi_virtual_line(scene, r_j, dest_2l, sigma2, n, options.virtual_periods + 1, options.shift_samples);
  out.m_stable = std::abs(out.i_inf2L_next - out.i_inf2L) <= 0.01 * out.i_inf2L;
  const double tol = 1e-6 * out.i_LL;
  out.chain_holds = out.i_LL <= out.i_L2L + tol && out.i_L2L <= out.i_inf2L + tol;
  return out;
}

bool entropy_sum_check(const HermitianMatrix& k_x, const HermitianMatrix& k_y, const HermitianMatrix& k_n) {
  if (k_x.dim() != k_y.dim() || k_x.dim() != k_n.dim()) throw ShapeError("entropy_sum_check: dimensions differ");
  const double with_y = numerics::log_det_pd(k_x + k_y + k_n);
  const double without_y = numerics::log_det_pd(k_x + k_n);
  return with_y >= without_y - 1e-10;
}

SourceAutocorrelation random_psd_source(std::uint64_t seed, Interval support) {
  numerics::Rng rng(seed);
  const int rank = 1 + static_cast<int>(rng.next() % 4);
  constexpr int modes = 2 * kFourierOrder + 1;
  std::vector<std::array<std::complex<double>, modes>> coeffs(static_cast<std::size_t>(rank));
  double energy = 0.0;
  for (auto& row : coeffs) {
    for (auto& c : row) {
      c = rng.complex_normal();
      energy += std::norm(c);
    }
  }
  const double scale = 1.0 / energy;
  const double lo = support.lo();
  const double omega = 2.0 * std::numbers::pi / support.width();
  auto profile = [coeffs, lo, omega](std::size_t r, double s) {
    std::complex<double> u = 0.0;
    for (int p = -kFourierOrder; p <= kFourierOrder; ++p) {
      u += coeffs[r][static_cast<std::size_t>(p + kFourierOrder)] * std::polar(1.0, omega * p * (s - lo));
    }
    return u;
  };
  return SourceAutocorrelation::general(
      [profile, rank, scale](double s, double s2) {
        std::complex<double> acc = 0.0;
        for (std::size_t r = 0; r < static_cast<std::size_t>(rank); ++r) acc += profile(r, s) * std::conj(profile(r, s2));
        return scale * acc;
      },
      support);
}

}  // namespace emcap::bounds
