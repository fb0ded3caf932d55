// SPDX-License-Identifier: Apache-2.0
#include "emcap/sampled.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emcap/errors.hpp"
#include "emcap/numerics/parallel.hpp"
#include "emcap/numerics/random.hpp"

namespace emcap::sampled {
namespace {

constexpr double kClipTolerance = 1e-12;
constexpr double kMaxCondition = 1e12;
constexpr double kResolutionTolerance = 0.01;

std::vector<double> midpoints(const Interval& region, std::size_t n) {
  std::vector<double> out(n);
  const double h = region.width() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = region.lo() + (static_cast<double>(i) + 0.5) * h;
  return out;
}

bool covers(const Interval& outer, const Interval& inner) {
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(outer.lo()), std::abs(outer.hi())));
  return inner.lo() >= outer.lo() - slack && inner.hi() <= outer.hi() + slack;
}

// R (x) I3: independent, identically correlated current components.
HermitianMatrix per_component(const HermitianMatrix& r) {
  const Eigen::Index n = r.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(3 * n, 3 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index c = 0; c < 3; ++c) out(3 * a + c, 3 * b + c) = r(a, b);
    }
  }
  return HermitianMatrix(std::move(out));
}

}  // namespace

SamplingLayout SamplingLayout::midpoint(Interval source, std::size_t n_source, Interval dest, std::size_t n_dest,
                                        FieldModel model) {
  if (n_source < 1 || n_dest < 1) throw DomainError("sampling layout needs at least one point per line");
  SamplingLayout out{model, source, dest, midpoints(source, n_source), {}, midpoints(dest, n_dest), {}};
  out.source_weights.assign(n_source, source.width() / static_cast<double>(n_source));
  out.dest_weights.assign(n_dest, dest.width() / static_cast<double>(n_dest));
  return out;
}

void SamplingLayout::validate() const {
  if (source_points.empty() || dest_points.empty()) throw ShapeError("sampling layout has an empty point list");
  if (source_points.size() != source_weights.size() || dest_points.size() != dest_weights.size()) {
    throw ShapeError("sampling layout: point and weight counts differ");
  }
  auto check = [](const std::vector<double>& pts, const std::vector<double>& w, const Interval& region,
                  const char* which) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
        throw DomainError(std::string("sampling layout: non-positive ") + which + " weight");
      }
      if (!region.contains(pts[i])) {
        throw DomainError(std::string("sampling layout: ") + which + " point outside its region");
      }
    }
  };
  check(source_points, source_weights, source_region, "source");
  check(dest_points, dest_weights, dest_region, "destination");
}

SourceAutocorrelation SourceAutocorrelation::stationary(LagFunction r, Interval support) {
  if (!r) throw DomainError("source autocorrelation: empty lag function");
  return SourceAutocorrelation(std::move(r), {}, support);
}

SourceAutocorrelation SourceAutocorrelation::general(PairFunction r, Interval support) {
  if (!r) throw DomainError("source autocorrelation: empty pair function");
  return SourceAutocorrelation({}, std::move(r), support);
}

SourceAutocorrelation SourceAutocorrelation::zero(Interval support) {
  return stationary([](double) { return std::complex<double>(0.0); }, support);
}

std::complex<double> SourceAutocorrelation::operator()(double s, double s2) const {
  return lag_ ? lag_(s2 - s) : pair_(s, s2);
}

void SourceAutocorrelation::check_hermitian(std::uint64_t seed, int pairs) const {
  numerics::Rng rng(seed);
  for (int p = 0; p < pairs; ++p) {
    const double s = rng.uniform(support_.lo(), support_.hi());
    const double s2 = rng.uniform(support_.lo(), support_.hi());
    const std::complex<double> diag = (*this)(s, s);
    const double scale = std::max(std::abs(diag), 1e-300);
    if (diag.real() < 0.0 || std::abs(diag.imag()) > 1e-10 * scale) {
      throw DomainError("source autocorrelation: R(s, s) is not real non-negative");
    }
    const std::complex<double> a = (*this)(s, s2);
    const std::complex<double> b = (*this)(s2, s);
    if (std::abs(a - std::conj(b)) > 1e-10 * std::max({std::abs(a), std::abs(b), scale})) {
      throw DomainError("source autocorrelation is not Hermitian");
    }
  }
}

HermitianMatrix source_covariance(const SamplingLayout& layout, const SourceAutocorrelation& r_j) {
  const auto n = static_cast<Eigen::Index>(layout.source_points.size());
  Eigen::MatrixXcd r(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      r(a, b) = r_j(layout.source_points[static_cast<std::size_t>(a)], layout.source_points[static_cast<std::size_t>(b)]);
    }
  }
  return HermitianMatrix(std::move(r), 1e-9);
}

Eigen::MatrixXcd transfer_matrix(const PhysicalScene& scene, const SamplingLayout& layout) {
  layout.validate();
  const auto nd = layout.dest_points.size();
  const auto ns = layout.source_points.size();
  if (layout.model == FieldModel::scalar_line) {
    Eigen::MatrixXcd t(static_cast<Eigen::Index>(nd), static_cast<Eigen::Index>(ns));
    numerics::parallel_for(nd, [&](std::size_t i) {
      for (std::size_t a = 0; a < ns; ++a) {
        t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) =
            layout.source_weights[a] * green::scalar_kernel(scene, layout.dest_points[i] - layout.source_points[a]);
      }
    });
    return t;
  }
  Eigen::MatrixXcd t(static_cast<Eigen::Index>(3 * nd), static_cast<Eigen::Index>(3 * ns));
  numerics::parallel_for(nd, [&](std::size_t i) {
    for (std::size_t a = 0; a < ns; ++a) {
      const Vec3 p{layout.dest_points[i] - layout.source_points[a], 0.0, scene.distance()};
      t.block<3, 3>(static_cast<Eigen::Index>(3 * i), static_cast<Eigen::Index>(3 * a)) =
          layout.source_weights[a] * green::dyadic_green(scene, p).matrix;
    }
  });
  return t;
}

HermitianMatrix receive_covariance(const PhysicalScene& scene, const SamplingLayout& layout,
                                   const SourceAutocorrelation& r_j) {
  layout.validate();
  if (!covers(r_j.support(), layout.source_region)) {
    throw DomainError("receive_covariance: source region extends beyond the autocorrelation support");
  }
  const Eigen::MatrixXcd t = transfer_matrix(scene, layout);
  const HermitianMatrix r = source_covariance(layout, r_j);
  HermitianMatrix k_e = layout.model == FieldModel::scalar_line ? r.congruence(t) : per_component(r).congruence(t);

  const Eigen::VectorXd values = numerics::eigvalsh(k_e);
  if (values.size() == 0 || values(values.size() - 1) >= 0.0) return k_e;
  const double top = std::max(values(0), 0.0);
  if (values(values.size() - 1) < -kClipTolerance * top) {
    throw DomainError("receive_covariance: field covariance has a negative eigenvalue " +
                      std::to_string(values(values.size() - 1)) + "; source autocorrelation is not PSD");
  }
  auto eig = numerics::eigh(k_e);
  std::vector<double> clipped(static_cast<std::size_t>(eig.values.size()));
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    clipped[static_cast<std::size_t>(k)] = std::max(eig.values(k), 0.0);
  }
  return HermitianMatrix::diagonal(clipped).congruence(eig.vectors);
}

ResolutionCheck check_source_resolution(const PhysicalScene& scene, const SamplingLayout& layout,
                                        const SourceAutocorrelation& r_j) {
  SamplingLayout fine = layout;
  const std::size_t n = 2 * layout.source_points.size();
  fine.source_points = midpoints(layout.source_region, n);
  fine.source_weights.assign(n, layout.source_region.width() / static_cast<double>(n));
  const auto coarse_k = receive_covariance(scene, layout, r_j);
  const auto fine_k = receive_covariance(scene, fine, r_j);
  const double base = coarse_k.dense().norm();
  ResolutionCheck out;
  out.relative_change = base > 0.0 ? (fine_k.dense() - coarse_k.dense()).norm() / base : 0.0;
  out.resolved = out.relative_change <= kResolutionTolerance;
  return out;
}

HermitianMatrix white_noise_covariance(const SamplingLayout& layout, double sigma2) {
  if (!std::isfinite(sigma2) || !(sigma2 > 0.0)) throw DomainError("noise variance must be positive");
  std::vector<double> diag;
  diag.reserve(static_cast<std::size_t>(layout.field_dim()));
  for (double w : layout.dest_weights) {
    if (!(w > 0.0)) throw DomainError("white_noise_covariance: non-positive weight");
    for (int c = 0; c < layout.components(); ++c) diag.push_back(sigma2 / w);
  }
  return HermitianMatrix::diagonal(diag);
}

double mutual_information(const HermitianMatrix& k_e, const HermitianMatrix& k_n) {
  if (k_e.dim() != k_n.dim()) {
    throw ShapeError("mutual_information: K_E is " + std::to_string(k_e.dim()) + "-dimensional, K_N is " +
                     std::to_string(k_n.dim()));
  }
  if (k_n.dim() == 0) return 0.0;
  const double cond = numerics::condition_number(k_n);
  if (!(cond <= kMaxCondition)) {
    throw ConditioningError("mutual_information: noise covariance condition number " + std::to_string(cond) +
                            " exceeds 1e12");
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(k_n.dense());
  if (llt.info() != Eigen::Success) throw DomainError("mutual_information: noise covariance is not PD");
  // L^-1 K_E L^-H
  Eigen::MatrixXcd whitened = llt.matrixL().solve(k_e.dense());
  whitened = llt.matrixL().solve(whitened.adjoint().eval()).eval();
  whitened = 0.5 * (whitened + whitened.adjoint()).eval();
  whitened += Eigen::MatrixXcd::Identity(k_n.dim(), k_n.dim());
  const double value = numerics::log_det_pd(HermitianMatrix(std::move(whitened), 1e-8));
  return std::max(value, 0.0);
}

std::vector<SweepPoint> normalized_capacity_sweep(const PhysicalScene& scene, double region_length,
                                                  const std::vector<double>& densities,
                                                  const SourceAutocorrelation& r_j, double sigma2,
                                                  FieldModel model) {
  if (!std::isfinite(region_length) || !(region_length > 0.0)) {
    throw DomainError("normalized_capacity_sweep: region length must be positive");
  }
  for (std::size_t i = 0; i < densities.size(); ++i) {
    if (!(densities[i] > 0.0) || !std::isfinite(densities[i])) {
      throw DomainError("normalized_capacity_sweep: densities must be positive");
    }
    if (i > 0 && !(densities[i] > densities[i - 1])) {
      throw DomainError("normalized_capacity_sweep: densities must be increasing");
    }
  }
  const Interval source = r_j.support();
  const double center = source.midpoint();
  const Interval dest(center - 0.5 * region_length, center + 0.5 * region_length);

  std::vector<SweepPoint> out;
  for (double density : densities) {
    const auto n_dest = static_cast<std::size_t>(std::max(1.0, std::ceil(density * region_length)));
    auto n_source = static_cast<std::size_t>(std::max(16.0, std::ceil(density * source.width())));
    auto layout = SamplingLayout::midpoint(source, n_source, dest, n_dest, model);
    ResolutionCheck res = check_source_resolution(scene, layout, r_j);
    for (int doubling = 0; doubling < 4 && !res.resolved; ++doubling) {
      n_source *= 2;
      layout = SamplingLayout::midpoint(source, n_source, dest, n_dest, model);
      res = check_source_resolution(scene, layout, r_j);
    }
    const auto k_e = receive_covariance(scene, layout, r_j);
    const auto k_n = white_noise_covariance(layout, sigma2);
    SweepPoint p;
    p.n = n_dest;
    p.mi_nats = mutual_information(k_e, k_n);
    p.mi_per_meter = p.mi_nats / region_length;
    p.source_resolution = res;
    out.push_back(p);
  }
  return out;
}

}  // namespace emcap::sampled
