// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "emcap/errors.hpp"
#include "emcap/green.hpp"
#include "emcap/numerics/random.hpp"
#include "emcap/sampled.hpp"
#include "emcap/spectrum.hpp"
#include "emcap/waterfill.hpp"
#include "oracles.hpp"

using namespace emcap;
using namespace emcap::sampled;

namespace {

constexpr double kPi = std::numbers::pi;

SourceAutocorrelation exp_source(double length) {
  return SourceAutocorrelation::stationary([](double lag) { return std::complex<double>(std::exp(-std::abs(lag))); },
                                           Interval(-length / 2, length / 2));
}

SamplingLayout explicit_layout(std::vector<double> src, std::vector<double> dst) {
  SamplingLayout l;
  l.source_region = Interval(-1, 1);
  l.dest_region = Interval(-10, 10);
  l.source_weights.assign(src.size(), 0.25);
  l.dest_weights.assign(dst.size(), 0.25);
  l.source_points = std::move(src);
  l.dest_points = std::move(dst);
  return l;
}

}  // namespace

TEST_SUITE("layout") {
  TEST_CASE("midpoint layout") {
    const auto l = SamplingLayout::midpoint(Interval(0, 2), 4, Interval(-1, 1), 2);
    CHECK(l.source_points == std::vector<double>{0.25, 0.75, 1.25, 1.75});
    CHECK(l.source_weights == std::vector<double>(4, 0.5));
    CHECK(l.dest_points == std::vector<double>{-0.5, 0.5});
    CHECK(l.field_dim() == 2);
    CHECK_NOTHROW(l.validate());
    const auto d = SamplingLayout::midpoint(Interval(0, 2), 4, Interval(-1, 1), 2, FieldModel::dyadic_3d);
    CHECK(d.field_dim() == 6);
  }

  TEST_CASE("validation") {
    auto l = SamplingLayout::midpoint(Interval(0, 1), 3, Interval(0, 1), 3);
    l.source_weights.pop_back();
    CHECK_THROWS_AS(l.validate(), ShapeError);
    l = SamplingLayout::midpoint(Interval(0, 1), 3, Interval(0, 1), 3);
    l.dest_points[0] = 2.0;
    CHECK_THROWS_AS(l.validate(), DomainError);
    l = SamplingLayout::midpoint(Interval(0, 1), 3, Interval(0, 1), 3);
    l.dest_weights[1] = 0.0;
    CHECK_THROWS_AS(l.validate(), DomainError);
    CHECK_THROWS_AS(SamplingLayout::midpoint(Interval(0, 1), 0, Interval(0, 1), 3), DomainError);
  }

  TEST_CASE("autocorrelation checks") {
    CHECK_NOTHROW(exp_source(4.0).check_hermitian());
    const auto bad = SourceAutocorrelation::general(
        [](double s, double t) { return std::complex<double>(0.0, s - 2 * t + 0.1); }, Interval(0, 1));
    CHECK_THROWS_AS(bad.check_hermitian(), DomainError);
    CHECK(exp_source(1.0).is_stationary());
    CHECK_FALSE(bad.is_stationary());
    CHECK(exp_source(4.0)(0.0, 1.0) == std::exp(-1.0));
    const auto z = SourceAutocorrelation::zero(Interval(0, 1));
    CHECK(z(0.2, 0.7) == 0.0);
  }
}

TEST_SUITE("field covariance") {
  TEST_CASE("zero source gives zero field and zero information") {
    const PhysicalScene scene(1.0, 1.0);
    const auto l = SamplingLayout::midpoint(Interval(0, 1), 8, Interval(0, 1), 5);
    const auto k_e = receive_covariance(scene, l, SourceAutocorrelation::zero(Interval(0, 1)));
    CHECK(k_e.dense().norm() == 0.0);
    CHECK(mutual_information(k_e, white_noise_covariance(l, 1.0)) == 0.0);
  }

  TEST_CASE("single source and receiver point") {
    const PhysicalScene scene(2.0, 0.7);
    auto l = explicit_layout({0.3}, {1.1});
    const auto k_e = receive_covariance(scene, l, exp_source(4.0));
    const double want = std::norm(0.25 * green::scalar_kernel(scene, 0.8));
    CHECK(k_e(0, 0).real() == doctest::Approx(want).epsilon(1e-13));
  }

  TEST_CASE("matches a direct triple sum") {
    const PhysicalScene scene(1.0, 0.5);
    numerics::Rng rng(2);
    std::vector<double> src;
    std::vector<double> dst;
    for (int i = 0; i < 8; ++i) src.push_back(rng.uniform(-1.0, 1.0));
    for (int i = 0; i < 5; ++i) dst.push_back(rng.uniform(-1.5, 1.5));
    const auto l = explicit_layout(src, dst);
    const auto r_j = SourceAutocorrelation::general(
        [](double s, double t) {
          return std::exp(-(s - t) * (s - t)) * std::exp(std::complex<double>(0.0, 0.3 * (s - t)));
        },
        Interval(-2, 2));
    const auto k_e = receive_covariance(scene, l, r_j);
    for (int i = 0; i < 5; ++i) {
      for (int k = 0; k < 5; ++k) {
        std::complex<double> acc = 0.0;
        for (int a = 0; a < 8; ++a) {
          for (int b = 0; b < 8; ++b) {
            acc += 0.25 * green::scalar_kernel(scene, dst[i] - src[a]) * r_j(src[a], src[b]) *
                   std::conj(0.25 * green::scalar_kernel(scene, dst[k] - src[b]));
          }
        }
        CHECK(std::abs(k_e(i, k) - acc) <= 1e-9 * std::abs(k_e(0, 0)));
      }
    }
  }

  TEST_CASE("dyadic model blocks") {
    const PhysicalScene scene(1.0, 1.0);
    const auto l = SamplingLayout::midpoint(Interval(-1, 1), 12, Interval(-1, 1), 4, FieldModel::dyadic_3d);
    const auto t = transfer_matrix(scene, l);
    CHECK(t.rows() == 12);
    CHECK(t.cols() == 36);
    // Lines are in the xz plane, so y never mixes with x or z.
    for (int i = 0; i < 4; ++i) {
      for (int a = 0; a < 12; ++a) {
        CHECK(std::abs(t(3 * i + 1, 3 * a)) == 0.0);
        CHECK(std::abs(t(3 * i, 3 * a + 1)) == 0.0);
      }
    }
    const auto k_e = receive_covariance(scene, l, exp_source(2.0));
    CHECK(k_e.dim() == 12);
    CHECK(numerics::eigvalsh(k_e)(11) >= -1e-12 * numerics::eigvalsh(k_e)(0));
    const auto k_n = white_noise_covariance(l, 1.0);
    CHECK(k_n.dim() == 12);
    CHECK(mutual_information(k_e, k_n) > 0.0);
  }

  TEST_CASE("uncovered source region is rejected") {
    const PhysicalScene scene(1.0, 1.0);
    const auto l = SamplingLayout::midpoint(Interval(0, 3), 8, Interval(0, 1), 2);
    CHECK_THROWS_AS(receive_covariance(scene, l, exp_source(2.0)), DomainError);
  }

  TEST_CASE("resolution check detects refinement") {
    const PhysicalScene scene(1.0, 0.5);
    const auto coarse = SamplingLayout::midpoint(Interval(-1, 1), 4, Interval(-1, 1), 8);
    const auto fine = SamplingLayout::midpoint(Interval(-1, 1), 128, Interval(-1, 1), 8);
    const auto r_j = exp_source(2.0);
    const auto a = check_source_resolution(scene, coarse, r_j);
    const auto b = check_source_resolution(scene, fine, r_j);
    CHECK(b.relative_change < a.relative_change);
    CHECK(b.resolved);
    CHECK_FALSE(a.resolved);
  }
}

TEST_SUITE("mutual information") {
  TEST_CASE("agrees with the determinant formula") {
    numerics::Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::MatrixXcd k_e = oracle::random_psd(rng, 6, 1 + trial % 6);
      const Eigen::MatrixXcd k_n = oracle::random_psd(rng, 6, 6) + 0.5 * Eigen::MatrixXcd::Identity(6, 6);
      const double mi = mutual_information(HermitianMatrix(k_e), HermitianMatrix(k_n));
      CHECK(mi == doctest::Approx(oracle::mi_by_determinants(k_e, k_n)).epsilon(1e-9));
      CHECK(mi >= 0.0);
    }
  }

  TEST_CASE("is invariant under a common unitary change of basis") {
    numerics::Rng rng(4);
    const Eigen::MatrixXcd k_e = oracle::random_psd(rng, 5, 3);
    const Eigen::MatrixXcd k_n = oracle::random_psd(rng, 5, 5) + Eigen::MatrixXcd::Identity(5, 5);
    Eigen::MatrixXcd a(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) a(i, j) = rng.complex_normal();
    }
    const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();
    const double base = mutual_information(HermitianMatrix(k_e), HermitianMatrix(k_n));
    const double rotated =
        mutual_information(HermitianMatrix(k_e).congruence(u), HermitianMatrix(k_n).congruence(u));
    CHECK(rotated == doctest::Approx(base).epsilon(1e-10));
  }

  TEST_CASE("adding a receiver never loses information") {
    const PhysicalScene scene(1.0, 0.5);
    const auto r_j = exp_source(2.0);
    std::vector<double> src;
    for (int i = 0; i < 16; ++i) src.push_back(-0.9375 + 0.125 * i);
    std::vector<double> dst;
    double prev = 0.0;
    numerics::Rng rng(12);
    for (int n = 0; n < 10; ++n) {
      dst.push_back(rng.uniform(-2.0, 2.0));
      const auto l = explicit_layout(src, dst);
      const double mi = mutual_information(receive_covariance(scene, l, r_j), white_noise_covariance(l, 1.0));
      CHECK(mi >= prev - 1e-12);
      prev = mi;
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(mutual_information(HermitianMatrix::identity(2), HermitianMatrix::identity(3)), ShapeError);
    CHECK_THROWS_AS(mutual_information(HermitianMatrix::identity(2), HermitianMatrix::diagonal({1.0, 1e-13})),
                    ConditioningError);
    const auto l = SamplingLayout::midpoint(Interval(0, 1), 2, Interval(0, 1), 2);
    CHECK_THROWS_AS(white_noise_covariance(l, 0.0), DomainError);
  }
}

TEST_SUITE("capacity sweep") {
  TEST_CASE("MI per meter approaches the spectral capacity of the same source") {
    const PhysicalScene scene(5.0, 1.0);
    const double sigma2 = 1.0;
    const auto sweep = normalized_capacity_sweep(scene, 20.0, {2.0, 4.0, 8.0}, exp_source(40.0), sigma2);
    REQUIRE(sweep.size() == 3);

    const auto grid = spectrum::WavenumberGrid::for_scene(scene);
    const auto g = spectrum::green_spectrum(scene, grid);
    spectrum::SpectralDensity s_j{grid, {}};
    for (double k : grid.nodes()) s_j.values.push_back(2.0 / (1.0 + k * k) / std::sqrt(2 * kPi));
    const auto noise = waterfill::equivalent_noise(waterfill::NoiseModel::white(sigma2 / std::sqrt(2 * kPi)), g);
    const double ssd = waterfill::capacity_ssd(s_j, noise);

    for (const auto& p : sweep) {
      INFO("n = " << p.n);
      CHECK(p.source_resolution.resolved);
      CHECK(p.mi_per_meter == doctest::Approx(ssd).epsilon(0.10));
      CHECK(p.mi_per_meter == doctest::Approx(p.mi_nats / 20.0));
    }
    // Sampling density changes the estimate by only a few percent once resolved.
    CHECK(std::abs(sweep[2].mi_per_meter - sweep[1].mi_per_meter) < 0.03 * sweep[1].mi_per_meter);
  }

  TEST_CASE("invalid sweeps") {
    const PhysicalScene scene(1.0, 1.0);
    CHECK_THROWS_AS(normalized_capacity_sweep(scene, 0.0, {1.0}, exp_source(4.0), 1.0), DomainError);
    CHECK_THROWS_AS(normalized_capacity_sweep(scene, 1.0, {2.0, 1.0}, exp_source(4.0), 1.0), DomainError);
    CHECK_THROWS_AS(normalized_capacity_sweep(scene, 1.0, {-1.0}, exp_source(4.0), 1.0), DomainError);
  }
}
