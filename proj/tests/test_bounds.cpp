// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "emcap/bounds.hpp"
#include "emcap/errors.hpp"
#include "emcap/green.hpp"
#include "emcap/numerics/linalg.hpp"
#include "emcap/numerics/random.hpp"
#include "oracles.hpp"

using namespace emcap;
using namespace emcap::bounds;

namespace {

SourceAutocorrelation constant_source(Interval support) {
  return SourceAutocorrelation::general([](double, double) { return std::complex<double>(1.0); }, support);
}

SourceAutocorrelation exp_source(Interval support) {
  return SourceAutocorrelation::stationary([](double lag) { return std::complex<double>(std::exp(-2 * std::abs(lag))); },
                                           support);
}

}  // namespace

TEST_SUITE("stationarization") {
  TEST_CASE("constant source gives a triangle") {
    const auto s = stationarize(constant_source(Interval(0, 2)));
    CHECK(s.period == 2.0);
    for (double lag : {0.0, 0.3, 1.0, 1.9, -0.7}) {
      CHECK(std::abs(s(lag) - (1.0 - std::abs(lag) / 2.0)) < 1e-12);
    }
    CHECK(s(2.0) == 0.0);
    CHECK(s(-3.0) == 0.0);
  }

  TEST_CASE("stationary input keeps its lag profile scaled by the overlap") {
    const auto s = stationarize(exp_source(Interval(-1, 1)));
    for (double lag : {0.0, 0.25, 1.5}) {
      CHECK(std::abs(s(lag) - std::exp(-2 * lag) * (1.0 - lag / 2.0)) < 1e-12);
    }
  }

  TEST_CASE("random sources: Hermitian symmetry and PSD Toeplitz sections") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = stationarize(random_psd_source(seed, Interval(0, 1)));
      for (double lag : {0.1, 0.45, 0.8}) CHECK(std::abs(s(-lag) - std::conj(s(lag))) < 1e-12);
      const int n = 40;
      const double h = 3.0 / n;
      Eigen::MatrixXcd t(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) t(i, j) = s((j - i) * h);
      }
      const auto values = numerics::eigvalsh(numerics::HermitianMatrix(t, 1e-9));
      CHECK(values(n - 1) >= -1e-9 * values(0));
    }
  }

  TEST_CASE("rejects a non-PSD autocorrelation") {
    const auto bad = SourceAutocorrelation::general(
        [](double s, double t) { return std::complex<double>(std::cos(5 * (s + t))); }, Interval(0, 1));
    CHECK_THROWS_AS(stationarize(bad), DomainError);
  }

  TEST_CASE("random sources are reproducible and normalized") {
    const Interval support(-0.5, 0.5);
    const auto a = random_psd_source(17, support);
    const auto b = random_psd_source(17, support);
    const auto c = random_psd_source(18, support);
    CHECK(a(0.1, 0.3) == b(0.1, 0.3));
    CHECK(a(0.1, 0.3) != c(0.1, 0.3));
    CHECK_NOTHROW(a.check_hermitian());
    double mean = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
      const double s = support.lo() + (i + 0.5) / n;
      mean += a(s, s).real() / n;
    }
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_SUITE("finite lines") {
  TEST_CASE("MI matches an explicit determinant computation") {
    const PhysicalScene scene(1.0, 0.5);
    const auto r_j = random_psd_source(3, Interval(0, 1));
    const double sigma2 = 10.0;
    const int n = 8;
    const double h = 1.0 / n;
    const double offset = 0.25;
    Eigen::MatrixXcd t(n, n);
    Eigen::MatrixXcd r(n, n);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < n; ++a) {
        t(i, a) = h * green::scalar_kernel(scene, offset + (i + 0.5) * h - (a + 0.5) * h);
        r(i, a) = r_j((i + 0.5) * h, (a + 0.5) * h);
      }
    }
    const Eigen::MatrixXcd k_e = t * r * t.adjoint();
    const Eigen::MatrixXcd k_n = Eigen::MatrixXcd::Identity(n, n) * (sigma2 / h);
    CHECK(mi_finite_finite(scene, r_j, offset, sigma2, n) ==
          doctest::Approx(oracle::mi_by_determinants(k_e, k_n)).epsilon(1e-9));
  }

  TEST_CASE("translating source and destination together changes nothing") {
    const PhysicalScene scene(1.0, 0.5);
    const double a = mi_finite_finite(scene, exp_source(Interval(0, 1)), 0.3, 5.0, 16);
    const double b = mi_finite_finite(scene, exp_source(Interval(7, 8)), 7.3, 5.0, 16);
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
  }

  TEST_CASE("destination must be a whole number of spacings") {
    const PhysicalScene scene(1.0, 0.5);
    CHECK_THROWS_AS(mi_line_to_line(scene, exp_source(Interval(0, 1)), Interval(0, 1.05), 1.0, 16), ShapeError);
  }
}

TEST_SUITE("virtual line") {
  TEST_CASE("grid-aligned shift averaging is exactly Toeplitz") {
    const auto r_j = random_psd_source(5, Interval(0, 1));
    const std::size_t n = 12;
    const auto k = shift_averaged_covariance(r_j, n, 2, static_cast<int>(n));
    const auto dim = k.dim();
    CHECK(dim == 60);
    double scale = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) scale = std::max(scale, std::abs(k(i, i)));
    for (Eigen::Index i = 1; i < dim; ++i) {
      for (Eigen::Index j = 1; j < dim; ++j) CHECK(std::abs(k(i, j) - k(i - 1, j - 1)) < 1e-9 * scale);
    }
    const auto values = numerics::eigvalsh(k);
    CHECK(values(dim - 1) >= -1e-10 * values(0));
  }

  TEST_CASE("samples in different periods are uncorrelated without shifts") {
    const auto r_j = constant_source(Interval(0, 1));
    const auto k = shift_averaged_covariance(r_j, 4, 1, 1);
    CHECK(k(0, 3) == 1.0);
    CHECK(k(0, 4) == 0.0);
    CHECK(k(5, 11) == 0.0);
  }
}

TEST_SUITE("information chain") {
  TEST_CASE("holds on seeded random sources") {
    const PhysicalScene scene(1.0, 0.5);
    for (std::uint64_t trial = 0; trial < 6; ++trial) {
      const auto r_j = random_psd_source(numerics::mix_seed(trial), Interval(0, 1));
      const auto c = mi_chain_check(scene, r_j, 1000.0, 16, {4, 16});
      INFO("trial " << trial << ": " << c.i_LL << " " << c.i_L2L << " " << c.i_inf2L);
      CHECK(c.chain_holds);
      CHECK(c.m_stable);
      CHECK(c.i_LL > 0.0);
      CHECK(c.i_L2L >= c.i_LL);
    }
  }

  TEST_CASE("every length-L window inside the 2L destination carries at most i_L2L") {
    const PhysicalScene scene(1.0, 0.5);
    const auto r_j = random_psd_source(21, Interval(0, 1));
    const auto c = mi_chain_check(scene, r_j, 1000.0, 16);
    for (int k = 0; k <= 16; ++k) {
      const double offset = -0.5 + k / 16.0;
      CHECK(mi_finite_finite(scene, r_j, offset, 1000.0, 16) <= c.i_L2L * (1 + 1e-9));
    }
  }

  TEST_CASE("argument validation") {
    const PhysicalScene scene(1.0, 0.5);
    const auto r_j = exp_source(Interval(0, 1));
    CHECK_THROWS_AS(mi_chain_check(scene, r_j, 1.0, 15), DomainError);
    CHECK_THROWS_AS(mi_chain_check(scene, r_j, 1.0, 8), DomainError);
    CHECK_THROWS_AS(mi_chain_check(scene, r_j, 1.0, 16, {2, 16}), DomainError);
    CHECK_THROWS_AS(mi_chain_check(scene, r_j, 1.0, 16, {4, 4}), DomainError);
  }
}

TEST_CASE("adding a PSD term never lowers the entropy") {
  numerics::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const numerics::HermitianMatrix x(oracle::random_psd(rng, 8, 1 + trial % 8));
    const numerics::HermitianMatrix y(oracle::random_psd(rng, 8, 1 + trial % 3));
    const numerics::HermitianMatrix n(oracle::random_psd(rng, 8, 8) + Eigen::MatrixXcd::Identity(8, 8));
    CHECK(entropy_sum_check(x, y, n));
  }
  const auto id = numerics::HermitianMatrix::identity(3);
  CHECK_FALSE(entropy_sum_check(id, id.scaled(-0.5), id));
  CHECK_THROWS_AS(entropy_sum_check(id, numerics::HermitianMatrix::identity(2), id), ShapeError);
}
