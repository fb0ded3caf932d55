// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "emcap/errors.hpp"
#include "emcap/numerics/random.hpp"
#include "emcap/spectrum.hpp"
#include "emcap/waterfill.hpp"
#include "oracles.hpp"

using namespace emcap;
using namespace emcap::waterfill;
using spectrum::WavenumberGrid;

namespace {

constexpr double kPi = std::numbers::pi;

double total_weight(const WavenumberGrid& g) {
  double s = 0.0;
  for (double w : g.trapezoid_weights()) s += w;
  return s;
}

// Two-level noise: `low` on |kappa| < 1, `high` elsewhere.
SpectralDensity two_level(const WavenumberGrid& g, double low, double high) {
  SpectralDensity s{g, {}};
  for (double k : g.nodes()) s.values.push_back(std::abs(k) < 1.0 ? low : high);
  return s;
}

void check_kkt(const SpectralDensity& noise, const WaterfillResult& r, double power) {
  const double level = r.water_level;
  for (std::size_t i = 0; i < noise.values.size(); ++i) {
    const double s = r.source.values[i];
    CHECK(s >= 0.0);
    if (s > 0.0) {
      CHECK(std::abs(noise.values[i] + s - level) <= 1e-10 * level);
    } else {
      CHECK(noise.values[i] >= level * (1.0 - 1e-10));
    }
  }
  CHECK(std::abs(r.allocated_power - power) <= 1e-9 * power);
  CHECK(r.lagrange_multiplier == doctest::Approx(1.0 / (2.0 * kPi * level)));
}

}  // namespace

TEST_SUITE("spectral water-filling") {
  TEST_CASE("flat noise spreads power uniformly") {
    const auto grid = WavenumberGrid::centered(200, 0.05);
    const SpectralDensity noise{grid, std::vector<double>(grid.size(), 2.0)};
    const double power = 3.0;
    const auto r = waterfill_ssd(noise, power);
    const double width = total_weight(grid);
    for (double s : r.source.values) CHECK(s == doctest::Approx(power / width).epsilon(1e-12));
    CHECK(r.capacity == doctest::Approx(width / (2 * kPi) * std::log1p(power / (width * 2.0))).epsilon(1e-12));
    check_kkt(noise, r, power);
  }

  TEST_CASE("two-level noise closed form") {
    const auto grid = WavenumberGrid::centered(400, 0.025);
    const double low = 1.0;
    const double high = 3.0;
    const auto noise = two_level(grid, low, high);
    double w_low = 0.0;
    double w_high = 0.0;
    const auto w = grid.trapezoid_weights();
    for (std::size_t i = 0; i < w.size(); ++i) (std::abs(grid[i]) < 1.0 ? w_low : w_high) += w[i];

    // Below the step only the quiet band is filled.
    const double small = 0.5 * (high - low) * w_low;
    auto r = waterfill_ssd(noise, small);
    CHECK(r.water_level == doctest::Approx(low + small / w_low).epsilon(1e-12));
    CHECK(r.capacity == doctest::Approx(w_low / (2 * kPi) * std::log(r.water_level / low)).epsilon(1e-10));
    check_kkt(noise, r, small);

    const double large = 4.0 * (high - low) * w_low;
    r = waterfill_ssd(noise, large);
    const double level = (large + low * w_low + high * w_high) / (w_low + w_high);
    CHECK(r.water_level == doctest::Approx(level).epsilon(1e-12));
    const double cap = (w_low * std::log(level / low) + w_high * std::log(level / high)) / (2 * kPi);
    CHECK(r.capacity == doctest::Approx(cap).epsilon(1e-10));
    check_kkt(noise, r, large);
  }

  TEST_CASE("random noise: KKT certificate and optimality under perturbation") {
    numerics::Rng rng(7);
    const auto grid = WavenumberGrid::centered(256, 0.1);
    for (int trial = 0; trial < 10; ++trial) {
      SpectralDensity noise{grid, {}};
      for (std::size_t i = 0; i < grid.size(); ++i) noise.values.push_back(0.1 + 5.0 * rng.uniform());
      const double power = 0.5 + 20.0 * rng.uniform();
      const auto r = waterfill_ssd(noise, power);
      check_kkt(noise, r, power);
      CHECK(capacity_ssd(r.source, noise) == doctest::Approx(r.capacity).epsilon(1e-12));

      // Moving power between bins at fixed total never helps.
      const auto w = grid.trapezoid_weights();
      for (int p = 0; p < 10; ++p) {
        auto alt = r.source;
        const auto from = static_cast<std::size_t>(rng.uniform() * grid.size());
        const auto to = static_cast<std::size_t>(rng.uniform() * grid.size());
        if (from == to || alt.values[from] == 0.0) continue;
        const double mass = rng.uniform() * alt.values[from] * w[from];
        alt.values[from] -= mass / w[from];
        alt.values[to] += mass / w[to];
        CHECK(capacity_ssd(alt, noise) <= r.capacity + 1e-12);
      }
    }
  }

  TEST_CASE("capacity grows with power and the support is nested") {
    const auto grid = WavenumberGrid::centered(300, 0.05);
    SpectralDensity noise{grid, {}};
    for (double k : grid.nodes()) noise.values.push_back(1.0 + k * k);
    double prev_cap = 0.0;
    std::size_t prev_support = 0;
    for (double p : {1e-4, 1e-2, 1.0, 10.0, 100.0}) {
      const auto r = waterfill_ssd(noise, p);
      std::size_t support = 0;
      for (double s : r.source.values) support += s > 0.0;
      CHECK(r.capacity > prev_cap);
      CHECK(support >= prev_support);
      CHECK(support >= 1);
      prev_cap = r.capacity;
      prev_support = support;
    }
  }

  TEST_CASE("infinite bins receive nothing") {
    const auto grid = WavenumberGrid::centered(20, 0.5);
    SpectralDensity noise{grid, std::vector<double>(20, 1.0)};
    noise.values[3] = std::numeric_limits<double>::infinity();
    const auto r = waterfill_ssd(noise, 2.0);
    CHECK(r.source.values[3] == 0.0);
    CHECK(std::isfinite(r.capacity));
  }

  TEST_CASE("equivalent noise refers receiver noise through the transfer spectrum") {
    const auto grid = WavenumberGrid::centered(4, 1.0);
    const spectrum::TransferSpectrum g{grid, {{0.0, 2.0}, 1.0, 1e-20, {3.0, 4.0}}};
    const auto eq = equivalent_noise(NoiseModel::white(4.0), g);
    CHECK(eq.values[0] == doctest::Approx(4.0 / (2 * kPi * 4.0)));
    CHECK(eq.values[1] == doctest::Approx(4.0 / (2 * kPi)));
    CHECK(std::isinf(eq.values[2]));
    CHECK(eq.values[3] == doctest::Approx(4.0 / (2 * kPi * 25.0)));

    const SpectralDensity table{grid, {1.0, 2.0, 3.0, 4.0}};
    CHECK(NoiseModel::tabulated(table).on(grid).values == table.values);
    CHECK_THROWS_AS(NoiseModel::tabulated(table).on(WavenumberGrid::centered(4, 0.5)), ShapeError);
  }

  TEST_CASE("input validation") {
    const auto grid = WavenumberGrid::centered(4, 1.0);
    const SpectralDensity noise{grid, {1.0, 1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(waterfill_ssd(noise, 0.0), DomainError);
    CHECK_THROWS_AS(waterfill_ssd(noise, -1.0), DomainError);
    CHECK_THROWS_AS(NoiseModel::white(0.0), DomainError);
    CHECK_THROWS_AS(NoiseModel::tabulated({grid, {1.0, 0.0, 1.0, 1.0}}), DomainError);
    const SpectralDensity other{WavenumberGrid::centered(4, 0.5), {1.0, 1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(capacity_ssd(other, noise), ShapeError);
    CHECK_THROWS_AS(capacity_ssd({grid, {1.0, -1.0, 0.0, 0.0}}, noise), DomainError);
  }
}

TEST_SUITE("covariance allocation") {
  TEST_CASE("white noise covariance") {
    const auto k_n = numerics::HermitianMatrix::identity(4).scaled(2.0);
    const auto r = kkt_covariance_allocate(k_n, 1.5, 4);
    for (double a : r.allocation) CHECK(a == doctest::Approx(1.5));
    CHECK(r.water_level == doctest::Approx(3.5));
    CHECK(r.mutual_info == doctest::Approx(4.0 * std::log(1.75)));
    CHECK(std::abs(r.k_e.dense().trace().real() - 6.0) < 1e-12);
  }

  TEST_CASE("two eigenvalues with one left dry") {
    const auto k_n = numerics::HermitianMatrix::diagonal({1.0, 4.0});
    const auto r = kkt_covariance_allocate(k_n, 0.5, 2);
    CHECK(r.water_level == doctest::Approx(2.0));
    CHECK(r.mutual_info == doctest::Approx(std::log(2.0)));
    CHECK(r.k_e(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(r.k_e(1, 1)) < 1e-14);
  }

  TEST_CASE("mutual information matches determinants for random noise") {
    numerics::Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::MatrixXcd k_n = oracle::random_psd(rng, 6, 6) + 0.1 * Eigen::MatrixXcd::Identity(6, 6);
      const auto r = kkt_covariance_allocate(numerics::HermitianMatrix(k_n), 0.7, 6);
      CHECK(r.mutual_info == doctest::Approx(oracle::mi_by_determinants(r.k_e.dense(), k_n)).epsilon(1e-9));
      CHECK(std::abs(r.k_e.dense().trace().real() - 4.2) < 1e-10);
      CHECK(numerics::eigvalsh(r.k_e)(5) >= -1e-12);
    }
  }

  TEST_CASE("sampled stationary noise approaches the spectral water-filling rate") {
    const int n = 256;
    const double sigma2 = 1.0;
    const double rho = 0.8;
    const double white = 0.1;
    const double p0 = 1.0;
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) k(i, j) = sigma2 * std::pow(rho, std::abs(i - j)) + (i == j ? white : 0.0);
    }
    const auto alloc = kkt_covariance_allocate(numerics::HermitianMatrix(k.cast<std::complex<double>>()), p0, n);

    const auto grid = WavenumberGrid::centered(4096, 2 * kPi / 4096);
    SpectralDensity phi{grid, {}};
    for (double w : grid.nodes()) {
      phi.values.push_back(sigma2 * (1 - rho * rho) / (1 - 2 * rho * std::cos(w) + rho * rho) + white);
    }
    const auto ssd = waterfill_ssd(phi, 2 * kPi * p0);
    CHECK(alloc.mutual_info / n == doctest::Approx(ssd.capacity).epsilon(0.05));
  }

  TEST_CASE("input validation") {
    const auto id = numerics::HermitianMatrix::identity(2);
    CHECK_THROWS_AS(kkt_covariance_allocate(id, 0.0, 2), DomainError);
    CHECK_THROWS_AS(kkt_covariance_allocate(id, 1.0, 0), DomainError);
    CHECK_THROWS_AS(kkt_covariance_allocate(numerics::HermitianMatrix::diagonal({1.0, 0.0}), 1.0, 2), DomainError);
  }
}
