#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracle_values.hpp"
#include "siss/errors.hpp"
#include "siss/extremal.hpp"
#include "test_util.hpp"

using namespace siss;
using siss::test::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

struct Case {
  Generator gen;
  int k;
};

// The raw Gaussian is left out: its G₀ drops to ~1e-4 of its peak at π, so the
// Fejér side lobes dominate the denominator until n is far beyond 1024.
std::vector<Case> builtin_cases() {
  std::vector<Case> c;
  for (int k = 1; k <= 2; ++k) {
    c.push_back({shannon(), k});
    c.push_back({orthonormalize(gaussian(1.0)), k});
    c.push_back({orthonormalize(bspline(4)), k});
    c.push_back({bspline(3), k});
  }
  c.push_back({orthonormalize(bspline(2)), 1});
  return c;
}

}  // namespace

TEST_SUITE("extremal") {

TEST_CASE("Fejer kernel values") {
  for (double w : {0.0, 0.3, 2.0, -5.0}) CHECK(fejer(0, w) == 1.0);
  for (int n : {1, 5, 64, 1023}) {
    CHECK(fejer(n, 0.0) == n + 1);
    CHECK(fejer(n, 2.0 * kPi) == doctest::Approx(n + 1).epsilon(1e-12));
  }
  CHECK(std::abs(fejer(1, kPi)) < 1e-15);
  CHECK(rel_err(fejer(1, 0.8), 1.0 + std::cos(0.8)) < 1e-14);
  CHECK(fejer(7, 1.1) >= 0.0);
  CHECK_THROWS_AS(fejer(-1, 0.0), InputError);
}

TEST_CASE("Fejer normalization") {
  for (int n : {0, 1, 2, 7, 64, 1023}) {
    QuadratureOptions o;
    o.min_nodes = 16 * (static_cast<std::size_t>(n) + 1);
    const double mean =
        periodic_integral([n](double w) { return fejer(n, w); }, 2.0 * kPi, o).value / (2.0 * kPi);
    CHECK(std::abs(mean - 1.0) < 1e-12);
  }
}

TEST_CASE("order zero averages G_k") {
  for (double c : {0.0, 1.0, kPi, 4.0}) {
    CHECK(rel_err(extremal_ratio(shannon(), 1, Lattice{}, 0, c), oracle::kPiSquaredOverThree) < 1e-9);
  }
  const FejerTrace t = sharpness_trace(shannon(), 1, Lattice{}, std::array<int, 1>{0});
  REQUIRE(t.ratios.size() == 1);
  CHECK(rel_err(t.ratios[0], kPi * kPi / 3.0) < 1e-9);
  CHECK(rel_err(t.gaps[0], 2.0 * kPi * kPi / 3.0) < 1e-9);
}

TEST_CASE("k = 0 on orthonormal generators") {
  for (const Generator& g : {shannon(), orthonormalize(bspline(2)), orthonormalize(gaussian(1.0))}) {
    for (int n : {0, 3, 50}) CHECK(std::abs(extremal_ratio(g, 0, Lattice{}, n, 1.0) - 1.0) < 1e-9);
  }
}

TEST_CASE("Shannon at order 1024 centered at pi") {
  const double r = extremal_ratio(shannon(), 1, Lattice{}, 1024, kPi);
  CHECK(r >= 0.95 * kPi * kPi);
  CHECK(r <= kPi * kPi);
  // regression value recorded at first implementation
  CHECK(std::abs(r - 9.836395959166) < 1e-8);
}

TEST_CASE("ratios stay below the constant and approach it") {
  const std::array<int, 2> orders{8, 1024};
  for (const Case& c : builtin_cases()) {
    CAPTURE(c.gen.name());
    CAPTURE(c.k);
    const FejerTrace t = sharpness_trace(c.gen, c.k, Lattice{}, orders);
    for (double r : t.ratios) CHECK(r <= t.constant * (1.0 + 1e-9));
    CHECK(std::isfinite(t.gaps[0]));
    CHECK(t.gaps[1] <= t.gaps[0]);
    CHECK(t.gaps[1] <= 0.05 * t.constant);
  }
}

TEST_CASE("centering at the argmax beats an offset center") {
  for (const Case& c : builtin_cases()) {
    CAPTURE(c.gen.name());
    const double star = bernstein_constant(c.gen, c.k).argmax[0];
    for (int n : {64, 256}) {
      CHECK(extremal_ratio(c.gen, c.k, Lattice{}, n, star) >=
            extremal_ratio(c.gen, c.k, Lattice{}, n, star + kPi / 2.0));
    }
  }
}

TEST_CASE("raw Gaussian: dominated but slow") {
  const std::array<int, 2> orders{8, 1024};
  const FejerTrace t = sharpness_trace(gaussian(1.0), 1, Lattice{}, orders);
  for (double r : t.ratios) CHECK(r <= t.constant * (1.0 + 1e-9));
  CHECK(t.gaps[1] <= t.gaps[0]);
}

TEST_CASE("linear spline trace") {
  std::vector<int> orders;
  for (int n = 8; n <= 1024; n *= 2) orders.push_back(n);
  const FejerTrace t = sharpness_trace(orthonormalize(bspline(2)), 1, Lattice{}, orders);
  CHECK(std::abs(t.constant - 12.0) < 1e-8);
  CHECK(std::abs(t.center[0] - kPi) < 1e-6);
  for (std::size_t i = 1; i < t.gaps.size(); ++i) CHECK(t.gaps[i] <= t.gaps[i - 1]);
  CHECK(t.gaps.back() <= 0.05 * 12.0);
}

TEST_CASE("non-unit lattice step") {
  // hZ with h = 1/2: Shannon constant stays π², the symbol is Φ_n(h(ω - c)).
  const double r = extremal_ratio(shannon(), 1, Lattice{0.5}, 64, kPi);
  CHECK(r <= kPi * kPi * (1.0 + 1e-9));
  CHECK(r > 0.8 * kPi * kPi);
}

TEST_CASE("tensor kernels") {
  const std::array<Generator, 2> ss{shannon(), shannon()};
  const Generator t = tensorize(ss);
  const std::array<int, 2> k11{1, 1};
  const std::array<double, 2> center{kPi, kPi};
  const double r2 = extremal_ratio_nd(t, k11, 64, center);
  const double r1 = extremal_ratio(shannon(), 1, Lattice{}, 64, kPi);
  CHECK(rel_err(r2, r1 * r1) < 1e-9);

  const FejerTrace tr = sharpness_trace_nd(t, k11, std::array<int, 1>{64});
  CHECK(rel_err(tr.ratios[0], r1 * r1) < 1e-9);
  CHECK(rel_err(tr.constant, std::pow(kPi, 4)) < 1e-10);

  // smooth case: full tensor quadrature agrees with the factorized product
  const std::array<Generator, 2> gg{orthonormalize(gaussian(1.0)), orthonormalize(gaussian(1.0))};
  const Generator tg = tensorize(gg);
  const std::array<double, 2> c2{kPi, 2.0};
  const double fact = extremal_ratio_nd(tg, k11, 4, c2, ExtremalMethod::factorized);
  const double full = extremal_ratio_nd(tg, k11, 4, c2, ExtremalMethod::tensor_quadrature);
  CHECK(rel_err(full, fact) < 1e-9);

  const std::array<int, 1> k1{1};
  CHECK_THROWS_AS(extremal_ratio_nd(t, k1, 4, center), InputError);
}

TEST_CASE("bad input") {
  const std::array<int, 2> unsorted{16, 8};
  CHECK_THROWS_AS(sharpness_trace(shannon(), 1, Lattice{}, unsorted), InputError);
  CHECK_THROWS_AS(sharpness_trace(shannon(), 1, Lattice{}, std::vector<int>{}), InputError);
  CHECK_THROWS_AS(extremal_ratio(shannon(), 1, Lattice{}, -2, 0.0), InputError);
  CHECK_THROWS_AS(extremal_ratio(bspline(1), 1, Lattice{}, 4, 0.0), DivergentSeriesError);
}

}
