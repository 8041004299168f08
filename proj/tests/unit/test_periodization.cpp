#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracle_values.hpp"
#include "siss/errors.hpp"
#include "siss/generators.hpp"
#include "siss/periodization.hpp"
#include "siss/summation.hpp"
#include "test_util.hpp"

using namespace siss;
using siss::test::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

struct Case {
  Generator gen;
  int k;
  double step;
};

std::vector<Case> finite_cases() {
  return {
      {shannon(), 1, 1.0},
      {shannon(), 3, 0.5},
      {bspline(2), 0, 1.0},
      {bspline(2), 1, 1.0},
      {bspline(4), 2, 1.0},
      {bspline(3), 1, 0.7},
      {gaussian(1.0), 2, 1.0},
      {gaussian(0.4), 1, 2.0},
      {orthonormalize(bspline(2)), 1, 1.0},
      {orthonormalize(bspline(4)), 3, 1.0},
      {orthonormalize(gaussian(1.0)), 2, 1.0},
      {dilate(bspline(3), 1.3), 1, 1.0},
      {dilate(shannon(), 2.0), 2, 1.0},
  };
}

}  // namespace

TEST_SUITE("periodization") {

TEST_CASE("Shannon inside one period") {
  const PeriodizationValue v = bracket(shannon(), 1, kPi / 2.0);
  CHECK(rel_err(v.value, kPi * kPi / 4.0) < 1e-15);
  CHECK(v.tail_bound == 0.0);
  CHECK(bracket(shannon(), 0, 0.3).value == 1.0);
  CHECK(bracket(shannon(), 0, kPi).value == 1.0);
  // ω = 3π/2 sees the lattice point ω - 2π = -π/2
  CHECK(rel_err(bracket(shannon(), 1, 1.5 * kPi).value, kPi * kPi / 4.0) < 1e-15);
}

TEST_CASE("raw linear B-spline, k = 1 at pi") {
  const PeriodizationValue v = bracket(bspline(2), 1, kPi);
  CHECK(std::abs(v.value - 4.0) <= 4e-15 + v.tail_bound);
  CHECK(v.value <= 4.0 + 1e-14);
  CHECK(v.value + v.tail_bound >= 4.0 - 1e-14);
}

TEST_CASE("brute-force partial sum oracle at 10^6 terms") {
  // C++ evaluation of the same truncated sum as the Python oracle.
  CompensatedSum s;
  const Generator g = bspline(2);
  for (long l = -1000000; l <= 1000000; ++l) {
    const double x = kPi + 2.0 * kPi * static_cast<double>(l);
    s.add(x * x * g.spectrum(x));
  }
  CHECK(std::abs(s.value() - oracle::kRawSpline2PartialSum) < 1e-12);
  // The certified value sits above every partial sum and within the bound of 4.
  CHECK(bracket(g, 1, kPi).value > s.value());
}

TEST_CASE("G0 of the raw linear B-spline") {
  for (double w : {0.0, 0.5, 2.0, kPi, 5.0}) {
    const double s2 = std::pow(std::sin(w / 2.0), 2);
    CHECK(rel_err(bracket(bspline(2), 0, w).value, 1.0 - 2.0 / 3.0 * s2) < 1e-13);
  }
}

TEST_CASE("orthonormalized generators have G0 = 1") {
  for (const Generator& g : {orthonormalize(bspline(2)), orthonormalize(bspline(5)),
                             orthonormalize(gaussian(1.0))}) {
    for (int j = 0; j < 64; ++j) {
      CHECK(std::abs(bracket(g, 0, 2.0 * kPi * j / 64.0).value - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("Gaussian G0 at zero") {
  CHECK(rel_err(bracket(gaussian(1.0), 0, 0.0).value, oracle::kGaussianG0AtZero) < 1e-15);
}

TEST_CASE("divergent sums are detected") {
  CHECK_THROWS_AS(bracket(bspline(1), 1, 0.5), DivergentSeriesError);
  CHECK_THROWS_AS(bracket(bspline(1), 1, kPi), DivergentSeriesError);
  CHECK_THROWS_AS(bracket(bspline(2), 2, 1.0), DivergentSeriesError);
  CHECK_THROWS_AS(bracket(orthonormalize(bspline(2)), 2, 1.0), DivergentSeriesError);
  CHECK_THROWS_AS(require_finite(bspline(3), 3), DivergentSeriesError);
  CHECK_NOTHROW(require_finite(bspline(3), 2));
  try {
    bracket(bspline(1), 1, 0.5);
  } catch (const DivergentSeriesError& e) {
    CHECK(std::string(e.what()).find("2p - 2k") != std::string::npos);
  }
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(bracket(shannon(), -1, 0.0), InputError);
  CHECK_THROWS_AS(bracket(shannon(), 1, 0.0, Lattice{0.0}), InputError);
  CHECK_THROWS_AS(bracket(shannon(), 1, 0.0, Lattice{-1.0}), InputError);
  CHECK_THROWS_AS(bracket(shannon(), 1, std::nan("")), InputError);
  CHECK_THROWS_AS(bracket(shannon(), 1, 0.0, Lattice{}, 0.0), InputError);
}

TEST_CASE("bracketing: a tighter tolerance stays inside the bracket") {
  std::mt19937_64 rng(5);
  for (const Case& c : finite_cases()) {
    CAPTURE(c.gen.name());
    CAPTURE(c.k);
    const double period = 2.0 * kPi / c.step;
    std::uniform_real_distribution<double> u(0.0, period);
    for (int i = 0; i < 8; ++i) {
      const double w = u(rng);
      const PeriodizationValue v = bracket(c.gen, c.k, w, Lattice{c.step}, 1e-8);
      const PeriodizationValue fine = bracket(c.gen, c.k, w, Lattice{c.step}, 1e-10);
      const double slack = 1e-14 * std::max(1.0, v.value);
      CHECK(v.value >= 0.0);
      CHECK(v.tail_bound >= 0.0);
      CHECK(fine.value >= v.value - slack);
      CHECK(fine.value <= v.value + v.tail_bound + slack);
    }
  }
}

TEST_CASE("periodicity and symmetry") {
  for (const Case& c : finite_cases()) {
    CAPTURE(c.gen.name());
    const double period = 2.0 * kPi / c.step;
    for (int i = 1; i < 16; ++i) {
      // away from the Shannon band edges, where G_k jumps
      const double w = period * (i + 0.37) / 17.0;
      const double v = bracket(c.gen, c.k, w, Lattice{c.step}).value;
      CHECK(rel_err(bracket(c.gen, c.k, w + period, Lattice{c.step}).value, v) < 1e-12);
      CHECK(rel_err(bracket(c.gen, c.k, w - 3.0 * period, Lattice{c.step}).value, v) < 1e-12);
      CHECK(rel_err(bracket(c.gen, c.k, period - w, Lattice{c.step}).value, v) < 1e-12);
    }
  }
}

TEST_CASE("tensor brackets") {
  const std::array<Generator, 2> ss{shannon(), shannon()};
  const Generator t = tensorize(ss);
  const std::array<int, 2> k11{1, 1};
  const std::array<int, 2> k00{0, 0};
  const std::array<double, 2> half{kPi / 2.0, kPi / 2.0};
  CHECK(rel_err(bracket_nd(t, k11, half).value, std::pow(kPi / 2.0, 4)) < 1e-15);
  const std::array<double, 2> any{0.4, 5.1};
  CHECK(bracket_nd(t, k00, any).value == 1.0);

  const std::array<Generator, 2> sb{shannon(), orthonormalize(bspline(2))};
  const std::array<double, 2> pp{kPi, kPi};
  const PeriodizationValue v = bracket_nd(tensorize(sb), k11, pp);
  CHECK(std::abs(v.value - 12.0 * kPi * kPi) <= 1e-12 * 12.0 * kPi * kPi + v.tail_bound);

  const Generator radial = custom_nd("radial", 2, [](std::span<const double> w) {
    return std::exp(-(w[0] * w[0] + w[1] * w[1]));
  });
  CHECK_THROWS_AS(bracket_nd(radial, k11, pp), UnsupportedGeneratorError);
  const std::array<int, 1> k1{1};
  CHECK_THROWS_AS(bracket_nd(t, k1, pp), InputError);
}

TEST_CASE("orthonormality check") {
  const OrthonormalityReport s = check_orthonormal(shannon(), 1024, 1e-10);
  CHECK(s.pass);
  CHECK(s.max_deviation == 0.0);

  const OrthonormalityReport b = check_orthonormal(bspline(2), 1024, 1e-10);
  CHECK_FALSE(b.pass);
  CHECK(std::abs(b.max_deviation - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(b.worst_omega - kPi) < 1e-12);

  CHECK(check_orthonormal(orthonormalize(gaussian(1.0)), 1024, 1e-8).pass);

  const std::array<Generator, 2> ss{shannon(), orthonormalize(bspline(2))};
  CHECK(check_orthonormal(tensorize(ss), 64, 1e-8).pass);
}

TEST_CASE("non-integer lattice steps") {
  // On hZ the band [-π, π] is covered once when 2π/h >= 2π, i.e. h <= 1.
  const PeriodizationValue v = bracket(shannon(), 0, 0.2, Lattice{0.5});
  CHECK(v.value == 1.0);
  // h = 2: period π, two lattice points fall inside the band.
  CHECK(bracket(shannon(), 0, 0.2, Lattice{2.0}).value == 2.0);
  // Raw B-spline with an incommensurate step uses the envelope route.
  const PeriodizationValue e = bracket(bspline(3), 1, 0.4, Lattice{0.7});
  CHECK(e.tail_bound <= 1e-12 * std::max(1.0, e.value));
  CHECK(e.terms_used > 1);
}

TEST_CASE("periods that are multiples of the lattice period split into cosets") {
  // ψ(x) = φ⊥(2x): G₀(ω) = a²[G⊥₀(ω/2) + G⊥₀(ω/2 + π)] = 1/2 with a = 1/2.
  const Generator g = dilate(orthonormalize(bspline(2)), 0.5);
  for (double w : {0.0, 0.7, kPi, 5.9}) {
    const PeriodizationValue v = bracket(g, 0, w);
    CHECK(std::abs(v.value - 0.5) < 1e-12);
    CHECK(v.tail_bound < 1e-12);
  }
  // raw cubic spline at half scale against the direct sum over both cosets
  const Generator h = dilate(bspline(3), 0.5);
  const double w = 1.3;
  const double direct =
      0.25 * 4.0 * (bracket(bspline(3), 1, w / 2.0).value + bracket(bspline(3), 1, w / 2.0 + kPi).value);
  CHECK(rel_err(bracket(h, 1, w).value, direct) < 1e-12);
}

}
