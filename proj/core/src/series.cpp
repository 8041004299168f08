#include "siss/series.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "siss/errors.hpp"
#include "siss/summation.hpp"

namespace siss {

namespace {

// B_{2j} / (2j)! for j = 1..10
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

constexpr int kCorrectionTerms = 8;

}  // namespace

BoundedValue hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !(a > 0.0) || !std::isfinite(s) || !std::isfinite(a)) {
    throw InputError("hurwitz_zeta: requires s > 1 and a > 0");
  }
  const double threshold = std::max(16.0, s + 8.0);
  CompensatedSum sum;
  double x = a;
  while (x < threshold) {
    sum.add(std::pow(x, -s));
    x += 1.0;
  }
  sum.add(std::pow(x, 1.0 - s) / (s - 1.0));
  const double xs = std::pow(x, -s);
  sum.add(0.5 * xs);

  // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
  double rising = s;
  double xpow = xs / x;
  double next = 0.0;
  for (int j = 1; j <= kCorrectionTerms + 1; ++j) {
    const double term = kBernoulliOverFactorial[j - 1] * rising * xpow;
    if (j == kCorrectionTerms + 1) {
      next = term;
      break;
    }
    sum.add(term);
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    xpow /= x * x;
  }
  const double value = sum.value();
  const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  return {value, std::abs(next) + rounding};
}

BoundedValue lattice_power_tail(double q, double w, double step, long L) {
  if (L < 1 || !(step > 0.0)) {
    throw InputError("lattice_power_tail: L >= 1 and step > 0 required");
  }
  const double r = w / step;
  const double scale = std::pow(step, -q);
  // l = L+1, L+2, ...: (w + l step) = step (r + l)
  const BoundedValue pos = hurwitz_zeta(q, static_cast<double>(L + 1) + r);
  // l = -(L+1), ...: |w - l step| = step (l - r)
  const BoundedValue neg = hurwitz_zeta(q, static_cast<double>(L + 1) - r);
  return {scale * (pos.value + neg.value), scale * (pos.error + neg.error)};
}

}  // namespace siss
