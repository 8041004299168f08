#pragma once

namespace siss {

/// A value together with a bound on its absolute error.
struct BoundedValue {
  double value = 0.0;
  double error = 0.0;
};

/// Hurwitz zeta ζ(s, a) = Σ_{n≥0} (a+n)^{-s} for real s > 1, a > 0.
///
/// Euler–Maclaurin summation after shifting the argument past max(16, s+8).
/// For x^{-s} the remainder is bounded by the first omitted correction term,
/// which is what `error` reports (plus a rounding allowance).
BoundedValue hurwitz_zeta(double s, double a);

/// Σ_{|l|>L} |w + l·step|^{-q} for w in [0, step), L >= 1, q > 1.
BoundedValue lattice_power_tail(double q, double w, double step, long L);

}  // namespace siss
