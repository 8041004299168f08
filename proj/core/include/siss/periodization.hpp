#pragma once

#include <span>

#include "siss/generators.hpp"

namespace siss {

/// Shift step h of the lattice hZ; the frequency period is 2π/h.
struct Lattice {
  double step = 1.0;

  double frequency_period() const;
  void validate() const;
};

/// G_k(ω) = Σ_ℓ |ω + 2πℓ/h|^{2k} |φ̂(ω + 2πℓ/h)|² truncated to |ℓ| ≤ terms_used.
/// The exact sum lies in [value, value + tail_bound].
struct PeriodizationValue {
  double value = 0.0;
  double tail_bound = 0.0;
  long terms_used = 0;
};

inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr long kMaxLatticeTerms = 10'000'000;

/// Weighted periodization at one frequency.
///
/// `tail_tol` is relative: the certified tail must not exceed
/// tail_tol·max(1, |G_k(ω)|). Three evaluation routes, picked per generator:
///  - band-limited: the sum is finite, tail_bound = 0;
///  - periodic asymptotic tail (B-splines and their dilations): the tail is
///    summed through Hurwitz zeta with an Euler–Maclaurin error bound;
///  - otherwise the declared envelope bounds the tail by integral comparison
///    and L grows until the bound meets the tolerance.
/// Periodic factors (orthonormalization) are pulled out of the sum when the
/// frequency period is a multiple of theirs.
///
/// Throws DivergentSeriesError when the sum is infinite (polynomial decay
/// 2p - 2k <= 1) and ConvergenceError when L would exceed kMaxLatticeTerms.
PeriodizationValue bracket(const Generator& gen, int k, double w, const Lattice& lattice = {},
                           double tail_tol = kDefaultTailTol);

/// Multi-index version on the integer lattice Z^d. Tensor generators
/// factorize into per-axis brackets; the tail bound is Π(v_s+t_s) - Π v_s.
PeriodizationValue bracket_nd(const Generator& gen, std::span<const int> k,
                              std::span<const double> w, double tail_tol = kDefaultTailTol);

/// Throws DivergentSeriesError unless G_k is finite for this generator and lattice.
void require_finite(const Generator& gen, int k, const Lattice& lattice = {});

struct OrthonormalityReport {
  double max_deviation = 0.0;
  double worst_omega = 0.0;  // first axis only for tensor generators
  bool pass = false;
};

/// max over the uniform grid on [0, 2π/h)^d of |G₀(ω) - 1|.
OrthonormalityReport check_orthonormal(const Generator& gen, std::size_t grid_size, double tol,
                                       const Lattice& lattice = {});

/// ω reduced into [0, period).
double reduce_to_period(double w, double period);

}  // namespace siss
