#include "siss/periodization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "siss/errors.hpp"
#include "siss/series.hpp"
#include "siss/summation.hpp"

namespace siss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Lattice step `delta` is an integer multiple of `period`.
bool commensurate(double delta, double period) {
  if (!(period > 0.0)) return false;
  const double r = delta / period;
  const double n = std::round(r);
  return n >= 1.0 && std::abs(r - n) <= 1e-12 * r;
}

// `period` is r·delta for an integer r >= 2; returns r, or 0.
long submultiple(double delta, double period) {
  if (!(period > delta)) return 0;
  const double r = period / delta;
  const double n = std::round(r);
  if (n < 2.0 || n > 64.0 || std::abs(r - n) > 1e-12 * r) return 0;
  return static_cast<long>(n);
}

double explicit_sum(const Generator& gen, int k, double w, double delta, long L) {
  CompensatedSum sum;
  for (long l = -L; l <= L; ++l) {
    const double x = w + static_cast<double>(l) * delta;
    const double v = gen.spectrum(x);
    if (v == 0.0) continue;
    sum.add(k == 0 ? v : std::pow(std::abs(x), 2 * k) * v);
  }
  return sum.value();
}

// Σ_{j>=L} over both lattice sides of the envelope term bound, with |x| >= jΔ.
double envelope_tail(const SpectralEnvelope& env, int k, double delta, long L) {
  const double c2 = env.amplitude * env.amplitude;
  const double X = static_cast<double>(L) * delta;
  if (env.mode == EnvelopeMode::polynomial) {
    // term <= C² (1+x)^{-q}, q = 2p - 2k
    const double q = 2.0 * env.exponent - 2.0 * k;
    const double first = std::pow(1.0 + X, -q);
    const double integral = std::pow(1.0 + X, 1.0 - q) / (delta * (q - 1.0));
    return 2.0 * c2 * (first + integral);
  }
  // term <= C² x^n e^{-cx}, n = 2k, c = 2p, decreasing for x >= n/c
  const int n = 2 * k;
  const double c = 2.0 * env.exponent;
  const double first = std::pow(X, n) * std::exp(-c * X);
  // ∫_X^∞ x^n e^{-cx} dx = e^{-cX} Σ_{i=0}^{n} n!/(n-i)! X^{n-i} / c^{i+1}
  double poly = 0.0;
  double falling = 1.0;
  for (int i = 0; i <= n; ++i) {
    poly += falling * std::pow(X, n - i) / std::pow(c, i + 1);
    falling *= static_cast<double>(n - i);
  }
  const double integral = std::exp(-c * X) * poly / delta;
  return 2.0 * c2 * (first + integral);
}

long envelope_start(const SpectralEnvelope& env, int k, double delta) {
  if (env.mode == EnvelopeMode::super_exponential && k > 0) {
    const double x0 = (2.0 * k) / (2.0 * env.exponent);
    return std::max(1L, static_cast<long>(std::ceil(x0 / delta)));
  }
  return 1;
}

// Finiteness is decided on the route that will evaluate the sum.
void check_finite_1d(const Generator& gen, int k, double delta) {
  if (const PeriodicFactor* f = gen.periodic_factor(); f && commensurate(delta, f->period)) {
    check_finite_1d(*f->base, k, delta);
    return;
  }
  const SpectralEnvelope& env = gen.envelope();
  if (env.band_limited()) return;
  if (const PeriodicTail* t = gen.periodic_tail()) {
    const double q = t->decay - 2.0 * k;
    if (q <= 1.0) {
      throw DivergentSeriesError(
          "divergent series for '" + gen.name() + "': |phihat|^2 decays like |w|^-2p with p = " +
          num(t->decay / 2.0) + ", derivative order k = " + std::to_string(k) + ", 2p - 2k = " +
          num(q) + " <= 1, so sum_l |w+2 pi l|^(2k) |phihat(w+2 pi l)|^2 diverges"
          " (sup_w G_k(w) < infinity fails)");
    }
    return;
  }
  if (env.mode == EnvelopeMode::polynomial) {
    const double q = 2.0 * env.exponent - 2.0 * k;
    if (q <= 1.0) {
      throw DivergentSeriesError(
          "divergent series for '" + gen.name() + "': envelope exponent p = " +
          num(env.exponent) + ", derivative order k = " + std::to_string(k) + ", 2p - 2k = " +
          num(q) + " <= 1 (sup_w G_k(w) < infinity fails)");
    }
  }
}

PeriodizationValue bracket_reduced(const Generator& gen, int k, double w, double delta,
                                   double tail_tol);

// Σ over ω + Δℓ split into r cosets ω + jΔ + rΔℓ, each commensurate with `period`.
PeriodizationValue coset_sum(const Generator& gen, int k, double w, double delta, long r,
                             double tail_tol) {
  PeriodizationValue total;
  CompensatedSum value;
  for (long j = 0; j < r; ++j) {
    const PeriodizationValue part =
        bracket_reduced(gen, k, w + static_cast<double>(j) * delta, r * delta,
                        tail_tol / (2.0 * static_cast<double>(r)));
    value.add(part.value);
    total.tail_bound += part.tail_bound;
    total.terms_used = std::max(total.terms_used, part.terms_used);
  }
  total.value = value.value();
  return total;
}

PeriodizationValue bracket_reduced(const Generator& gen, int k, double w, double delta,
                                   double tail_tol) {
  if (const PeriodicFactor* f = gen.periodic_factor(); f && !commensurate(delta, f->period)) {
    if (const long r = submultiple(delta, f->period)) return coset_sum(gen, k, w, delta, r, tail_tol);
  }
  if (const PeriodicFactor* f = gen.periodic_factor(); f && commensurate(delta, f->period)) {
    const double q = f->factor(w);
    const PeriodizationValue base = bracket_reduced(*f->base, k, w, delta, tail_tol);
    return {q * base.value, q * base.tail_bound, base.terms_used};
  }
  check_finite_1d(gen, k, delta);
  const SpectralEnvelope& env = gen.envelope();

  if (const PeriodicTail* t = gen.periodic_tail();
      t && !env.band_limited() && !commensurate(delta, t->period)) {
    if (const long r = submultiple(delta, t->period)) return coset_sum(gen, k, w, delta, r, tail_tol);
  }

  if (env.band_limited()) {
    const long L = static_cast<long>(std::ceil(env.band_limit / delta)) + 1;
    return {explicit_sum(gen, k, w, delta, L), 0.0, L};
  }

  if (const PeriodicTail* t = gen.periodic_tail(); t && commensurate(delta, t->period)) {
    const double q = t->decay - 2.0 * k;
    const double mod = t->modulation(w);
    long L = std::max(1L, static_cast<long>(std::ceil(t->radius / delta)) + 1);
    while (true) {
      const double head = explicit_sum(gen, k, w, delta, L);
      const BoundedValue tail = lattice_power_tail(q, w, delta, L);
      const double est = mod * tail.value;
      const double err = mod * tail.error;
      const double value = head + est - err;
      if (2.0 * err <= tail_tol * std::max(1.0, std::abs(value))) {
        return {value, 2.0 * err, L};
      }
      if (L >= kMaxLatticeTerms) {
        throw ConvergenceError("bracket: tail tolerance unreachable for '" + gen.name() + "'",
                               value, value + 2.0 * err);
      }
      L = std::min(2 * L, kMaxLatticeTerms);
    }
  }

  // Envelope route: pick the smallest L whose certified tail meets the tolerance.
  const long start = envelope_start(env, k, delta);
  const double estimate = explicit_sum(gen, k, w, delta, std::max(start, 8L));
  const double tol = tail_tol * std::max(1.0, std::abs(estimate));
  if (env.mode == EnvelopeMode::polynomial && 2.0 * env.exponent - 2.0 * k <= 1.0) {
    throw ConvergenceError("bracket: envelope of '" + gen.name() +
                           "' decays too slowly to certify the tail for k = " +
                           std::to_string(k));
  }
  long hi = start;
  while (envelope_tail(env, k, delta, hi) > tol) {
    if (hi >= kMaxLatticeTerms) {
      throw ConvergenceError("bracket: tail tolerance " + num(tol) + " unreachable for '" +
                                 gen.name() + "' within " + std::to_string(kMaxLatticeTerms) +
                                 " terms",
                             estimate, estimate + envelope_tail(env, k, delta, hi));
    }
    hi = std::min(2 * hi, kMaxLatticeTerms);
  }
  long lo = std::max(start, hi / 2);
  if (envelope_tail(env, k, delta, lo) <= tol) hi = lo;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (envelope_tail(env, k, delta, mid) <= tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {explicit_sum(gen, k, w, delta, hi), envelope_tail(env, k, delta, hi), hi};
}

void validate_common(int k, double tail_tol) {
  if (k < 0) throw InputError("derivative order k must be >= 0, got " + std::to_string(k));
  if (!(tail_tol > 0.0)) throw InputError("tail tolerance must be positive");
}

}  // namespace

double Lattice::frequency_period() const { return kTwoPi / step; }

void Lattice::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InputError("lattice step must be positive and finite, got " + num(step));
  }
}

double reduce_to_period(double w, double period) {
  double r = std::fmod(w, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

void require_finite(const Generator& gen, int k, const Lattice& lattice) {
  validate_common(k, 1.0);
  lattice.validate();
  if (gen.dimension() == 1) {
    check_finite_1d(gen, k, lattice.frequency_period());
    return;
  }
  for (std::size_t s = 0; s < gen.dimension(); ++s) {
    check_finite_1d(gen.axis(s), k, lattice.frequency_period());
  }
}

PeriodizationValue bracket(const Generator& gen, int k, double w, const Lattice& lattice,
                           double tail_tol) {
  validate_common(k, tail_tol);
  lattice.validate();
  if (gen.dimension() != 1) {
    throw InputError("bracket: generator '" + gen.name() + "' is multidimensional; use bracket_nd");
  }
  if (!std::isfinite(w)) throw InputError("bracket: frequency must be finite");
  const double delta = lattice.frequency_period();
  return bracket_reduced(gen, k, reduce_to_period(w, delta), delta, tail_tol);
}

PeriodizationValue bracket_nd(const Generator& gen, std::span<const int> k,
                              std::span<const double> w, double tail_tol) {
  const std::size_t d = gen.dimension();
  if (k.size() != d || w.size() != d) {
    throw InputError("bracket_nd: multi-index and frequency must have " + std::to_string(d) +
                     " components");
  }
  if (d == 1) return bracket(gen, k[0], w[0], Lattice{}, tail_tol);
  if (!gen.is_tensor()) {
    throw UnsupportedGeneratorError("bracket_nd: '" + gen.name() +
                                    "' is not a tensor product; only tensor generators are "
                                    "supported in dimension >= 2");
  }
  double value = 1.0;
  double upper = 1.0;
  long terms = 0;
  for (std::size_t s = 0; s < d; ++s) {
    const PeriodizationValue v = bracket(gen.axis(s), k[s], w[s], Lattice{}, tail_tol);
    value *= v.value;
    upper *= v.value + v.tail_bound;
    terms = std::max(terms, v.terms_used);
  }
  return {value, std::max(0.0, upper - value), terms};
}

OrthonormalityReport check_orthonormal(const Generator& gen, std::size_t grid_size, double tol,
                                       const Lattice& lattice) {
  if (grid_size < 2) throw InputError("check_orthonormal: grid_size must be >= 2");
  if (!(tol > 0.0)) throw InputError("check_orthonormal: tolerance must be positive");
  lattice.validate();
  const double delta = lattice.frequency_period();
  auto node = [&](std::size_t j) {
    return delta * (static_cast<double>(j) / static_cast<double>(grid_size));
  };

  OrthonormalityReport report;
  if (gen.dimension() == 1) {
    for (std::size_t j = 0; j < grid_size; ++j) {
      const double dev = std::abs(bracket(gen, 0, node(j), lattice).value - 1.0);
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_omega = node(j);
      }
    }
  } else {
    if (!gen.is_tensor()) {
      throw UnsupportedGeneratorError("check_orthonormal: non-tensor multidimensional generator");
    }
    // G₀ = Π_s G₀^{(s)}; walk the full product grid.
    std::vector<std::vector<double>> axis_g0(gen.dimension());
    for (std::size_t s = 0; s < gen.dimension(); ++s) {
      axis_g0[s].resize(grid_size);
      for (std::size_t j = 0; j < grid_size; ++j) {
        axis_g0[s][j] = bracket(gen.axis(s), 0, node(j), lattice).value;
      }
    }
    std::vector<std::size_t> idx(gen.dimension(), 0);
    while (true) {
      double g0 = 1.0;
      for (std::size_t s = 0; s < idx.size(); ++s) g0 *= axis_g0[s][idx[s]];
      const double dev = std::abs(g0 - 1.0);
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_omega = node(idx[0]);
      }
      std::size_t s = 0;
      while (s < idx.size() && ++idx[s] == grid_size) idx[s++] = 0;
      if (s == idx.size()) break;
    }
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

}  // namespace siss
