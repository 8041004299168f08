#include "siss/siss_functions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "siss/errors.hpp"
#include "siss/summation.hpp"

namespace siss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

QuadratureOptions widen_for_support(QuadratureOptions q, std::size_t width) {
  q.min_nodes = next_pow2(std::max(q.min_nodes, 16 * width));
  q.max_nodes = std::max(q.max_nodes, 2 * q.min_nodes);
  return q;
}

double weighted_norm(const FiniteSissFunction& f, int k, const NormOptions& opts) {
  f.validate();
  const double h = f.lattice.step;
  const Generator& gen = f.generator;
  auto integrand = [&](double w) {
    const double g = bracket(gen, k, w, f.lattice, opts.tail_tol).value;
    if (g == 0.0) return 0.0;
    return std::norm(symbol_eval(f, h * w)) * g;
  };
  const QuadratureOptions q = widen_for_support(opts.quadrature, f.coeffs.size());
  return periodic_integral(integrand, f.lattice.frequency_period(), q).value / kTwoPi;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

bool FiniteSissFunction::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const std::complex<double>& c) { return c == 0.0; });
}

void FiniteSissFunction::validate() const {
  if (coeffs.empty()) throw InputError("function has no coefficients");
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InputError("function coefficients must be finite");
    }
  }
  lattice.validate();
  if (generator.dimension() != 1) {
    throw InputError("shift-invariant functions are one-dimensional here");
  }
}

std::complex<double> symbol_eval(const FiniteSissFunction& f, double w) {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const double gamma = static_cast<double>(f.first_index + static_cast<long>(i));
    sum += f.coeffs[i] * std::polar(1.0, -gamma * w);
  }
  return sum;
}

double norm_sq(const FiniteSissFunction& f, const NormOptions& opts) {
  f.validate();
  if (opts.orthonormal_shortcut && f.generator.is_orthonormal() && f.lattice.step == 1.0) {
    CompensatedSum s;
    for (const auto& c : f.coeffs) s.add(std::norm(c));
    return s.value();
  }
  return weighted_norm(f, 0, opts);
}

double derivative_norm_sq(const FiniteSissFunction& f, int k, const NormOptions& opts) {
  if (k < 0) throw InputError("derivative order k must be >= 0");
  if (k == 0) return norm_sq(f, opts);
  require_finite(f.generator, k, f.lattice);
  return weighted_norm(f, k, opts);
}

double ratio(const FiniteSissFunction& f, int k, const NormOptions& opts) {
  f.validate();
  if (f.is_zero()) throw InputError("ratio: the zero function has no norm ratio");
  const double denom = norm_sq(f, opts);
  if (!(denom > 0.0)) {
    throw InputError("ratio: function has zero norm (symbol vanishes where G0 > 0)");
  }
  return derivative_norm_sq(f, k, opts) / denom;
}

GramMoments::GramMoments(const Generator& gen, int k, const Lattice& lattice, int max_lag,
                         const QuadratureOptions& quad, double tail_tol) {
  if (max_lag < 0) throw InputError("GramMoments: max_lag must be >= 0");
  if (gen.dimension() != 1) throw InputError("GramMoments: generator must be one-dimensional");
  require_finite(gen, k, lattice);
  const double period = lattice.frequency_period();
  const std::size_t lags = static_cast<std::size_t>(max_lag) + 1;
  const QuadratureOptions q = widen_for_support(quad, lags);

  // raw_j = Σ_n G(ω_n) e^{-2πi j n / M}; μ_j = period/(2π M) raw_j
  std::vector<CompensatedSum> re(lags), im(lags);
  auto add_nodes = [&](std::size_t level, std::size_t first, std::size_t stride) {
    for (std::size_t n = first; n < level; n += stride) {
      const double w = period * (static_cast<double>(n) / static_cast<double>(level));
      const double g = bracket(gen, k, w, lattice, tail_tol).value;
      if (g == 0.0) continue;
      for (std::size_t j = 0; j < lags; ++j) {
        const std::size_t phase = (j * n) % level;
        const double angle = -kTwoPi * (static_cast<double>(phase) / static_cast<double>(level));
        re[j].add(g * std::cos(angle));
        im[j].add(g * std::sin(angle));
      }
    }
  };
  auto snapshot = [&](std::size_t level) {
    std::vector<std::complex<double>> mu(lags);
    const double scale = period / (kTwoPi * static_cast<double>(level));
    for (std::size_t j = 0; j < lags; ++j) mu[j] = {scale * re[j].value(), scale * im[j].value()};
    return mu;
  };

  std::size_t level = q.min_nodes;
  add_nodes(level, 0, 1);
  std::vector<std::complex<double>> current = snapshot(level);
  while (true) {
    if (2 * level > q.max_nodes) {
      throw ConvergenceError("GramMoments: moments did not converge within " +
                                 std::to_string(q.max_nodes) + " nodes",
                             current[0].real(), current[0].real());
    }
    // Existing node n of level M is node 2n of level 2M; the phase (j·2n) mod 2M
    // equals 2·((j·n) mod M), so the accumulated sums carry over unchanged.
    level *= 2;
    add_nodes(level, 1, 2);
    std::vector<std::complex<double>> next = snapshot(level);
    double change = 0.0;
    for (std::size_t j = 0; j < lags; ++j) change = std::max(change, std::abs(next[j] - current[j]));
    current = std::move(next);
    if (change == 0.0 || change <= q.rel_tol * std::abs(current[0])) {
      error_ = change;
      break;
    }
  }
  moments_ = std::move(current);
  nodes_ = level;
}

std::complex<double> GramMoments::moment(int j) const {
  const std::size_t a = static_cast<std::size_t>(std::abs(j));
  if (a >= moments_.size()) throw InputError("GramMoments: lag out of range");
  return j >= 0 ? moments_[a] : std::conj(moments_[a]);
}

double GramMoments::quadratic_form(std::span<const std::complex<double>> coeffs) const {
  if (coeffs.size() > moments_.size()) {
    throw InputError("GramMoments: coefficient block longer than max_lag + 1");
  }
  // |m|² = Σ_j r_j e^{-ijθ}, r_j = Σ_γ c_{γ+j} conj(c_γ); r_{-j} = conj(r_j)
  CompensatedSum total;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    std::complex<double> r = 0.0;
    for (std::size_t g = 0; g + j < coeffs.size(); ++g) r += coeffs[g + j] * std::conj(coeffs[g]);
    const double term = (r * moments_[j]).real();
    total.add(j == 0 ? term : 2.0 * term);
  }
  return total.value();
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ splitmix64(trial));
}

FiniteSissFunction random_function(std::uint64_t seed, int support, const Lattice& lattice,
                                   const Generator& gen) {
  if (support < 0) throw InputError("random_function: support must be >= 0");
  lattice.validate();
  std::mt19937_64 rng(seed);
  FiniteSissFunction f{-static_cast<long>(support), {}, lattice, gen};
  f.coeffs.reserve(2 * static_cast<std::size_t>(support) + 1);
  for (int i = -support; i <= support; ++i) {
    // 1 - u keeps the logarithm argument in (0, 1]
    const double u1 = 1.0 - uniform53(rng);
    const double u2 = uniform53(rng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    f.coeffs.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
  }
  return f;
}

VerificationReport verify_inequality(const Generator& gen, int k, const Lattice& lattice,
                                     int trials, int support, std::uint64_t seed,
                                     const VerifyOptions& opts) {
  if (trials < 0) throw InputError("verify: trials must be >= 0");
  if (support < 0) throw InputError("verify: support must be >= 0");
  if (k < 0) throw InputError("verify: derivative order k must be >= 0");

  VerificationReport report;
  report.trials = trials;
  const BernsteinConstant constant = bernstein_constant(gen, k, lattice, opts.constant);
  report.constant = constant.value;
  if (trials == 0) {
    report.margin = report.constant;
    report.pass = true;
    return report;
  }

  const int lag = 2 * support;
  const GramMoments num(gen, k, lattice, lag, opts.quadrature, opts.constant.tail_tol);
  const bool shortcut = gen.is_orthonormal() && lattice.step == 1.0;
  std::optional<GramMoments> den;
  if (!shortcut) den.emplace(gen, 0, lattice, lag, opts.quadrature, opts.constant.tail_tol);

  double max_rel_err = num.error_estimate() / std::abs(num.moment(0));
  if (den) max_rel_err += den->error_estimate() / std::abs(den->moment(0));

  report.max_ratio = 0.0;
  for (int i = 0; i < trials; ++i) {
    const FiniteSissFunction f =
        random_function(trial_seed(seed, static_cast<std::uint64_t>(i)), support, lattice, gen);
    double denom = 0.0;
    if (shortcut) {
      CompensatedSum s;
      for (const auto& c : f.coeffs) s.add(std::norm(c));
      denom = s.value();
    } else {
      denom = den->quadratic_form(f.coeffs);
    }
    if (!(denom > 0.0)) continue;
    const double r = num.quadratic_form(f.coeffs) / denom;
    if (r > report.max_ratio || report.argmax_seed_index < 0) {
      report.max_ratio = r;
      report.argmax_seed_index = i;
    }
  }
  report.margin = report.constant - report.max_ratio;
  // The moments are checked against μ_0, so their error scales with the
  // coefficient mass rather than with the quadratic form itself; the
  // worst-case amplification is the coefficient count.
  const double coeff_count = static_cast<double>(2 * support + 1);
  report.allowance = constant.tail_bound + report.constant * coeff_count * max_rel_err;
  report.pass = report.max_ratio <= report.constant * (1.0 + 1e-9) + report.allowance;
  return report;
}

FiniteSissFunction load_coefficients_csv(const std::filesystem::path& path,
                                         const Lattice& lattice, const Generator& gen) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read coefficient file " + path.string());
  std::map<long, std::complex<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line_no == 1 && line.find("gamma") != std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long gamma = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> gamma >> re >> im)) {
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'gamma,re,im'");
    }
    if (!rows.emplace(gamma, std::complex<double>(re, im)).second) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": duplicate gamma " +
                       std::to_string(gamma));
    }
  }
  if (rows.empty()) throw InputError("coefficient file " + path.string() + " has no rows");
  FiniteSissFunction f{rows.begin()->first, {}, lattice, gen};
  f.coeffs.assign(static_cast<std::size_t>(rows.rbegin()->first - rows.begin()->first + 1), 0.0);
  for (const auto& [gamma, c] : rows) f.coeffs[static_cast<std::size_t>(gamma - f.first_index)] = c;
  f.validate();
  return f;
}

}  // namespace siss
