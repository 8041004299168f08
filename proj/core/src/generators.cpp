#include "siss/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "siss/errors.hpp"
#include "siss/periodization.hpp"

namespace siss {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Upper bound of sup_ω (1+|ω|)·|sin(ω/2)/(ω/2)|, attained near ω ≈ 2.8 (≈ 2.675).
constexpr double kSincEnvelopeBase = 2.7;

}  // namespace

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::shannon: return "shannon";
    case GeneratorKind::bspline: return "bspline";
    case GeneratorKind::gaussian: return "gaussian";
    case GeneratorKind::dilated: return "dilated";
    case GeneratorKind::orthonormalized: return "orthonormalized";
    case GeneratorKind::tensor: return "tensor";
    case GeneratorKind::tabulated: return "tabulated";
    case GeneratorKind::custom: return "custom";
  }
  return "unknown";
}

double SpectralEnvelope::bound_sq(double w) const {
  const double aw = std::abs(w);
  if (aw > band_limit) return 0.0;
  const double c2 = amplitude * amplitude;
  if (mode == EnvelopeMode::polynomial) return c2 * std::pow(1.0 + aw, -2.0 * exponent);
  return c2 * std::exp(-2.0 * exponent * aw);
}

void SpectralEnvelope::validate() const {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw InputError("envelope amplitude must be positive and finite");
  }
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw InputError("envelope exponent must be positive and finite");
  }
  if (!(band_limit > 0.0)) throw InputError("envelope band limit must be positive");
}

Generator::Generator(GeneratorParts parts) {
  if (parts.dimension < 1) throw InputError("generator dimension must be >= 1");
  if (!parts.axes.empty()) {
    if (parts.axes.size() != parts.dimension) {
      throw InputError("tensor generator: axis count must equal the dimension");
    }
    for (const auto& ax : parts.axes) {
      if (ax.dimension() != 1) throw InputError("tensor generator: axes must be one-dimensional");
    }
  } else if (parts.dimension == 1) {
    if (!parts.spectrum) throw InputError("generator: missing spectrum evaluator");
    parts.envelope.validate();
  } else if (!parts.spectrum_nd) {
    throw InputError("generator: missing multidimensional spectrum evaluator");
  }
  parts_ = std::make_shared<const GeneratorParts>(std::move(parts));
}

bool Generator::is_tabulated() const { return parts_->tabulated; }

double Generator::spectrum(double w) const {
  if (parts_->dimension != 1) {
    throw InputError("spectrum(double) called on a " + std::to_string(parts_->dimension) +
                     "-dimensional generator");
  }
  return parts_->spectrum(w);
}

double Generator::spectrum(std::span<const double> w) const {
  if (w.size() != parts_->dimension) {
    throw InputError("spectrum: frequency vector has wrong dimension");
  }
  if (parts_->dimension == 1) return parts_->spectrum(w[0]);
  if (!parts_->axes.empty()) {
    double v = 1.0;
    for (std::size_t s = 0; s < w.size(); ++s) v *= parts_->axes[s].spectrum(w[s]);
    return v;
  }
  return parts_->spectrum_nd(w);
}

const SpectralEnvelope& Generator::envelope() const {
  if (parts_->dimension != 1) {
    throw InputError("envelope: multidimensional generators carry per-axis envelopes");
  }
  return parts_->envelope;
}

const Generator& Generator::axis(std::size_t s) const {
  if (parts_->axes.empty()) {
    if (s == 0 && parts_->dimension == 1) return *this;
    throw UnsupportedGeneratorError("axis: generator '" + parts_->name +
                                    "' is not a tensor product");
  }
  if (s >= parts_->axes.size()) throw InputError("axis: index out of range");
  return parts_->axes[s];
}

const PeriodicTail* Generator::periodic_tail() const {
  return parts_->tail ? &*parts_->tail : nullptr;
}

const PeriodicFactor* Generator::periodic_factor() const {
  return parts_->factor ? &*parts_->factor : nullptr;
}

Generator shannon() {
  GeneratorParts p;
  p.kind = GeneratorKind::shannon;
  p.name = "shannon";
  p.spectrum = [](double w) {
    const double aw = std::abs(w);
    const double edge = 16.0 * kEps * kPi;
    if (aw < kPi - edge) return 1.0;
    if (aw <= kPi + edge) return 0.5;
    return 0.0;
  };
  p.envelope = {EnvelopeMode::polynomial, 1.0 + kPi, 1.0, kPi * (1.0 + 16.0 * kEps)};
  p.orthonormal = true;
  return Generator(std::move(p));
}

Generator bspline(int order) {
  if (order < 1) throw InputError("bspline: order must be >= 1, got " + std::to_string(order));
  GeneratorParts p;
  p.kind = GeneratorKind::bspline;
  p.name = "bspline" + std::to_string(order);
  const int two_m = 2 * order;
  p.spectrum = [two_m](double w) {
    if (w == 0.0) return 1.0;
    const double half = 0.5 * w;
    return std::pow(std::sin(half) / half, two_m);
  };
  p.envelope = {EnvelopeMode::polynomial, std::pow(kSincEnvelopeBase, order),
                static_cast<double>(order)};
  // sinc^{2m}(ω/2) = 4^m sin^{2m}(ω/2) |ω|^{-2m}
  const double scale = std::pow(4.0, order);
  p.tail = PeriodicTail{
      [two_m, scale](double w) { return scale * std::pow(std::sin(0.5 * w), two_m); },
      2.0 * kPi, static_cast<double>(two_m), 0.0};
  p.orthonormal = (order == 1);  // Haar
  return Generator(std::move(p));
}

Generator gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InputError("gaussian: sigma must be positive, got " + format_number(sigma));
  }
  GeneratorParts p;
  p.kind = GeneratorKind::gaussian;
  p.name = "gaussian(" + format_number(sigma) + ")";
  const double s2 = sigma * sigma;
  const double peak = 2.0 * kPi * s2;
  p.spectrum = [s2, peak](double w) { return peak * std::exp(-s2 * w * w); };
  // σ²ω²/2 - p|ω| >= -p²/(2σ²) gives |φ̂| <= √(2π)σ e^{p²/(2σ²)} e^{-p|ω|}; p = 4σ.
  const double p_exp = 4.0 * sigma;
  p.envelope = {EnvelopeMode::super_exponential, std::sqrt(peak) * std::exp(8.0), p_exp};
  return Generator(std::move(p));
}

Generator dilate(const Generator& gen, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InputError("dilate: factor must be positive, got " + format_number(a));
  }
  if (gen.dimension() != 1) throw InputError("dilate: generator must be one-dimensional");
  if (a == 1.0) return gen;

  GeneratorParts p;
  p.kind = GeneratorKind::dilated;
  p.name = "dilated(" + gen.name() + ", " + format_number(a) + ")";
  const double a2 = a * a;
  p.spectrum = [gen, a, a2](double w) { return a2 * gen.spectrum(a * w); };

  const SpectralEnvelope& in = gen.envelope();
  SpectralEnvelope env = in;
  if (in.mode == EnvelopeMode::polynomial) {
    // (1 + a|ω|) >= min(1, a)(1 + |ω|)
    env.amplitude = a * in.amplitude * std::pow(std::min(1.0, a), -in.exponent);
  } else {
    env.amplitude = a * in.amplitude;
    env.exponent = in.exponent * a;
  }
  env.band_limit = in.band_limit / a;
  p.envelope = env;

  if (const PeriodicTail* t = gen.periodic_tail()) {
    // a² A(aω) |aω|^{-s} = a^{2-s} A(aω) |ω|^{-s}
    const double scale = std::pow(a, 2.0 - t->decay);
    p.tail = PeriodicTail{[mod = t->modulation, a, scale](double w) { return scale * mod(a * w); },
                          t->period / a, t->decay, t->radius / a};
  }
  if (const PeriodicFactor* f = gen.periodic_factor()) {
    p.factor = PeriodicFactor{[fac = f->factor, a](double w) { return fac(a * w); },
                              f->period / a,
                              std::make_shared<const Generator>(dilate(*f->base, a))};
  }
  p.tabulated = gen.is_tabulated();
  return Generator(std::move(p));
}

Generator orthonormalize(const Generator& gen, const OrthonormalizeOptions& opts) {
  if (gen.is_tensor()) {
    std::vector<Generator> axes;
    for (std::size_t s = 0; s < gen.dimension(); ++s) {
      axes.push_back(orthonormalize(gen.axis(s), opts));
    }
    return tensorize(axes);
  }
  if (gen.dimension() != 1) {
    throw UnsupportedGeneratorError("orthonormalize: non-tensor multidimensional generator");
  }
  if (gen.is_orthonormal()) return gen;
  if (opts.check_grid < 2) throw InputError("orthonormalize: check grid must have >= 2 points");

  // Riesz lower bound on a grid over one period.
  require_finite(gen, 0);
  double min_g0 = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t j = 0; j < opts.check_grid; ++j) {
    const double w = 2.0 * kPi * (static_cast<double>(j) / static_cast<double>(opts.check_grid));
    const double g0 = bracket(gen, 0, w).value;
    if (g0 < min_g0) {
      min_g0 = g0;
      worst = w;
    }
  }
  if (!(min_g0 >= opts.threshold)) {
    throw DegenerateGeneratorError("orthonormalize: G0 drops to " + format_number(min_g0) +
                                   " at omega = " + format_number(worst) +
                                   ", below the Riesz threshold " +
                                   format_number(opts.threshold));
  }

  auto inverse_g0 = [gen](double w) {
    const double g0 = bracket(gen, 0, w, Lattice{}, 1e-14).value;
    return g0 > 0.0 ? 1.0 / g0 : 0.0;
  };

  GeneratorParts p;
  p.kind = GeneratorKind::orthonormalized;
  p.name = "orthonormalized(" + gen.name() + ")";
  p.spectrum = [gen, inverse_g0](double w) {
    const double v = gen.spectrum(w);
    return v == 0.0 ? 0.0 : v * inverse_g0(w);
  };
  // |φ̂_⊥|² <= |φ̂|²/min G₀; halve the grid minimum to cover sub-grid dips.
  SpectralEnvelope env = gen.envelope();
  env.amplitude = gen.envelope().amplitude / std::sqrt(0.5 * min_g0);
  p.envelope = env;
  p.factor = PeriodicFactor{inverse_g0, 2.0 * kPi, std::make_shared<const Generator>(gen)};
  p.orthonormal = true;
  p.tabulated = gen.is_tabulated();
  return Generator(std::move(p));
}

Generator tensorize(std::span<const Generator> gens) {
  if (gens.empty()) throw InputError("tensorize: empty axis list");
  for (const auto& g : gens) {
    if (g.dimension() != 1) throw InputError("tensorize: axes must be one-dimensional");
  }
  if (gens.size() == 1) return gens[0];

  GeneratorParts p;
  p.kind = GeneratorKind::tensor;
  p.dimension = gens.size();
  p.name = "tensor(";
  bool orthonormal = true;
  bool tab = false;
  for (std::size_t s = 0; s < gens.size(); ++s) {
    if (s) p.name += ", ";
    p.name += gens[s].name();
    orthonormal = orthonormal && gens[s].is_orthonormal();
    tab = tab || gens[s].is_tabulated();
  }
  p.name += ")";
  p.axes.assign(gens.begin(), gens.end());
  p.orthonormal = orthonormal;
  p.tabulated = tab;
  return Generator(std::move(p));
}

Generator tabulated(std::vector<SpectrumSample> samples, const SpectralEnvelope& envelope,
                    std::string name) {
  envelope.validate();
  if (samples.size() < 2) throw InputError("tabulated: need at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.omega) || !std::isfinite(s.value) || s.value < 0.0) {
      throw InputError("tabulated: sample " + std::to_string(i) +
                       " must be finite with a nonnegative value");
    }
    if (i > 0 && !(s.omega > samples[i - 1].omega)) {
      throw InputError("tabulated: omega must be strictly increasing (row " + std::to_string(i) +
                       ")");
    }
    const double bound = envelope.bound_sq(s.omega);
    if (s.value > bound * (1.0 + 1e-12)) {
      throw InputError("tabulated: sample at omega = " + format_number(s.omega) +
                       " exceeds the declared envelope (" + format_number(s.value) + " > " +
                       format_number(bound) + ")");
    }
  }
  const bool even = samples.front().omega >= 0.0;

  GeneratorParts p;
  p.kind = GeneratorKind::tabulated;
  p.name = std::move(name);
  p.spectrum = [table = std::move(samples), envelope, even](double w) {
    const double x = even ? std::abs(w) : w;
    if (x < table.front().omega || x > table.back().omega) return envelope.bound_sq(w);
    auto hi = std::lower_bound(table.begin(), table.end(), x,
                               [](const SpectrumSample& s, double v) { return s.omega < v; });
    if (hi->omega == x) return hi->value;
    auto lo = hi - 1;
    const double t = (x - lo->omega) / (hi->omega - lo->omega);
    return lo->value + t * (hi->value - lo->value);
  };
  p.envelope = envelope;
  p.tabulated = true;
  return Generator(std::move(p));
}

Generator custom_nd(std::string name, std::size_t dimension,
                    std::function<double(std::span<const double>)> spectrum) {
  if (dimension < 2) throw InputError("custom_nd: dimension must be >= 2");
  GeneratorParts p;
  p.kind = GeneratorKind::custom;
  p.name = std::move(name);
  p.dimension = dimension;
  p.spectrum_nd = std::move(spectrum);
  return Generator(std::move(p));
}

}  // namespace siss
