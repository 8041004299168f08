#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace siss {

/// Fourier convention: φ̂(ω) = ∫ φ(x) e^{-iωx} dx, ‖f‖₂² = (1/2π)‖f̂‖₂².
/// Generators are described by |φ̂|² only; the phase never enters.

enum class EnvelopeMode { polynomial, super_exponential };

/// Declared pointwise bound on |φ̂|.
///
/// polynomial:        |φ̂(ω)| ≤ C (1+|ω|)^{-p}
/// super_exponential: |φ̂(ω)| ≤ C e^{-p|ω|}
/// A finite `band_limit` additionally asserts φ̂(ω) = 0 for |ω| > band_limit.
struct SpectralEnvelope {
  EnvelopeMode mode = EnvelopeMode::polynomial;
  double amplitude = 1.0;
  double exponent = 1.0;
  double band_limit = std::numeric_limits<double>::infinity();

  bool band_limited() const { return std::isfinite(band_limit); }
  /// Bound on |φ̂(ω)|².
  double bound_sq(double w) const;
  void validate() const;
};

/// Exact asymptotic form |φ̂(ω)|² = modulation(ω)·|ω|^{-decay} for |ω| > radius,
/// with a bounded nonnegative modulation of the given period. Lets lattice
/// tails be summed in closed form when the lattice step is a multiple of the
/// period.
struct PeriodicTail {
  std::function<double(double)> modulation;
  double period = 0.0;
  double decay = 0.0;
  double radius = 0.0;
};

class Generator;

/// |φ̂(ω)|² = factor(ω)·|φ̂_base(ω)|² with `factor` periodic.
struct PeriodicFactor {
  std::function<double(double)> factor;
  double period = 0.0;
  std::shared_ptr<const Generator> base;
};

enum class GeneratorKind {
  shannon,
  bspline,
  gaussian,
  dilated,
  orthonormalized,
  tensor,
  tabulated,
  custom,
};

const char* to_string(GeneratorKind kind);

/// Everything a Generator is made of. Built-in constructors fill this in;
/// advanced users may assemble one directly.
struct GeneratorParts {
  GeneratorKind kind = GeneratorKind::custom;
  std::string name;
  std::size_t dimension = 1;
  std::function<double(double)> spectrum;                        // d == 1
  std::function<double(std::span<const double>)> spectrum_nd;    // non-tensor d >= 2
  SpectralEnvelope envelope;                                     // d == 1
  std::optional<PeriodicTail> tail;
  std::optional<PeriodicFactor> factor;
  std::vector<Generator> axes;                                   // tensor
  bool orthonormal = false;
  bool tabulated = false;
};

/// Immutable, cheaply copyable handle to a generator φ given through |φ̂|².
/// Safe to evaluate concurrently.
class Generator {
 public:
  explicit Generator(GeneratorParts parts);

  GeneratorKind kind() const { return parts_->kind; }
  const std::string& name() const { return parts_->name; }
  std::size_t dimension() const { return parts_->dimension; }
  bool is_tensor() const { return !parts_->axes.empty(); }
  bool is_orthonormal() const { return parts_->orthonormal; }
  /// Samples-backed: suprema found on grids are lower estimates only.
  bool is_tabulated() const;

  /// |φ̂(ω)|² for one-dimensional generators.
  double spectrum(double w) const;
  /// |φ̂(ω)|² for any dimension; ω.size() must equal dimension().
  double spectrum(std::span<const double> w) const;

  /// Envelope of a one-dimensional generator.
  const SpectralEnvelope& envelope() const;
  /// Axis s of a tensor generator; axis(0) of a 1-D generator is itself.
  const Generator& axis(std::size_t s) const;

  const PeriodicTail* periodic_tail() const;
  const PeriodicFactor* periodic_factor() const;

 private:
  std::shared_ptr<const GeneratorParts> parts_;
};

// Built-in generators.

/// |φ̂|² = 1 on |ω| < π, 0 outside, 1/2 on the band edge (so G₀ ≡ 1 pointwise).
Generator shannon();
/// Order-m B-spline (m-fold convolution of the unit indicator): sinc^{2m}(ω/2).
Generator bspline(int order);
/// |φ̂|² = 2πσ² e^{-σ²ω²}.
Generator gaussian(double sigma);

/// ψ(x) = φ(x/a): |ψ̂(ω)|² = a²|φ̂(aω)|².
Generator dilate(const Generator& gen, double a);

struct OrthonormalizeOptions {
  std::size_t check_grid = 1024;
  /// Minimum admissible G₀ on the check grid.
  double threshold = 1e-8;
};

/// |φ̂_⊥|² = |φ̂|²/G₀, evaluated lazily. Tensor generators are
/// orthonormalized axis by axis.
Generator orthonormalize(const Generator& gen, const OrthonormalizeOptions& opts = {});

/// Product generator; a single axis returns that axis unchanged.
Generator tensorize(std::span<const Generator> gens);

struct SpectrumSample {
  double omega = 0.0;
  double value = 0.0;  // |φ̂(ω)|²
};

/// Linear interpolation of samples (strictly increasing ω); the declared
/// envelope bound is used outside the sampled range. Tables that start at
/// ω >= 0 are extended evenly. Samples must respect the envelope.
Generator tabulated(std::vector<SpectrumSample> samples, const SpectralEnvelope& envelope,
                    std::string name = "tabulated");

/// Non-tensor multidimensional generator from a callable. Evaluation only:
/// lattice sums reject it.
Generator custom_nd(std::string name, std::size_t dimension,
                    std::function<double(std::span<const double>)> spectrum);

}  // namespace siss
