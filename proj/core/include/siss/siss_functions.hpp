#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "siss/constants.hpp"
#include "siss/generators.hpp"
#include "siss/periodization.hpp"
#include "siss/quadrature.hpp"

namespace siss {

/// f = Σ_γ c_γ φ(· - hγ) for γ = first_index, ..., first_index + coeffs.size() - 1.
struct FiniteSissFunction {
  long first_index = 0;
  std::vector<std::complex<double>> coeffs;
  Lattice lattice;
  Generator generator;

  long last_index() const { return first_index + static_cast<long>(coeffs.size()) - 1; }
  bool is_zero() const;
  void validate() const;
};

/// m_f(ω) = Σ_γ c_γ e^{-iγω}; 2π-periodic.
std::complex<double> symbol_eval(const FiniteSissFunction& f, double w);

struct NormOptions {
  QuadratureOptions quadrature{};
  double tail_tol = kDefaultTailTol;
  /// Return Σ|c_γ|² directly for orthonormal generators on Z.
  bool orthonormal_shortcut = true;
};

/// ‖f‖₂² = (1/2π) ∫_0^{2π/h} |m_f(hω)|² G₀(ω) dω.
double norm_sq(const FiniteSissFunction& f, const NormOptions& opts = {});
/// ‖f^{(k)}‖₂² = (1/2π) ∫_0^{2π/h} |m_f(hω)|² G_k(ω) dω.
double derivative_norm_sq(const FiniteSissFunction& f, int k, const NormOptions& opts = {});
/// ‖f^{(k)}‖₂² / ‖f‖₂²; the zero function is an input error.
double ratio(const FiniteSissFunction& f, int k, const NormOptions& opts = {});

/// Fourier moments μ_j = (1/2π)∫_0^{2π/h} G_k(ω) e^{-ijhω} dω for |j| ≤ max_lag.
///
/// With them the squared norm of any f whose coefficient span is at most
/// max_lag + 1 is the finite sum Σ_j r_j μ_j over the autocorrelation r_j of
/// the coefficients, so many functions can share one quadrature. The moments
/// are converged jointly: the doubling stops when every moment moves by at
/// most rel_tol·|μ_0|.
class GramMoments {
 public:
  GramMoments(const Generator& gen, int k, const Lattice& lattice, int max_lag,
              const QuadratureOptions& quad = {}, double tail_tol = kDefaultTailTol);

  /// (1/2π)∫ |m(hω)|² G_k(ω) dω for the coefficient block `coeffs`.
  double quadratic_form(std::span<const std::complex<double>> coeffs) const;

  int max_lag() const { return static_cast<int>(moments_.size()) - 1; }
  std::complex<double> moment(int j) const;
  /// Largest change of any moment in the final doubling step.
  double error_estimate() const { return error_; }
  std::size_t nodes_used() const { return nodes_; }

 private:
  std::vector<std::complex<double>> moments_;  // j = 0..max_lag
  double error_ = 0.0;
  std::size_t nodes_ = 0;
};

/// Coefficients for γ ∈ [-support, support], real and imaginary parts i.i.d.
/// standard normal. Generator: std::mt19937_64 seeded with `seed`, 53-bit
/// uniforms, Box–Muller (both outputs used, real part first).
FiniteSissFunction random_function(std::uint64_t seed, int support, const Lattice& lattice,
                                   const Generator& gen);

/// Seed of trial i in verify_inequality: splitmix64(seed ^ splitmix64(i)).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct VerificationReport {
  int trials = 0;
  double constant = 0.0;
  double max_ratio = 0.0;
  int argmax_seed_index = -1;  // trial index of max_ratio, -1 when trials == 0
  double margin = 0.0;         // constant - max_ratio
  /// Numerical slack admitted on top of constant·(1 + 1e-9).
  double allowance = 0.0;
  bool pass = true;
};

struct VerifyOptions {
  ConstantOptions constant{};
  QuadratureOptions quadrature{};
};

/// Evaluates the ratio for `trials` seeded random functions and checks
/// max_ratio ≤ B(1 + 1e-9) + allowance. Deterministic given the seed.
VerificationReport verify_inequality(const Generator& gen, int k, const Lattice& lattice,
                                     int trials, int support, std::uint64_t seed,
                                     const VerifyOptions& opts = {});

/// Reads `gamma,re,im` rows (header optional). Missing indices inside the
/// range are zero; duplicates are an error.
FiniteSissFunction load_coefficients_csv(const std::filesystem::path& path,
                                         const Lattice& lattice, const Generator& gen);

}  // namespace siss
