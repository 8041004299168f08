#pragma once

#include <span>
#include <vector>

#include "siss/generators.hpp"
#include "siss/periodization.hpp"

namespace siss {

struct ConstantOptions {
  int grid_size = 4096;
  double refine_tol = 1e-10;
  double tail_tol = kDefaultTailTol;
};

/// Sharp constant B in ‖f^{(k)}‖₂² ≤ B‖f‖₂², i.e. sup_ω G_k(ω)/G₀(ω) over one
/// frequency period (sup_ω G_k(ω) for orthonormal generators on Z).
struct BernsteinConstant {
  double value = 0.0;
  /// One entry per axis, each in [0, 2π/h).
  std::vector<double> argmax;
  double tail_bound = 0.0;
  int grid_size = 0;  // grid actually used after any doubling
  bool refined = false;
  /// Samples-backed generator: the sup is a grid estimate from below.
  bool lower_estimate = false;
};

/// Grid scan of G_k/G₀ over [0, 2π/h), golden-section refinement on the best
/// cell and its neighbours, and up to two grid doublings when the refined
/// maximum exceeds the grid maximum by more than 1e-6 relative. Frequencies
/// with G₀ = 0 are outside the space and skipped. Ties go to the lowest ω.
BernsteinConstant bernstein_constant(const Generator& gen, int k, const Lattice& lattice = {},
                                     const ConstantOptions& opts = {});

/// Space {Σ c_γ φ((x-γ)/a)}: the constant of dilate(gen, a) on the integer lattice.
BernsteinConstant bernstein_constant_scaled(const Generator& gen, int k, double a,
                                            const ConstantOptions& opts = {});

/// Tensor generators: the lattice sum is a product of nonnegative per-axis
/// factors, so the sup is the product of the per-axis sups.
BernsteinConstant bernstein_constant_nd(const Generator& gen, std::span<const int> k,
                                        const ConstantOptions& opts = {});

}  // namespace siss
