#pragma once

#include <span>
#include <vector>

#include "siss/constants.hpp"
#include "siss/generators.hpp"
#include "siss/periodization.hpp"
#include "siss/quadrature.hpp"

namespace siss {

/// Fejér kernel Φ_n(ω) = (1/(n+1)) (sin((n+1)ω/2) / sin(ω/2))², equal to n+1
/// on 2πZ. Nonnegative with mean one over a period.
double fejer(int n, double w);

struct ExtremalOptions {
  /// The kink of G_k at a band edge limits the uniform rule to O(M^-2), so
  /// high-order kernels centered there cannot reach 1e-10 within the node cap.
  QuadratureOptions quadrature{1024, 1e-9};
  double tail_tol = kDefaultTailTol;
  /// Used only to locate the default center.
  ConstantOptions constant{};
};

/// Ratio ‖f_n^{(k)}‖₂²/‖f_n‖₂² for the function with symbol |m_n(hω)|² =
/// Φ_n(h(ω - center)):
///   ∫ Φ_n(h(ω-c)) G_k(ω) dω / ∫ Φ_n(h(ω-c)) G₀(ω) dω over one period.
/// The quadrature starts at max(min_nodes, 16(n+1)) nodes.
double extremal_ratio(const Generator& gen, int k, const Lattice& lattice, int n, double center,
                      const ExtremalOptions& opts = {});
/// Same, centered at the argmax of bernstein_constant.
double extremal_ratio(const Generator& gen, int k, const Lattice& lattice, int n,
                      const ExtremalOptions& opts = {});

enum class ExtremalMethod {
  /// Product kernel on a tensor generator: ratio = Π_s per-axis ratios.
  factorized,
  /// Full tensor-product quadrature over [0, 2π)^d (small n only).
  tensor_quadrature,
};

/// Multidimensional ratio with kernel Π_s Φ_n(ω_s - c_s) on Z^d.
double extremal_ratio_nd(const Generator& gen, std::span<const int> k, int n,
                         std::span<const double> center,
                         ExtremalMethod method = ExtremalMethod::factorized,
                         const ExtremalOptions& opts = {});

struct FejerTrace {
  std::vector<int> orders;
  std::vector<double> ratios;
  double constant = 0.0;
  std::vector<double> gaps;    // constant - ratio
  std::vector<double> center;  // one entry per axis
};

/// Extremal ratios at each order (strictly increasing), centered at the argmax
/// of the Bernstein constant.
FejerTrace sharpness_trace(const Generator& gen, int k, const Lattice& lattice,
                           std::span<const int> orders, const ExtremalOptions& opts = {});

/// Tensor version with the product kernel.
FejerTrace sharpness_trace_nd(const Generator& gen, std::span<const int> k,
                              std::span<const int> orders, const ExtremalOptions& opts = {});

}  // namespace siss
