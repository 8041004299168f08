#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace siss {

struct QuadratureResult {
  double value = 0.0;
  /// |value - value at half resolution| from the final doubling step.
  double error_estimate = 0.0;
  std::size_t nodes_used = 0;
};

struct QuadratureOptions {
  std::size_t min_nodes = 1024;
  double rel_tol = 1e-10;
  /// Total node cap (per integral, all axes together).
  std::size_t max_nodes = std::size_t{1} << 22;
};

/// Integral of a periodic function over one period with the uniform rule.
///
/// Starts at `min_nodes` and doubles until two successive values agree to
/// `rel_tol` (relative to the latest value). Reuses the previous nodes, so a
/// doubling costs only the new midpoints. Throws ConvergenceError carrying
/// both last values when the node cap is reached first.
QuadratureResult periodic_integral(const std::function<double(double)>& integrand,
                                   double period, const QuadratureOptions& opts = {});

/// Tensor-product uniform rule over a box of periods, d <= 3.
///
/// `min_nodes` is the starting count per axis; all axes are refined together
/// and `max_nodes` caps the total grid size (min_nodes^d must fit under it).
QuadratureResult periodic_integral_nd(
    const std::function<double(std::span<const double>)>& integrand,
    std::span<const double> periods, const QuadratureOptions& opts = {});

}  // namespace siss
