#include "siss/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "siss/errors.hpp"

namespace siss {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

QuadratureOptions kernel_quadrature(QuadratureOptions q, int n) {
  q.min_nodes = next_pow2(std::max<std::size_t>(q.min_nodes, 16 * (static_cast<std::size_t>(n) + 1)));
  q.max_nodes = std::max(q.max_nodes, 2 * q.min_nodes);
  return q;
}

void check_order(int n) {
  if (n < 0) throw InputError("Fejer order must be >= 0, got " + std::to_string(n));
}

void check_orders(std::span<const int> orders) {
  if (orders.empty()) throw InputError("sharpness trace: empty order list");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    check_order(orders[i]);
    if (i > 0 && orders[i] <= orders[i - 1]) {
      throw InputError("sharpness trace: orders must be strictly increasing");
    }
  }
}

}  // namespace

double fejer(int n, double w) {
  check_order(n);
  const double np1 = static_cast<double>(n) + 1.0;
  const double t = 0.5 * std::remainder(w, kTwoPi);  // in [-π/2, π/2]
  const double s = std::sin(t);
  if (s == 0.0) return np1;
  const double q = std::sin(np1 * t) / s;
  return q * q / np1;
}

double extremal_ratio(const Generator& gen, int k, const Lattice& lattice, int n, double center,
                      const ExtremalOptions& opts) {
  check_order(n);
  if (gen.dimension() != 1) throw InputError("extremal_ratio: use extremal_ratio_nd");
  if (!std::isfinite(center)) throw InputError("extremal_ratio: center must be finite");
  require_finite(gen, k, lattice);
  const double h = lattice.step;
  const double period = lattice.frequency_period();
  const QuadratureOptions q = kernel_quadrature(opts.quadrature, n);

  auto weighted = [&](int order) {
    return periodic_integral(
               [&](double w) {
                 const double kernel = fejer(n, h * (w - center));
                 if (kernel == 0.0) return 0.0;
                 return kernel * bracket(gen, order, w, lattice, opts.tail_tol).value;
               },
               period, q)
        .value;
  };

  const double numerator = weighted(k);
  // Orthonormal on Z: G₀ ≡ 1 and the kernel has mean one.
  const double denominator =
      (gen.is_orthonormal() && h == 1.0) ? kTwoPi : (k == 0 ? numerator : weighted(0));
  if (!(denominator > 0.0)) {
    throw InputError("extremal_ratio: kernel is concentrated where G0 vanishes");
  }
  return numerator / denominator;
}

double extremal_ratio(const Generator& gen, int k, const Lattice& lattice, int n,
                      const ExtremalOptions& opts) {
  const BernsteinConstant b = bernstein_constant(gen, k, lattice, opts.constant);
  return extremal_ratio(gen, k, lattice, n, b.argmax.front(), opts);
}

double extremal_ratio_nd(const Generator& gen, std::span<const int> k, int n,
                         std::span<const double> center, ExtremalMethod method,
                         const ExtremalOptions& opts) {
  check_order(n);
  const std::size_t d = gen.dimension();
  if (k.size() != d || center.size() != d) {
    throw InputError("extremal_ratio_nd: multi-index and center must have " + std::to_string(d) +
                     " components");
  }
  if (d == 1) return extremal_ratio(gen, k[0], Lattice{}, n, center[0], opts);
  if (!gen.is_tensor()) {
    throw UnsupportedGeneratorError("extremal_ratio_nd: '" + gen.name() +
                                    "' is not a tensor product");
  }

  if (method == ExtremalMethod::factorized) {
    double r = 1.0;
    for (std::size_t s = 0; s < d; ++s) {
      r *= extremal_ratio(gen.axis(s), k[s], Lattice{}, n, center[s], opts);
    }
    return r;
  }

  require_finite(gen, *std::max_element(k.begin(), k.end()));
  QuadratureOptions q = opts.quadrature;
  q.min_nodes = next_pow2(std::max<std::size_t>(64, 16 * (static_cast<std::size_t>(n) + 1)));
  q.max_nodes = std::max<std::size_t>(q.max_nodes, std::size_t{1} << 24);
  const std::vector<double> periods(d, kTwoPi);
  std::vector<int> zeros(d, 0);
  auto weighted = [&](std::span<const int> order) {
    return periodic_integral_nd(
               [&](std::span<const double> w) {
                 double kernel = 1.0;
                 for (std::size_t s = 0; s < d; ++s) kernel *= fejer(n, w[s] - center[s]);
                 if (kernel == 0.0) return 0.0;
                 return kernel * bracket_nd(gen, order, w, opts.tail_tol).value;
               },
               periods, q)
        .value;
  };
  const double numerator = weighted(k);
  const double denominator = weighted(zeros);
  if (!(denominator > 0.0)) {
    throw InputError("extremal_ratio_nd: kernel is concentrated where G0 vanishes");
  }
  return numerator / denominator;
}

FejerTrace sharpness_trace(const Generator& gen, int k, const Lattice& lattice,
                           std::span<const int> orders, const ExtremalOptions& opts) {
  check_orders(orders);
  const BernsteinConstant b = bernstein_constant(gen, k, lattice, opts.constant);
  FejerTrace trace;
  trace.constant = b.value;
  trace.center = b.argmax;
  for (int n : orders) {
    const double r = extremal_ratio(gen, k, lattice, n, b.argmax.front(), opts);
    trace.orders.push_back(n);
    trace.ratios.push_back(r);
    trace.gaps.push_back(b.value - r);
  }
  return trace;
}

FejerTrace sharpness_trace_nd(const Generator& gen, std::span<const int> k,
                              std::span<const int> orders, const ExtremalOptions& opts) {
  check_orders(orders);
  const BernsteinConstant b = bernstein_constant_nd(gen, k, opts.constant);
  FejerTrace trace;
  trace.constant = b.value;
  trace.center = b.argmax;
  for (int n : orders) {
    const double r = extremal_ratio_nd(gen, k, n, b.argmax, ExtremalMethod::factorized, opts);
    trace.orders.push_back(n);
    trace.ratios.push_back(r);
    trace.gaps.push_back(b.value - r);
  }
  return trace;
}

}  // namespace siss
