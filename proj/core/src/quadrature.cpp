#include "siss/quadrature.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "siss/errors.hpp"
#include "siss/summation.hpp"

namespace siss {

namespace {

bool converged(double previous, double current, double rel_tol) {
  const double diff = std::abs(current - previous);
  return diff == 0.0 || diff <= rel_tol * std::abs(current);
}

[[noreturn]] void throw_cap(const char* where, std::size_t nodes, double previous,
                            double current) {
  std::ostringstream msg;
  msg.precision(17);
  msg << where << ": no convergence at " << nodes << " nodes (last values " << previous
      << ", " << current << ")";
  throw ConvergenceError(msg.str(), previous, current);
}

}  // namespace

QuadratureResult periodic_integral(const std::function<double(double)>& integrand,
                                   double period, const QuadratureOptions& opts) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InputError("periodic_integral: period must be positive and finite");
  }
  if (opts.min_nodes < 1 || !(opts.rel_tol > 0.0)) {
    throw InputError("periodic_integral: min_nodes >= 1 and rel_tol > 0 required");
  }

  std::size_t m = opts.min_nodes;
  CompensatedSum sum;
  for (std::size_t j = 0; j < m; ++j) {
    sum.add(integrand(period * (static_cast<double>(j) / static_cast<double>(m))));
  }
  double raw = sum.value();  // sum of samples over all m nodes
  double current = raw * period / static_cast<double>(m);
  double previous = current;

  while (true) {
    const std::size_t next = 2 * m;
    if (next > opts.max_nodes) throw_cap("periodic_integral", m, previous, current);
    CompensatedSum mid;
    mid.add(raw);
    for (std::size_t j = 0; j < m; ++j) {
      const double x = period * (static_cast<double>(2 * j + 1) / static_cast<double>(next));
      mid.add(integrand(x));
    }
    raw = mid.value();
    previous = current;
    current = raw * period / static_cast<double>(next);
    m = next;
    if (!std::isfinite(current)) {
      throw ConvergenceError("periodic_integral: integrand is not finite on the period",
                             previous, current);
    }
    if (converged(previous, current, opts.rel_tol)) {
      return {current, std::abs(current - previous), m};
    }
  }
}

QuadratureResult periodic_integral_nd(
    const std::function<double(std::span<const double>)>& integrand,
    std::span<const double> periods, const QuadratureOptions& opts) {
  const std::size_t d = periods.size();
  if (d == 0 || d > 3) {
    throw InputError("periodic_integral_nd: dimension must be 1, 2 or 3");
  }
  for (double p : periods) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw InputError("periodic_integral_nd: periods must be positive and finite");
    }
  }
  if (opts.min_nodes < 1 || !(opts.rel_tol > 0.0)) {
    throw InputError("periodic_integral_nd: min_nodes >= 1 and rel_tol > 0 required");
  }

  auto total = [d](std::size_t m) {
    std::size_t t = 1;
    for (std::size_t s = 0; s < d; ++s) t *= m;
    return t;
  };

  auto rule = [&](std::size_t m) {
    std::array<double, 3> w{};
    std::array<std::size_t, 3> idx{};
    CompensatedSum sum;
    const std::size_t count = total(m);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rest = flat;
      for (std::size_t s = 0; s < d; ++s) {
        idx[s] = rest % m;
        rest /= m;
        w[s] = periods[s] * (static_cast<double>(idx[s]) / static_cast<double>(m));
      }
      sum.add(integrand(std::span<const double>(w.data(), d)));
    }
    double cell = 1.0;
    for (std::size_t s = 0; s < d; ++s) cell *= periods[s] / static_cast<double>(m);
    return sum.value() * cell;
  };

  std::size_t m = opts.min_nodes;
  if (total(m) > opts.max_nodes) {
    throw InputError("periodic_integral_nd: min_nodes^d exceeds max_nodes");
  }
  double current = rule(m);
  double previous = current;
  while (true) {
    if (total(2 * m) > opts.max_nodes) {
      throw_cap("periodic_integral_nd", total(m), previous, current);
    }
    previous = current;
    m *= 2;
    current = rule(m);
    if (!std::isfinite(current)) {
      throw ConvergenceError("periodic_integral_nd: integrand is not finite on the box",
                             previous, current);
    }
    if (converged(previous, current, opts.rel_tol)) {
      return {current, std::abs(current - previous), total(m)};
    }
  }
}

}  // namespace siss
