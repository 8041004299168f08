#include "siss/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "siss/errors.hpp"

namespace siss {

namespace {

constexpr double kNotInSpace = -std::numeric_limits<double>::infinity();

struct Sample {
  double ratio = kNotInSpace;
  double tail = 0.0;
};

class RatioEvaluator {
 public:
  RatioEvaluator(const Generator& gen, int k, const Lattice& lattice, double tail_tol)
      : gen_(gen), k_(k), lattice_(lattice), tail_tol_(tail_tol) {}

  Sample operator()(double w) const {
    const PeriodizationValue gk = bracket(gen_, k_, w, lattice_, tail_tol_);
    if (gen_.is_orthonormal() && lattice_.step == 1.0) return {gk.value, gk.tail_bound};
    const PeriodizationValue g0 = k_ == 0 ? gk : bracket(gen_, 0, w, lattice_, tail_tol_);
    if (!(g0.value > 0.0)) return {};
    const double r = gk.value / g0.value;
    // d(gk/g0) with gk up by t_k and g0 within [g0, g0 + t_0]
    return {r, gk.tail_bound / g0.value + r * g0.tail_bound / g0.value};
  }

 private:
  Generator gen_;
  int k_;
  Lattice lattice_;
  double tail_tol_;
};

struct Best {
  double omega = 0.0;
  Sample sample;
};

void consider(Best& best, double w, const Sample& s) {
  if (s.ratio > best.sample.ratio) {
    best.omega = w;
    best.sample = s;
  }
}

// Golden-section search for a maximum on [lo, hi]; returns the best point seen.
Best golden_max(const RatioEvaluator& eval, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Best best;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  Sample fc = eval(c);
  Sample fd = eval(d);
  consider(best, c, fc);
  consider(best, d, fd);
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    if (fc.ratio >= fd.ratio) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = eval(c);
      consider(best, c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = eval(d);
      consider(best, d, fd);
    }
  }
  return best;
}

}  // namespace

BernsteinConstant bernstein_constant(const Generator& gen, int k, const Lattice& lattice,
                                     const ConstantOptions& opts) {
  if (opts.grid_size < 16) {
    throw InputError("bernstein_constant: grid_size must be >= 16, got " +
                     std::to_string(opts.grid_size));
  }
  if (!(opts.refine_tol > 0.0)) throw InputError("bernstein_constant: refine_tol must be positive");
  if (gen.dimension() != 1) {
    throw InputError("bernstein_constant: generator is multidimensional; use bernstein_constant_nd");
  }
  require_finite(gen, k, lattice);

  const double period = lattice.frequency_period();
  const RatioEvaluator eval(gen, k, lattice, opts.tail_tol);

  Best overall;
  int grid = opts.grid_size;
  for (int doubling = 0; doubling <= 2; ++doubling, grid *= 2) {
    Best on_grid;
    const double cell = period / grid;
    for (int j = 0; j < grid; ++j) {
      const double w = period * (static_cast<double>(j) / grid);
      consider(on_grid, w, eval(w));
    }
    if (on_grid.sample.ratio == kNotInSpace) {
      throw InputError("bernstein_constant: G0 vanishes on the whole grid; the space is trivial");
    }
    Best refined = on_grid;
    const Best local =
        golden_max(eval, on_grid.omega - cell, on_grid.omega + cell, opts.refine_tol);
    consider(refined, local.omega, local.sample);
    consider(overall, refined.omega, refined.sample);

    const double gain = refined.sample.ratio - on_grid.sample.ratio;
    if (!(gain > 1e-6 * std::abs(on_grid.sample.ratio)) || doubling == 2) break;
  }

  BernsteinConstant out;
  out.value = overall.sample.ratio;
  out.argmax = {reduce_to_period(overall.omega, period)};
  out.tail_bound = overall.sample.tail;
  out.grid_size = grid;
  out.refined = true;
  out.lower_estimate = gen.is_tabulated();
  return out;
}

BernsteinConstant bernstein_constant_scaled(const Generator& gen, int k, double a,
                                            const ConstantOptions& opts) {
  return bernstein_constant(dilate(gen, a), k, Lattice{}, opts);
}

BernsteinConstant bernstein_constant_nd(const Generator& gen, std::span<const int> k,
                                        const ConstantOptions& opts) {
  const std::size_t d = gen.dimension();
  if (k.size() != d) {
    throw InputError("bernstein_constant_nd: multi-index must have " + std::to_string(d) +
                     " components");
  }
  if (d == 1) return bernstein_constant(gen, k[0], Lattice{}, opts);
  if (!gen.is_tensor()) {
    throw UnsupportedGeneratorError("bernstein_constant_nd: '" + gen.name() +
                                    "' is not a tensor product");
  }
  BernsteinConstant out;
  out.value = 1.0;
  double upper = 1.0;
  out.refined = true;
  for (std::size_t s = 0; s < d; ++s) {
    const BernsteinConstant axis = bernstein_constant(gen.axis(s), k[s], Lattice{}, opts);
    out.value *= axis.value;
    upper *= axis.value + axis.tail_bound;
    out.argmax.push_back(axis.argmax.front());
    out.grid_size = std::max(out.grid_size, axis.grid_size);
    out.refined = out.refined && axis.refined;
    out.lower_estimate = out.lower_estimate || axis.lower_estimate;
  }
  out.tail_bound = std::max(0.0, upper - out.value);
  return out;
}

}  // namespace siss
