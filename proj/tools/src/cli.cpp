#include "siss/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "siss/siss.hpp"

namespace siss::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_inline_json(const std::string& s) {
  const auto pos = s.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && s[pos] == '{';
}

GeneratorSpec read_spec(const std::string& generator) {
  if (is_inline_json(generator)) {
    return parse_generator_spec(generator, std::filesystem::current_path());
  }
  return load_generator_spec(generator);
}

Generator apply_scaling(const Generator& gen, const std::optional<double>& a) {
  if (!a) return gen;
  if (gen.dimension() == 1) return dilate(gen, *a);
  if (!gen.is_tensor()) throw InputError("--scaled-a needs a one-dimensional or tensor generator");
  std::vector<Generator> axes;
  for (std::size_t s = 0; s < gen.dimension(); ++s) axes.push_back(dilate(gen.axis(s), *a));
  return tensorize(axes);
}

ConstantOptions constant_options(const RunConfig& c) {
  ConstantOptions o;
  o.grid_size = c.grid;
  o.refine_tol = c.refine_tol;
  o.tail_tol = c.tail_tol;
  return o;
}

int single_k(const RunConfig& c) {
  if (c.k.size() != 1) {
    throw InputError("--k takes one value for '" + c.subcommand +
                     "'; use constant-nd for multi-indices");
  }
  return c.k.front();
}

void require_1d(const Generator& gen, const std::string& what) {
  if (gen.dimension() != 1) {
    throw InputError(what + " needs a one-dimensional generator, '" + gen.name() +
                     "' has dimension " + std::to_string(gen.dimension()));
  }
}

Format format_or(const RunConfig& c, Format fallback) {
  return c.format.value_or(fallback);
}

ordered_json config_json(const RunConfig& c, const GeneratorSpec& spec) {
  ordered_json j;
  j["subcommand"] = c.subcommand;
  j["generator"] = ordered_json::parse(to_json(spec));
  if (c.k.size() == 1) {
    j["k"] = c.k.front();
  } else {
    j["k"] = c.k;
  }
  j["step"] = c.step;
  j["scaled_a"] = c.scaled_a ? ordered_json(*c.scaled_a) : ordered_json(nullptr);
  return j;
}

ordered_json argmax_json(const std::vector<double>& argmax) {
  if (argmax.size() == 1) return argmax.front();
  return argmax;
}

void constant_body(ordered_json& j, const BernsteinConstant& b, const RunConfig& c) {
  j["grid"] = c.grid;
  j["refine_tol"] = c.refine_tol;
  j["tail_tol"] = c.tail_tol;
  j["value"] = b.value;
  j["sqrt_value"] = std::sqrt(b.value);
  j["argmax"] = argmax_json(b.argmax);
  j["tail_bound"] = b.tail_bound;
  j["grid_size"] = b.grid_size;
  j["refined"] = b.refined;
  j["lower_estimate"] = b.lower_estimate;
}

std::string constant_csv(const BernsteinConstant& b) {
  std::ostringstream os;
  os << "value,sqrt_value,";
  for (std::size_t s = 0; s < b.argmax.size(); ++s) {
    os << (b.argmax.size() == 1 ? std::string("argmax") : "argmax_" + std::to_string(s)) << ',';
  }
  os << "tail_bound,grid_size,refined,lower_estimate\n";
  os << csv_number(b.value) << ',' << csv_number(std::sqrt(b.value)) << ',';
  for (double w : b.argmax) os << csv_number(w) << ',';
  os << csv_number(b.tail_bound) << ',' << b.grid_size << ',' << (b.refined ? "true" : "false")
     << ',' << (b.lower_estimate ? "true" : "false") << '\n';
  return os.str();
}

std::string run_constant(const RunConfig& c) {
  const GeneratorSpec spec = read_spec(c.generator);
  const Generator gen = apply_scaling(make_generator(spec), c.scaled_a);
  require_1d(gen, "constant");
  const BernsteinConstant b =
      bernstein_constant(gen, single_k(c), Lattice{c.step}, constant_options(c));
  if (format_or(c, Format::json) == Format::csv) return constant_csv(b);
  ordered_json j = config_json(c, spec);
  constant_body(j, b, c);
  return j.dump(2) + "\n";
}

std::string run_constant_nd(const RunConfig& c) {
  const GeneratorSpec spec = read_spec(c.generator);
  const Generator gen = apply_scaling(make_generator(spec), c.scaled_a);
  if (c.step != 1.0) throw InputError("constant-nd works on the integer lattice; --step must be 1");
  const BernsteinConstant b = bernstein_constant_nd(gen, c.k, constant_options(c));
  if (format_or(c, Format::json) == Format::csv) return constant_csv(b);
  ordered_json j = config_json(c, spec);
  constant_body(j, b, c);
  return j.dump(2) + "\n";
}

std::string run_verify(const RunConfig& c) {
  const GeneratorSpec spec = read_spec(c.generator);
  const Generator gen = apply_scaling(make_generator(spec), c.scaled_a);
  require_1d(gen, "verify");
  VerifyOptions opts;
  opts.constant = constant_options(c);
  const VerificationReport r =
      verify_inequality(gen, single_k(c), Lattice{c.step}, c.trials, c.support, c.seed, opts);
  if (format_or(c, Format::json) == Format::csv) {
    std::ostringstream os;
    os << "trials,constant,max_ratio,argmax_seed_index,margin,allowance,pass\n"
       << r.trials << ',' << csv_number(r.constant) << ',' << csv_number(r.max_ratio) << ','
       << r.argmax_seed_index << ',' << csv_number(r.margin) << ',' << csv_number(r.allowance)
       << ',' << (r.pass ? "true" : "false") << '\n';
    return os.str();
  }
  ordered_json j = config_json(c, spec);
  j["grid"] = c.grid;
  j["refine_tol"] = c.refine_tol;
  j["tail_tol"] = c.tail_tol;
  j["support"] = c.support;
  j["seed"] = c.seed;
  j["trials"] = r.trials;
  j["constant"] = r.constant;
  j["max_ratio"] = r.max_ratio;
  j["argmax_seed_index"] = r.argmax_seed_index;
  j["margin"] = r.margin;
  j["allowance"] = r.allowance;
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

std::string run_sharpness(const RunConfig& c) {
  const GeneratorSpec spec = read_spec(c.generator);
  const Generator gen = apply_scaling(make_generator(spec), c.scaled_a);
  ExtremalOptions opts;
  opts.constant = constant_options(c);
  opts.tail_tol = c.tail_tol;
  FejerTrace t;
  if (gen.dimension() == 1) {
    t = sharpness_trace(gen, single_k(c), Lattice{c.step}, c.orders, opts);
  } else {
    if (c.step != 1.0) throw InputError("multidimensional sharpness works on Z^d; --step must be 1");
    t = sharpness_trace_nd(gen, c.k, c.orders, opts);
  }
  if (format_or(c, Format::csv) == Format::csv) {
    std::ostringstream os;
    os << "n,ratio,gap\n";
    for (std::size_t i = 0; i < t.orders.size(); ++i) {
      os << t.orders[i] << ',' << csv_number(t.ratios[i]) << ',' << csv_number(t.gaps[i]) << '\n';
    }
    return os.str();
  }
  ordered_json j = config_json(c, spec);
  j["constant"] = t.constant;
  j["center"] = argmax_json(t.center);
  j["orders"] = t.orders;
  j["ratios"] = t.ratios;
  j["gaps"] = t.gaps;
  return j.dump(2) + "\n";
}

std::string run_profile(const RunConfig& c) {
  const GeneratorSpec spec = read_spec(c.generator);
  const Generator gen = apply_scaling(make_generator(spec), c.scaled_a);
  require_1d(gen, "profile");
  const int k = single_k(c);
  const Lattice lattice{c.step};
  require_finite(gen, k, lattice);
  const double period = lattice.frequency_period();
  std::vector<double> omega(c.samples), gk(c.samples), g0(c.samples), ratio(c.samples);
  for (int j = 0; j < c.samples; ++j) {
    omega[j] = period * (static_cast<double>(j) / c.samples);
    gk[j] = bracket(gen, k, omega[j], lattice, c.tail_tol).value;
    g0[j] = bracket(gen, 0, omega[j], lattice, c.tail_tol).value;
    ratio[j] = g0[j] > 0.0 ? gk[j] / g0[j] : std::nan("");
  }
  if (format_or(c, Format::csv) == Format::csv) {
    std::ostringstream os;
    os << "omega,G_k,G_0,ratio\n";
    for (int j = 0; j < c.samples; ++j) {
      os << csv_number(omega[j]) << ',' << csv_number(gk[j]) << ',' << csv_number(g0[j]) << ','
         << csv_number(ratio[j]) << '\n';
    }
    return os.str();
  }
  ordered_json j = config_json(c, spec);
  j["tail_tol"] = c.tail_tol;
  j["omega"] = omega;
  j["G_k"] = gk;
  j["G_0"] = g0;
  ordered_json r = ordered_json::array();
  for (double x : ratio) r.push_back(std::isnan(x) ? ordered_json(nullptr) : ordered_json(x));
  j["ratio"] = r;
  return j.dump(2) + "\n";
}

std::string run_ratio(const RunConfig& c) {
  const GeneratorSpec spec = read_spec(c.generator);
  const Generator gen = apply_scaling(make_generator(spec), c.scaled_a);
  require_1d(gen, "ratio");
  if (c.coefficients.empty()) throw InputError("ratio needs --coefficients");
  const int k = single_k(c);
  const FiniteSissFunction f = load_coefficients_csv(c.coefficients, Lattice{c.step}, gen);
  NormOptions opts;
  opts.tail_tol = c.tail_tol;
  const double n0 = norm_sq(f, opts);
  const double nk = derivative_norm_sq(f, k, opts);
  if (!(n0 > 0.0)) throw InputError("ratio: the coefficients describe the zero function");
  if (format_or(c, Format::json) == Format::csv) {
    return "norm_sq,derivative_norm_sq,ratio\n" + csv_number(n0) + ',' + csv_number(nk) + ',' +
           csv_number(nk / n0) + '\n';
  }
  ordered_json j = config_json(c, spec);
  j["tail_tol"] = c.tail_tol;
  j["first_index"] = f.first_index;
  j["last_index"] = f.last_index();
  j["norm_sq"] = n0;
  j["derivative_norm_sq"] = nk;
  j["ratio"] = nk / n0;
  return j.dump(2) + "\n";
}

void add_generator(CLI::App* sub, RunConfig& c) {
  sub->add_option("-g,--generator", c.generator, "Generator JSON file or inline JSON object")
      ->required();
  sub->add_option("--scaled-a", c.scaled_a, "Dilation factor a: space of phi(x/a) shifts");
  sub->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}))
      ->option_text("json|csv");
  sub->add_option("-o,--out", c.out, "Write the result to this file instead of stdout");
  sub->add_option("--tail-tol", c.tail_tol, "Relative tail tolerance of lattice sums");
}

void add_lattice(CLI::App* sub, RunConfig& c) {
  sub->add_option("--step", c.step, "Lattice step h");
}

void add_constant_opts(CLI::App* sub, RunConfig& c) {
  sub->add_option("--grid", c.grid, "Initial scan grid size");
  sub->add_option("--refine-tol", c.refine_tol, "Golden-section tolerance");
}

void add_k(CLI::App* sub, RunConfig& c, const char* help) {
  sub->add_option("-k,--k", c.k, help)->delimiter(',');
}

}  // namespace

void RunConfig::validate() const {
  if (generator.empty()) throw InputError("--generator is required");
  if (k.empty()) throw InputError("--k needs at least one component");
  for (int v : k) {
    if (v < 0) throw InputError("derivative order components must be >= 0");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw InputError("--step must be positive");
  if (scaled_a && (!(*scaled_a > 0.0) || !std::isfinite(*scaled_a))) {
    throw InputError("--scaled-a must be positive");
  }
  if (grid < 16) throw InputError("--grid must be >= 16");
  if (!(refine_tol > 0.0)) throw InputError("--refine-tol must be positive");
  if (!(tail_tol > 0.0)) throw InputError("--tail-tol must be positive");
  if (trials < 0) throw InputError("--trials must be >= 0");
  if (support < 0) throw InputError("--support must be >= 0");
  if (samples < 1) throw InputError("--samples must be >= 1");
  if (orders.empty()) throw InputError("--orders must be non-empty");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 0) throw InputError("--orders must be >= 0");
    if (i > 0 && orders[i] <= orders[i - 1]) throw InputError("--orders must be strictly increasing");
  }
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    std::string result;
    if (config.subcommand == "constant") {
      result = run_constant(config);
    } else if (config.subcommand == "constant-nd") {
      result = run_constant_nd(config);
    } else if (config.subcommand == "verify") {
      result = run_verify(config);
    } else if (config.subcommand == "sharpness") {
      result = run_sharpness(config);
    } else if (config.subcommand == "profile") {
      result = run_profile(config);
    } else if (config.subcommand == "ratio") {
      result = run_ratio(config);
    } else {
      throw InputError("unknown subcommand '" + config.subcommand + "'");
    }
    if (config.out.empty()) {
      out << result;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw InputError("cannot write " + config.out);
      file << result;
      if (!file) throw InputError("error writing " + config.out);
    }
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DivergentSeriesError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergent;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Bernstein constants in shift-invariant spaces", "siss"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto* constant = app.add_subcommand("constant", "Sharp constant B with ||f^(k)||^2 <= B ||f||^2");
  add_generator(constant, c);
  add_k(constant, c, "Derivative order");
  add_lattice(constant, c);
  add_constant_opts(constant, c);

  auto* constant_nd = app.add_subcommand("constant-nd", "Constant of a tensor generator on Z^d");
  add_generator(constant_nd, c);
  add_k(constant_nd, c, "Derivative multi-index, e.g. 1,1");
  add_constant_opts(constant_nd, c);

  auto* verify = app.add_subcommand("verify", "Check the inequality on seeded random functions");
  add_generator(verify, c);
  add_k(verify, c, "Derivative order");
  add_lattice(verify, c);
  add_constant_opts(verify, c);
  verify->add_option("--trials", c.trials, "Number of random functions");
  verify->add_option("--support", c.support, "Coefficients on [-support, support]");
  verify->add_option("--seed", c.seed, "Base seed");

  auto* sharpness = app.add_subcommand("sharpness", "Fejer-kernel ratios approaching the constant");
  add_generator(sharpness, c);
  add_k(sharpness, c, "Derivative order or multi-index");
  add_lattice(sharpness, c);
  add_constant_opts(sharpness, c);
  sharpness->add_option("--orders", c.orders, "Strictly increasing kernel orders")->delimiter(',');

  auto* profile = app.add_subcommand("profile", "G_k, G_0 and their ratio over one period");
  add_generator(profile, c);
  add_k(profile, c, "Derivative order");
  add_lattice(profile, c);
  profile->add_option("--samples", c.samples, "Number of equispaced frequencies");

  auto* ratio = app.add_subcommand("ratio", "Norm ratio of a function given by coefficients");
  add_generator(ratio, c);
  add_k(ratio, c, "Derivative order");
  add_lattice(ratio, c);
  ratio->add_option("--coefficients", c.coefficients, "CSV with columns gamma,re,im")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  return execute(c, out, err);
}

}  // namespace siss::cli
