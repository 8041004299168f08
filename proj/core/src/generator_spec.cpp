#include "siss/generator_spec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "siss/errors.hpp"

namespace siss {

namespace {

using nlohmann::json;

GeneratorKind parse_kind(const std::string& s) {
  static const std::pair<const char*, GeneratorKind> kinds[] = {
      {"shannon", GeneratorKind::shannon},   {"bspline", GeneratorKind::bspline},
      {"gaussian", GeneratorKind::gaussian}, {"dilated", GeneratorKind::dilated},
      {"orthonormalized", GeneratorKind::orthonormalized},
      {"tensor", GeneratorKind::tensor},     {"tabulated", GeneratorKind::tabulated},
  };
  for (const auto& [name, kind] : kinds) {
    if (s == name) return kind;
  }
  throw InputError("generator spec: unknown kind '" + s + "'");
}

template <typename T>
T required(const json& j, const char* key, const char* kind) {
  if (!j.contains(key)) {
    throw InputError(std::string("generator spec: '") + kind + "' needs field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("generator spec: field '") + key + "' has the wrong type");
  }
}

SpectralEnvelope parse_envelope(const json& j) {
  if (!j.is_object()) throw InputError("generator spec: envelope must be an object");
  SpectralEnvelope env;
  const auto mode = required<std::string>(j, "mode", "envelope");
  if (mode == "polynomial") {
    env.mode = EnvelopeMode::polynomial;
  } else if (mode == "super_exponential") {
    env.mode = EnvelopeMode::super_exponential;
  } else {
    throw InputError("generator spec: envelope mode must be 'polynomial' or 'super_exponential'");
  }
  env.amplitude = required<double>(j, "c", "envelope");
  env.exponent = required<double>(j, "p", "envelope");
  if (j.contains("band_limit")) env.band_limit = required<double>(j, "band_limit", "envelope");
  env.validate();
  return env;
}

GeneratorSpec from_json(const json& j, const std::filesystem::path& base_dir, int depth) {
  if (depth > 64) throw InputError("generator spec: nesting too deep");
  if (!j.is_object()) throw InputError("generator spec: expected a JSON object");
  GeneratorSpec spec;
  spec.kind = parse_kind(required<std::string>(j, "kind", "generator"));
  switch (spec.kind) {
    case GeneratorKind::shannon:
      break;
    case GeneratorKind::bspline:
      spec.order = required<int>(j, "order", "bspline");
      break;
    case GeneratorKind::gaussian:
      spec.sigma = required<double>(j, "sigma", "gaussian");
      break;
    case GeneratorKind::dilated:
      spec.a = required<double>(j, "a", "dilated");
      spec.inner.push_back(from_json(required<json>(j, "inner", "dilated"), base_dir, depth + 1));
      break;
    case GeneratorKind::orthonormalized:
      spec.inner.push_back(
          from_json(required<json>(j, "inner", "orthonormalized"), base_dir, depth + 1));
      break;
    case GeneratorKind::tensor: {
      const json axes = required<json>(j, "axes", "tensor");
      if (!axes.is_array()) throw InputError("generator spec: tensor 'axes' must be an array");
      for (const auto& ax : axes) spec.inner.push_back(from_json(ax, base_dir, depth + 1));
      break;
    }
    case GeneratorKind::tabulated: {
      std::filesystem::path file = required<std::string>(j, "file", "tabulated");
      spec.file = file.is_relative() && !base_dir.empty() ? base_dir / file : file;
      if (!j.contains("envelope")) {
        throw InputError("generator spec: tabulated generators must declare an envelope");
      }
      spec.envelope = parse_envelope(j.at("envelope"));
      break;
    }
    case GeneratorKind::custom:
      break;
  }
  spec.validate();
  return spec;
}

json envelope_json(const SpectralEnvelope& env) {
  json j = {{"mode", env.mode == EnvelopeMode::polynomial ? "polynomial" : "super_exponential"},
            {"c", env.amplitude},
            {"p", env.exponent}};
  if (env.band_limited()) j["band_limit"] = env.band_limit;
  return j;
}

json spec_json(const GeneratorSpec& s) {
  json j = {{"kind", to_string(s.kind)}};
  switch (s.kind) {
    case GeneratorKind::bspline: j["order"] = s.order; break;
    case GeneratorKind::gaussian: j["sigma"] = s.sigma; break;
    case GeneratorKind::dilated:
      j["a"] = s.a;
      j["inner"] = spec_json(s.inner.at(0));
      break;
    case GeneratorKind::orthonormalized: j["inner"] = spec_json(s.inner.at(0)); break;
    case GeneratorKind::tensor: {
      json axes = json::array();
      for (const auto& ax : s.inner) axes.push_back(spec_json(ax));
      j["axes"] = axes;
      break;
    }
    case GeneratorKind::tabulated:
      j["file"] = s.file.string();
      if (s.envelope) j["envelope"] = envelope_json(*s.envelope);
      break;
    default: break;
  }
  return j;
}

}  // namespace

void GeneratorSpec::validate() const {
  switch (kind) {
    case GeneratorKind::shannon:
      break;
    case GeneratorKind::bspline:
      if (order < 1) throw InputError("bspline: order must be >= 1, got " + std::to_string(order));
      break;
    case GeneratorKind::gaussian:
      if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("gaussian: sigma must be > 0");
      break;
    case GeneratorKind::dilated:
      if (!(a > 0.0) || !std::isfinite(a)) throw InputError("dilated: a must be > 0");
      if (inner.size() != 1) throw InputError("dilated: exactly one inner spec required");
      break;
    case GeneratorKind::orthonormalized:
      if (inner.size() != 1) throw InputError("orthonormalized: exactly one inner spec required");
      break;
    case GeneratorKind::tensor:
      if (inner.empty()) throw InputError("tensor: axis list must be non-empty");
      break;
    case GeneratorKind::tabulated:
      if (!envelope) throw InputError("tabulated: envelope required");
      if (file.empty()) throw InputError("tabulated: file required");
      break;
    case GeneratorKind::custom:
      throw InputError("custom generators have no declarative spec");
  }
  for (const auto& child : inner) child.validate();
}

GeneratorSpec parse_generator_spec(std::string_view text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("generator spec: invalid JSON: ") + e.what());
  }
  return from_json(j, base_dir, 0);
}

GeneratorSpec load_generator_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read generator spec " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_generator_spec(buf.str(), path.parent_path());
}

std::string to_json(const GeneratorSpec& spec) { return spec_json(spec).dump(); }

std::vector<SpectrumSample> load_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read tabulated spectrum " + path.string());
  std::vector<SpectrumSample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line_no == 1 && line.find("omega") != std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    SpectrumSample s;
    if (!(fields >> s.omega >> s.value)) {
      throw InputError(path.string() + ":" + std::to_string(line_no) +
                       ": expected 'omega,phihat_sq'");
    }
    samples.push_back(s);
  }
  return samples;
}

Generator make_generator(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case GeneratorKind::shannon: return shannon();
    case GeneratorKind::bspline: return bspline(spec.order);
    case GeneratorKind::gaussian: return gaussian(spec.sigma);
    case GeneratorKind::dilated: return dilate(make_generator(spec.inner[0]), spec.a);
    case GeneratorKind::orthonormalized: return orthonormalize(make_generator(spec.inner[0]));
    case GeneratorKind::tensor: {
      std::vector<Generator> axes;
      for (const auto& ax : spec.inner) axes.push_back(make_generator(ax));
      return tensorize(axes);
    }
    case GeneratorKind::tabulated:
      return tabulated(load_spectrum_csv(spec.file), *spec.envelope, spec.file.filename().string());
    case GeneratorKind::custom: break;
  }
  throw InputError("make_generator: unsupported kind");
}

}  // namespace siss
