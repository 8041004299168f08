#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace siss::cli {

enum class Format { json, csv };

/// One parsed command line.
struct RunConfig {
  std::string subcommand;
  /// Path to a generator JSON file, or the JSON text itself when it starts with '{'.
  std::string generator;
  std::vector<int> k{1};
  double step = 1.0;
  std::optional<double> scaled_a;
  int grid = 4096;
  double refine_tol = 1e-10;
  double tail_tol = 1e-12;
  int trials = 1000;
  int support = 8;
  std::uint64_t seed = 42;
  std::vector<int> orders{8, 16, 32, 64, 128, 256, 512, 1024};
  int samples = 2048;
  std::string coefficients;
  /// Unset: CSV for sharpness and profile, JSON otherwise.
  std::optional<Format> format;
  std::string out;

  void validate() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDivergent = 3;
inline constexpr int kExitConvergence = 4;

/// Runs one subcommand. `args` excludes the program name. Results go to `out`
/// (or the --out file), diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace siss::cli
