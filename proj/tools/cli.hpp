#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace cantor::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNumericalFailure = 1,
  kInvalidInput = 2,
  kNonConvergence = 3,
};

enum class PrecisionMode { Double, DoubleDouble, Auto };

struct RunConfig {
  std::string command;
  std::string gamma;               ///< descriptor text, e.g. "constant:1/6"
  bool chebyshev_limit = false;    ///< admit gamma = 1/4
  int levels = 10;                 ///< s_max
  int interval_levels = -1;        ///< intervals.csv depth; -1: min(levels, 12)
  int degree_max = 64;             ///< n_max (K for the jacobi command)
  int degree = -1;                 ///< zeros command; -1: degree_max
  int depth = 10;                  ///< refinement depth budget N
  double tol_stab = 1e-10;
  double tol_zero = 1e-9;          ///< exact vs eigensolve zeros
  double tol_eigen = 1e-15;        ///< bisection width relative to the spectral width
  double tol_containment = 1e-12;
  PrecisionMode precision = PrecisionMode::Double;
  std::optional<double> c;
  std::filesystem::path out = ".";
  std::optional<std::filesystem::path> jacobi;  ///< verify: read J instead of recovering it
  std::uint64_t seed = 1;
  int samples = 50;                ///< random triples / pairs in verify
  int trials = 100;                ///< branch words per level in verify

  /// Throws InvalidInput on any inconsistency (including n_max > 2^{N-2}).
  void validate() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

std::string_view precision_mode_name(PrecisionMode p);

/// Overlays keys of a JSON config object onto `cfg`. Unknown keys are rejected.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already-resolved configuration.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cantor::cli
