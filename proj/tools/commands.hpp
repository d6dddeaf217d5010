#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ptkl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable consulted for the master seed when --seed is absent.
inline constexpr const char* kSeedEnv = "PTKL_SEED";

struct RunConfig {
  std::string command;
  std::uint64_t seed = 42;
  unsigned workers = 4;
  std::string out = "-";

  // Grid parameters; empty lists mean "use the command's defaults".
  std::vector<double> alphas;
  std::vector<double> deltas;
  int levels = 10;
  std::vector<std::size_t> atoms;
  std::string schedule = "all";
  std::optional<std::uint64_t> draws;

  // pt-sensitivity: the parameter held fixed in each panel.
  double fixed_alpha = 1.0;
  double fixed_delta = 2.0;

  // pt-contour grid: alpha log-spaced, delta linear.
  double alpha_min = 0.05, alpha_max = 5.0;
  int alpha_steps = 25;
  double delta_min = 1.01, delta_max = 4.0;
  int delta_steps = 25;
};

/// Throws std::invalid_argument describing the first bad parameter.
void validate_config(const RunConfig& config);

void write_pt_moments(const RunConfig& config, std::ostream& out);
void write_pt_sensitivity(const RunConfig& config, std::ostream& out);
void write_pt_contour(const RunConfig& config, std::ostream& out);
void write_bootstrap_moments(const RunConfig& config, std::ostream& out);
/// Writes the comparison report; returns true when every gated row passed.
bool write_validation(const RunConfig& config, std::ostream& out);

/// Parses argv, dispatches, and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptkl::cli
