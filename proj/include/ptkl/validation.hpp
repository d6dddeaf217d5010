#pragma once

// The Monte-Carlo-versus-closed-form suite behind `ptkl validate`.

#include <cstdint>
#include <vector>

#include "ptkl/bootstrap.hpp"
#include "ptkl/comparison.hpp"

namespace ptkl {

struct ValidationConfig {
  std::uint64_t seed = 42;
  unsigned workers = 1;

  // Polya tree: four rho families at (alpha, delta, levels).
  std::uint64_t tree_draws = 200000;
  double tree_alpha = 1.0;
  double tree_delta = 2.0;
  int tree_levels = 6;

  // Generalised Bayesian bootstrap grid, uniform p.
  std::uint64_t bb_draws = 200000;
  std::vector<std::size_t> bb_atoms = {2, 10, 100};
  std::vector<double> bb_alphas = {0.5, 1.0, 2.0};
  std::vector<AlphaSchedule::Kind> bb_schedules = {
      AlphaSchedule::Kind::Constant, AlphaSchedule::Kind::Linear, AlphaSchedule::Kind::Quadratic};

  // Frequentist bootstrap.
  std::uint64_t fb_draws = 100000;
  std::size_t fb_atoms = 100;
  std::size_t fb_enumeration_atoms = 8;

  ComparisonThresholds thresholds{};
};

// Each group draws from its own block of stream ids, so running a group
// alone reproduces the rows it contributes to run_validation().
std::vector<ComparisonReport> validate_polya_tree(const ValidationConfig& cfg);
std::vector<ComparisonReport> validate_bayesian_bootstrap(const ValidationConfig& cfg);
std::vector<ComparisonReport> validate_freq_bootstrap(const ValidationConfig& cfg);

std::vector<ComparisonReport> run_validation(const ValidationConfig& cfg);

/// True when every non-informational row passed.
bool all_passed(const std::vector<ComparisonReport>& reports);

}  // namespace ptkl
