#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "ptkl/moment_summary.hpp"

namespace ptkl {

struct ComparisonThresholds {
  double max_abs_z_mean = 4.0;
  double max_rel_err_var = 0.10;
};

/// Closed-form moments checked against a Monte Carlo summary.
struct ComparisonReport {
  enum class Kind {
    Moments,     // |z_mean| and relative variance error within thresholds
    UpperBound,  // empirical mean must not exceed closed_mean
    Info,        // recorded only, never fails
  };

  std::string label;
  Kind kind = Kind::Moments;
  double closed_mean = 0.0;
  std::optional<double> closed_var;
  MomentSummary empirical;
  double z_mean = 0.0;
  std::optional<double> rel_err_var;
  /// (emp_var - closed_var) / SE under a normal approximation,
  /// SE = closed_var * sqrt(2 / (count - 1)). Reported, not gated.
  std::optional<double> z_var;
  bool mean_pass = true;
  bool var_pass = true;

  bool passed() const { return mean_pass && var_pass; }
};

/// Requires summary.count() >= 100.
ComparisonReport compare(std::string label, const MomentSummary& summary, double closed_mean,
                         std::optional<double> closed_var,
                         const ComparisonThresholds& thresholds = {});

ComparisonReport compare_upper_bound(std::string label, const MomentSummary& summary,
                                     double bound);

ComparisonReport info_row(std::string label, const MomentSummary& summary);

/// label,n_draws,closed_mean,emp_mean,z_mean,closed_var,emp_var,rel_err_var,inf_count,pass
void write_report_csv(std::ostream& out, std::span<const ComparisonReport> reports);

}  // namespace ptkl
