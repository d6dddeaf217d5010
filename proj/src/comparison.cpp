#include "ptkl/comparison.hpp"

#include <cmath>
#include <stdexcept>

#include "ptkl/csv.hpp"

namespace ptkl {
namespace {

constexpr std::uint64_t kMinCount = 100;

void require_count(const MomentSummary& s) {
  if (s.count() < kMinCount) {
    throw std::invalid_argument("compare: need at least 100 finite draws");
  }
}

}  // namespace

ComparisonReport compare(std::string label, const MomentSummary& summary, double closed_mean,
                         std::optional<double> closed_var, const ComparisonThresholds& thresholds) {
  require_count(summary);
  ComparisonReport r;
  r.label = std::move(label);
  r.kind = ComparisonReport::Kind::Moments;
  r.closed_mean = closed_mean;
  r.closed_var = closed_var;
  r.empirical = summary;
  const double se = summary.std_error();
  const double diff = summary.mean() - closed_mean;
  r.z_mean = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
  r.mean_pass = std::abs(r.z_mean) <= thresholds.max_abs_z_mean;
  if (closed_var) {
    const double emp = summary.variance();
    if (*closed_var != 0.0) {
      r.rel_err_var = std::abs(emp - *closed_var) / std::abs(*closed_var);
      const double se_var =
          std::abs(*closed_var) * std::sqrt(2.0 / static_cast<double>(summary.count() - 1));
      r.z_var = (emp - *closed_var) / se_var;
    } else {
      r.rel_err_var = emp == 0.0 ? 0.0 : INFINITY;
    }
    r.var_pass = *r.rel_err_var <= thresholds.max_rel_err_var;
  }
  return r;
}

ComparisonReport compare_upper_bound(std::string label, const MomentSummary& summary,
                                     double bound) {
  require_count(summary);
  ComparisonReport r;
  r.label = std::move(label);
  r.kind = ComparisonReport::Kind::UpperBound;
  r.closed_mean = bound;
  r.empirical = summary;
  r.z_mean = (summary.mean() - bound) / summary.std_error();
  r.mean_pass = summary.mean() <= bound;
  return r;
}

ComparisonReport info_row(std::string label, const MomentSummary& summary) {
  ComparisonReport r;
  r.label = std::move(label);
  r.kind = ComparisonReport::Kind::Info;
  r.closed_mean = NAN;
  r.empirical = summary;
  r.z_mean = NAN;
  return r;
}

void write_report_csv(std::ostream& out, std::span<const ComparisonReport> reports) {
  out << "label,n_draws,closed_mean,emp_mean,z_mean,closed_var,emp_var,rel_err_var,inf_count,pass\n";
  for (const auto& r : reports) {
    const bool info = r.kind == ComparisonReport::Kind::Info;
    out << r.label << ',' << r.empirical.total() << ','
        << (info ? std::string() : format_real(r.closed_mean)) << ','
        << (r.empirical.count() == 0 ? std::string() : format_real(r.empirical.mean())) << ','
        << (info ? std::string() : format_real(r.z_mean)) << ','
        << format_optional(r.closed_var) << ',' << format_real(r.empirical.variance()) << ','
        << format_optional(r.rel_err_var) << ',' << r.empirical.inf_count() << ','
        << (info ? "info" : (r.passed() ? "pass" : "fail")) << '\n';
  }
}

}  // namespace ptkl
