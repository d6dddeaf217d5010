#include "ptkl/validation.hpp"

#include <cmath>
#include <string>

#include "ptkl/csv.hpp"
#include "ptkl/kernels.hpp"
#include "ptkl/mc_harness.hpp"
#include "ptkl/polya_tree.hpp"

namespace ptkl {
namespace {

constexpr std::uint32_t kTreeStreams = 0x100;
constexpr std::uint32_t kBayesStreams = 0x200;
constexpr std::uint32_t kFreqStreams = 0x300;

EstimateConfig estimate_config(const ValidationConfig& cfg, std::uint64_t draws,
                               std::uint32_t stream_base) {
  return {draws, cfg.workers, cfg.seed, stream_base};
}

std::vector<double> ramp_weights(std::size_t n) {
  std::vector<double> p(n);
  const double total = static_cast<double>(n * (n + 1) / 2);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    p[i] = static_cast<double>(i + 1) / total;
    acc += p[i];
  }
  p[n - 1] = 1.0 - acc;
  return p;
}

}  // namespace

std::vector<ComparisonReport> validate_polya_tree(const ValidationConfig& cfg) {
  std::vector<ComparisonReport> out;
  std::uint32_t stream = kTreeStreams;
  for (const auto& family : all_rho_families(cfg.tree_delta)) {
    const PolyaTreeSpec spec(cfg.tree_alpha, family, cfg.tree_levels);
    const auto s = estimate_many(PolyaTreeKlKernel(spec),
                                 estimate_config(cfg, cfg.tree_draws, stream++));
    const std::string suffix = "/" + std::string(family.name()) +
                               "/alpha=" + format_real(cfg.tree_alpha) +
                               "/M=" + std::to_string(cfg.tree_levels);
    out.push_back(compare("pt_fwd" + suffix, s[0], mean_kl_forward(spec), var_kl_forward(spec),
                          cfg.thresholds));
    // The reverse variance is the literal A + B grouping; the label says so.
    out.push_back(compare("pt_rev" + suffix + "/var=literal_AB", s[1], mean_kl_reverse(spec), var_kl_reverse(spec),
                          cfg.thresholds));
  }
  return out;
}

std::vector<ComparisonReport> validate_bayesian_bootstrap(const ValidationConfig& cfg) {
  std::vector<ComparisonReport> out;
  std::uint32_t stream = kBayesStreams;
  for (auto kind : cfg.bb_schedules) {
    for (double alpha : cfg.bb_alphas) {
      for (std::size_t n : cfg.bb_atoms) {
        AlphaSchedule schedule = AlphaSchedule::constant(alpha);
        if (kind == AlphaSchedule::Kind::Linear) schedule = AlphaSchedule::linear(alpha);
        if (kind == AlphaSchedule::Kind::Quadratic) schedule = AlphaSchedule::quadratic(alpha);
        const auto model = DiscreteModel::uniform(n);
        const auto s = estimate_many(BayesianBootstrapKlKernel(model, schedule),
                                     estimate_config(cfg, cfg.bb_draws, stream++));
        const std::string suffix = "/" + std::string(schedule.name()) +
                                   "/alpha=" + format_real(alpha) + "/n=" + std::to_string(n);
        out.push_back(compare("bb_fwd" + suffix, s[0], bb_mean_forward(model, schedule),
                              bb_var_forward(model, schedule), cfg.thresholds));
        out.push_back(compare("bb_rev" + suffix, s[1], bb_mean_reverse(model, schedule),
                              bb_var_reverse(model, schedule), cfg.thresholds));
      }
    }
  }
  return out;
}

std::vector<ComparisonReport> validate_freq_bootstrap(const ValidationConfig& cfg) {
  std::vector<ComparisonReport> out;
  std::uint32_t stream = kFreqStreams;

  {
    const std::size_t n = cfg.fb_atoms;
    const auto model = DiscreteModel::uniform(n);
    const auto s = estimate_many(FreqBootstrapKlKernel(model),
                                 estimate_config(cfg, cfg.fb_draws, stream++));
    const std::string suffix = "/uniform/n=" + std::to_string(n);
    out.push_back(info_row("fb_fwd" + suffix, s[0]));
    out.push_back(compare_upper_bound("fb_rev_bound" + suffix, s[1],
                                      freq_bootstrap_mean_reverse_bound(model)));
    const double nd = static_cast<double>(n);
    out.push_back(compare("fb_zero_fraction" + suffix, s[2], std::pow(1.0 - 1.0 / nd, nd),
                          std::nullopt, cfg.thresholds));
  }

  // Small n: exact enumeration against Monte Carlo, uniform and ramp p.
  const std::size_t n = cfg.fb_enumeration_atoms;
  for (const auto& [name, model] : {std::pair{std::string("uniform"), DiscreteModel::uniform(n)},
                                    std::pair{std::string("ramp"), DiscreteModel(ramp_weights(n))}}) {
    const auto s = estimate_many(FreqBootstrapKlKernel(model),
                                 estimate_config(cfg, cfg.fb_draws, stream++));
    const std::string suffix = "/" + name + "/n=" + std::to_string(n);
    out.push_back(compare("fb_rev_exact" + suffix, s[1],
                          enumerate_freq_bootstrap_reverse_mean(model), std::nullopt,
                          cfg.thresholds));
    out.push_back(compare_upper_bound("fb_rev_bound" + suffix, s[1],
                                      freq_bootstrap_mean_reverse_bound(model)));
  }
  return out;
}

std::vector<ComparisonReport> run_validation(const ValidationConfig& cfg) {
  auto out = validate_polya_tree(cfg);
  for (auto&& group : {validate_bayesian_bootstrap(cfg), validate_freq_bootstrap(cfg)}) {
    out.insert(out.end(), group.begin(), group.end());
  }
  return out;
}

bool all_passed(const std::vector<ComparisonReport>& reports) {
  for (const auto& r : reports) {
    if (r.kind != ComparisonReport::Kind::Info && !r.passed()) return false;
  }
  return true;
}

}  // namespace ptkl
