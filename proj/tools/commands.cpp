#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ptkl/bootstrap.hpp"
#include "ptkl/csv.hpp"
#include "ptkl/polya_tree.hpp"
#include "ptkl/validation.hpp"

namespace ptkl::cli {
namespace {

const std::vector<double> kSensitivityAlphas = {0.05, 0.1, 0.3, 1.0};
const std::vector<double> kSensitivityDeltas = {1.01, 1.1, 1.5, 2.0};
const std::vector<std::size_t> kBootstrapAtoms = {2, 5, 10, 20, 50, 100, 200, 500, 1000};

std::vector<double> or_default(const std::vector<double>& given, std::vector<double> fallback) {
  return given.empty() ? fallback : given;
}

std::vector<RhoFamily> families_for(const std::vector<double>& deltas) {
  std::vector<RhoFamily> families = {RhoFamily::discrete(), RhoFamily::singular()};
  for (double d : deltas) families.push_back(RhoFamily::polynomial(d));
  for (double d : deltas) families.push_back(RhoFamily::geometric(d));
  return families;
}

std::vector<AlphaSchedule> schedules_for(const std::string& name, double alpha) {
  if (name == "all") {
    return {AlphaSchedule::constant(alpha), AlphaSchedule::linear(alpha),
            AlphaSchedule::quadratic(alpha)};
  }
  return {AlphaSchedule::parse(name, alpha)};
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void validate_config(const RunConfig& c) {
  require(c.workers >= 1 && c.workers <= 1024, "--workers must lie in 1..1024");
  for (double a : c.alphas) require(a > 0.0 && std::isfinite(a), "--alpha values must be > 0");
  for (double d : c.deltas) require(d > 1.0 && std::isfinite(d), "--delta values must be > 1");
  require(c.levels >= 1 && c.levels <= kMaxLevels,
          "--levels must lie in 1.." + std::to_string(kMaxLevels));
  for (std::size_t n : c.atoms) require(n >= 1, "--n values must be >= 1");
  require(c.schedule == "all" || c.schedule == "constant" || c.schedule == "linear" ||
              c.schedule == "quadratic",
          "--schedule must be all, constant, linear or quadratic");
  if (c.draws) require(*c.draws >= 100, "--draws must be >= 100");
  require(c.fixed_alpha > 0.0, "--fixed-alpha must be > 0");
  require(c.fixed_delta > 1.0, "--fixed-delta must be > 1");
  require(c.alpha_min > 0.0 && c.alpha_max >= c.alpha_min, "need 0 < --alpha-min <= --alpha-max");
  require(c.delta_min > 1.0 && c.delta_max >= c.delta_min, "need 1 < --delta-min <= --delta-max");
  require(c.alpha_steps >= 1 && c.delta_steps >= 1, "grid step counts must be >= 1");
  if (c.command == "bootstrap-moments") {
    require(c.alphas.size() <= 1, "bootstrap-moments takes a single --alpha");
  }
}

void write_pt_moments(const RunConfig& config, std::ostream& out) {
  MomentGrid grid;
  grid.families = families_for(or_default(config.deltas, {2.0}));
  grid.alphas = or_default(config.alphas, {1.0});
  grid.max_levels = config.levels;
  out << "family,M,alpha,delta,mean_fwd,var_fwd,mean_rev,var_rev,bound\n";
  for (const auto& row : moment_table(grid)) {
    out << row.family.name() << ',' << row.levels << ',' << format_real(row.alpha) << ','
        << format_optional(row.family.delta()) << ',' << format_real(row.mean_fwd) << ','
        << format_real(row.var_fwd) << ',' << format_real(row.mean_rev) << ','
        << format_real(row.var_rev) << ',' << format_optional(row.bound) << '\n';
  }
}

void write_pt_sensitivity(const RunConfig& config, std::ostream& out) {
  out << "panel,alpha,delta,M,mean_fwd\n";
  auto curve = [&](const char* panel, double alpha, double delta) {
    for (int m = 1; m <= config.levels; ++m) {
      const PolyaTreeSpec spec(alpha, RhoFamily::polynomial(delta), m);
      out << panel << ',' << format_real(alpha) << ',' << format_real(delta) << ',' << m << ','
          << format_real(mean_kl_forward(spec)) << '\n';
    }
  };
  for (double alpha : or_default(config.alphas, kSensitivityAlphas)) {
    curve("alpha", alpha, config.fixed_delta);
  }
  for (double delta : or_default(config.deltas, kSensitivityDeltas)) {
    curve("delta", config.fixed_alpha, delta);
  }
}

void write_pt_contour(const RunConfig& config, std::ostream& out) {
  std::vector<double> alphas = config.alphas;
  if (alphas.empty()) {
    const double lo = std::log(config.alpha_min);
    const double hi = std::log(config.alpha_max);
    for (int i = 0; i < config.alpha_steps; ++i) {
      const double t = config.alpha_steps == 1 ? 0.0 : double(i) / (config.alpha_steps - 1);
      alphas.push_back(std::exp(lo + t * (hi - lo)));
    }
  }
  std::vector<double> deltas = config.deltas;
  if (deltas.empty()) {
    for (int i = 0; i < config.delta_steps; ++i) {
      const double t = config.delta_steps == 1 ? 0.0 : double(i) / (config.delta_steps - 1);
      deltas.push_back(config.delta_min + t * (config.delta_max - config.delta_min));
    }
  }
  out << "alpha,delta,log_mean_fwd,log_var_fwd\n";
  for (double alpha : alphas) {
    for (double delta : deltas) {
      const PolyaTreeSpec spec(alpha, RhoFamily::polynomial(delta), config.levels);
      out << format_real(alpha) << ',' << format_real(delta) << ','
          << format_real(std::log(mean_kl_forward(spec))) << ','
          << format_real(std::log(var_kl_forward(spec))) << '\n';
    }
  }
}

void write_bootstrap_moments(const RunConfig& config, std::ostream& out) {
  const double alpha = config.alphas.empty() ? 1.0 : config.alphas.front();
  const auto atoms = config.atoms.empty() ? kBootstrapAtoms : config.atoms;
  out << "alpha_n_schedule,n,mean_fwd,sd_fwd,mean_rev,sd_rev\n";
  for (const auto& schedule : schedules_for(config.schedule, alpha)) {
    for (std::size_t n : atoms) {
      const auto model = DiscreteModel::uniform(n);
      out << schedule.name() << ',' << n << ',' << format_real(bb_mean_forward(model, schedule))
          << ',' << format_real(std::sqrt(bb_var_forward(model, schedule))) << ','
          << format_real(bb_mean_reverse(model, schedule)) << ','
          << format_real(std::sqrt(bb_var_reverse(model, schedule))) << '\n';
    }
  }
}

bool write_validation(const RunConfig& config, std::ostream& out) {
  ValidationConfig vc;
  vc.seed = config.seed;
  vc.workers = config.workers;
  if (config.draws) {
    vc.tree_draws = vc.bb_draws = vc.fb_draws = *config.draws;
  }
  const auto reports = run_validation(vc);
  write_report_csv(out, reports);
  return all_passed(reports);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::uint64_t draws = 0;

  CLI::App app{"Kullback-Leibler variation of Polya tree and bootstrap random measures"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  app.add_option("--seed", config.seed, "Master seed")->envname(kSeedEnv);
  app.add_option("--workers", config.workers, "Monte Carlo worker count");
  app.add_option("--out", config.out, "Output CSV path ('-' for stdout)");
  app.add_option("--alpha", config.alphas, "Precision value(s)")->delimiter(',');
  app.add_option("--delta", config.deltas, "Exponent/base value(s) for rho, > 1")->delimiter(',');
  app.add_option("--levels", config.levels, "Truncation level M (maximum M for pt-moments)");
  app.add_option("--n", config.atoms, "Numbers of atoms")->delimiter(',');
  app.add_option("--schedule", config.schedule, "alpha_n schedule: all|constant|linear|quadratic");
  auto* draws_opt = app.add_option("--draws", draws, "Monte Carlo draws per comparison");
  app.add_option("--fixed-alpha", config.fixed_alpha, "pt-sensitivity: alpha for the delta panel");
  app.add_option("--fixed-delta", config.fixed_delta, "pt-sensitivity: delta for the alpha panel");
  app.add_option("--alpha-min", config.alpha_min, "pt-contour: smallest alpha");
  app.add_option("--alpha-max", config.alpha_max, "pt-contour: largest alpha");
  app.add_option("--alpha-steps", config.alpha_steps, "pt-contour: alpha grid size (log-spaced)");
  app.add_option("--delta-min", config.delta_min, "pt-contour: smallest delta");
  app.add_option("--delta-max", config.delta_max, "pt-contour: largest delta");
  app.add_option("--delta-steps", config.delta_steps, "pt-contour: delta grid size");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"pt-moments", "Closed-form KL moments over M for the four rho families"},
      {"pt-sensitivity", "Expected forward KL over M while varying alpha or delta"},
      {"pt-contour", "log mean and log variance of the forward KL over an (alpha, delta) grid"},
      {"bootstrap-moments", "Bayesian bootstrap KL mean/sd over n for each alpha_n schedule"},
      {"validate", "Monte Carlo versus closed-form comparison report"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  if (draws_opt->count() > 0) config.draws = draws;

  try {
    validate_config(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (config.out != "-") {
    file.open(config.out);
    if (!file) {
      err << "error: cannot open '" << config.out << "' for writing\n";
      return kExitUsage;
    }
    sink = &file;
  }

  try {
    if (config.command == "pt-moments") {
      write_pt_moments(config, *sink);
    } else if (config.command == "pt-sensitivity") {
      write_pt_sensitivity(config, *sink);
    } else if (config.command == "pt-contour") {
      write_pt_contour(config, *sink);
    } else if (config.command == "bootstrap-moments") {
      write_bootstrap_moments(config, *sink);
    } else if (config.command == "validate") {
      const bool ok = write_validation(config, *sink);
      sink->flush();
      return ok ? kExitOk : kExitValidationFailed;
    }
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  sink->flush();
  if (!*sink) {
    err << "error: failed writing output\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace ptkl::cli
