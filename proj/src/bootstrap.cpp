#include "ptkl/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ptkl/sampling.hpp"
#include "ptkl/special_functions.hpp"

namespace ptkl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_size(std::span<const double> p, std::span<const double> w) {
  if (p.size() != w.size()) {
    throw std::invalid_argument("dimension mismatch: p has " + std::to_string(p.size()) +
                                " entries, w has " + std::to_string(w.size()));
  }
}

// Distinct base weights and their multiplicities; exact equality only.
std::vector<std::pair<double, std::size_t>> group_weights(std::span<const double> p) {
  std::vector<double> sorted(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, std::size_t>> groups;
  for (double v : sorted) {
    if (!groups.empty() && groups.back().first == v) {
      ++groups.back().second;
    } else {
      groups.emplace_back(v, 1);
    }
  }
  return groups;
}

}  // namespace

// DiscreteModel

DiscreteModel::DiscreteModel(std::vector<double> p, std::vector<std::string> atoms)
    : p_(std::move(p)), atoms_(std::move(atoms)) {
  if (p_.empty()) {
    throw std::domain_error("DiscreteModel: need at least one atom");
  }
  for (double v : p_) {
    if (!(v > 0.0)) {
      throw std::domain_error("DiscreteModel: base weights must be strictly positive");
    }
  }
  validate_probability_vector(p_, 1e-12);
  if (!atoms_.empty() && atoms_.size() != p_.size()) {
    throw std::invalid_argument("DiscreteModel: atom labels and weights differ in length");
  }
}

DiscreteModel DiscreteModel::uniform(std::size_t n) {
  if (n == 0) {
    throw std::domain_error("DiscreteModel::uniform: n must be >= 1");
  }
  return DiscreteModel(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double DiscreteModel::entropy_term() const {
  double h = 0.0;
  for (double v : p_) h += v * std::log(v);
  return h;
}

// AlphaSchedule

AlphaSchedule::AlphaSchedule(Kind kind, double alpha) : kind_(kind), alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("AlphaSchedule: alpha must be positive and finite");
  }
}

AlphaSchedule AlphaSchedule::parse(std::string_view name, double alpha) {
  if (name == "constant") return constant(alpha);
  if (name == "linear") return linear(alpha);
  if (name == "quadratic") return quadratic(alpha);
  throw std::invalid_argument("unknown schedule '" + std::string(name) +
                              "' (expected constant, linear or quadratic)");
}

std::string_view AlphaSchedule::name() const {
  switch (kind_) {
    case Kind::Constant:
      return "constant";
    case Kind::Linear:
      return "linear";
    case Kind::Quadratic:
      return "quadratic";
  }
  return "unknown";
}

double AlphaSchedule::operator()(std::size_t n) const {
  const double nd = static_cast<double>(n);
  switch (kind_) {
    case Kind::Constant:
      return alpha_;
    case Kind::Linear:
      return alpha_ * nd;
    case Kind::Quadratic:
      return alpha_ * nd * nd;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Discrete KL divergences

double kl_forward_discrete(std::span<const double> p, std::span<const double> w) {
  require_same_size(p, w);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (w[i] <= 0.0) return kInf;
    total += p[i] * std::log(p[i] / w[i]);
  }
  return total;
}

double kl_forward_discrete_log(std::span<const double> p, std::span<const double> log_w) {
  require_same_size(p, log_w);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (log_w[i] == -kInf) return kInf;
    total += p[i] * (std::log(p[i]) - log_w[i]);
  }
  return total;
}

double kl_reverse_discrete(std::span<const double> p, std::span<const double> w) {
  require_same_size(p, w);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (w[i] > 0.0) total += w[i] * std::log(w[i] / p[i]);
  }
  return total;
}

double kl_reverse_discrete_log(std::span<const double> p, std::span<const double> log_w) {
  require_same_size(p, log_w);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double w = std::exp(log_w[i]);
    if (w > 0.0) total += w * (log_w[i] - std::log(p[i]));
  }
  return total;
}

namespace {

// r(x) = 2x - (2 + x) log(1 + x) = sum_{k>=3} (-1)^k (k-2) / (k (k-1)) x^k,
// with 1 + x = n w. The logarithm is taken of n w itself, which keeps full
// relative precision when w is tiny.
double gap_term(double x, double nw) {
  if (std::abs(x) > 0.2) return 2.0 * x - (2.0 + x) * std::log(nw);
  double power = x * x * x;
  double total = 0.0;
  for (int k = 3; k < 40; ++k) {
    const double term = (k - 2.0) / (k * (k - 1.0)) * power;
    total += (k % 2 == 0) ? term : -term;
    power *= x;
  }
  return total;
}

}  // namespace

double kl_gap(std::span<const double> w) {
  if (w.empty()) {
    throw std::domain_error("kl_gap: empty weight vector");
  }
  // With w_i = (1 + x_i)/n and sum x_i = 0,
  // h(w) = -sum (1/n + w_i) log w_i - 2 log n = (1/n) sum r(x_i);
  // the -2 log n constant is the part of forward - reverse that does not
  // depend on w, so h vanishes at the uniform vector.
  const double n = static_cast<double>(w.size());
  double total = 0.0;
  for (double wi : w) {
    if (!(wi > 0.0) || !(wi < 1.0 || w.size() == 1)) {
      throw std::domain_error("kl_gap: weights must lie in the simplex interior");
    }
    total += gap_term(std::fma(n, wi, -1.0), n * wi);
  }
  return total / n;
}

// Frequentist bootstrap

double freq_bootstrap_mean_reverse_bound(const DiscreteModel& model) {
  const double n = static_cast<double>(model.size());
  double total = 0.0;
  for (double pi : model.p()) {
    total += pi * std::log(pi + (1.0 - pi) / n);
  }
  return total - model.entropy_term();
}

namespace {

struct EnumerationState {
  std::span<const double> p;
  std::vector<double> log_p;
  std::vector<double> log_factorial;
  double inv_n;
  double expectation = 0.0;
};

// Distribute `remaining` trials over atoms [atom, n). `log_prob` collects
// sum k_i log p_i - sum log k_i!; `kl` collects sum w_i log(w_i / p_i).
void walk_counts(EnumerationState& s, std::size_t atom, unsigned remaining, double log_prob,
                 double kl) {
  const std::size_t n = s.p.size();
  if (atom + 1 == n) {
    const unsigned k = remaining;
    double term_kl = kl;
    if (k > 0) {
      const double w = k * s.inv_n;
      term_kl += w * (std::log(w) - s.log_p[atom]);
    }
    const double lp = log_prob + k * s.log_p[atom] - s.log_factorial[k] +
                      s.log_factorial[n];  // n trials
    s.expectation += std::exp(lp) * term_kl;
    return;
  }
  for (unsigned k = 0; k <= remaining; ++k) {
    double next_kl = kl;
    if (k > 0) {
      const double w = k * s.inv_n;
      next_kl += w * (std::log(w) - s.log_p[atom]);
    }
    walk_counts(s, atom + 1, remaining - k, log_prob + k * s.log_p[atom] - s.log_factorial[k],
                next_kl);
  }
}

}  // namespace

double enumerate_freq_bootstrap_reverse_mean(const DiscreteModel& model) {
  const std::size_t n = model.size();
  if (n > kMaxEnumerationAtoms) {
    throw std::length_error("enumerate_freq_bootstrap_reverse_mean: n exceeds " +
                            std::to_string(kMaxEnumerationAtoms));
  }
  EnumerationState s{model.p(), {}, {}, 1.0 / static_cast<double>(n)};
  for (double pi : model.p()) s.log_p.push_back(std::log(pi));
  for (std::size_t k = 0; k <= n; ++k) {
    s.log_factorial.push_back(log_gamma(static_cast<double>(k) + 1.0));
  }
  walk_counts(s, 0, static_cast<unsigned>(n), 0.0, 0.0);
  return s.expectation;
}

// Generalised Bayesian bootstrap

double bb_mean_forward(const DiscreteModel& model, const AlphaSchedule& schedule) {
  const double a = schedule(model.size());
  const double psi_a = digamma(a);
  double total = 0.0;
  for (const auto& [pi, count] : group_weights(model.p())) {
    total += static_cast<double>(count) * pi * (digamma(a * pi) - psi_a);
  }
  return model.entropy_term() - total;
}

double bb_var_forward(const DiscreteModel& model, const AlphaSchedule& schedule) {
  const double a = schedule(model.size());
  double total = 0.0;
  for (const auto& [pi, count] : group_weights(model.p())) {
    total += static_cast<double>(count) * pi * pi * trigamma(a * pi);
  }
  return total - trigamma(a);
}

double bb_mean_reverse(const DiscreteModel& model, const AlphaSchedule& schedule) {
  const double a = schedule(model.size());
  const double psi_a1 = digamma(a + 1.0);
  double total = 0.0;
  for (const auto& [pi, count] : group_weights(model.p())) {
    total += static_cast<double>(count) * pi * (digamma(a * pi + 1.0) - psi_a1);
  }
  return total - model.entropy_term();
}

namespace dirichlet_moments {

double var_w(double pi, double a) { return pi * (1.0 - pi) / (a + 1.0); }

double cov_w(double pi, double pj, double a) { return -pi * pj / (a + 1.0); }

double var_w_log_w(double pi, double a) {
  const double d2 = digamma(a * pi + 2.0) - digamma(a + 2.0);
  const double d1 = digamma(a * pi + 1.0) - digamma(a + 1.0);
  return pi * (a * pi + 1.0) / (a + 1.0) * (trigamma(a * pi + 2.0) - trigamma(a + 2.0) + d2 * d2) -
         pi * pi * d1 * d1;
}

double cov_w_log_w_with_w(double pi, double a) {
  const double d2 = digamma(a * pi + 2.0) - digamma(a + 2.0);
  const double d1 = digamma(a * pi + 1.0) - digamma(a + 1.0);
  return pi * (a * pi + 1.0) / (a + 1.0) * d2 - pi * pi * d1;
}

double cov_w_log_w_with_other(double pi, double pj, double a) {
  return pi * pj *
         (-digamma(a * pi + 1.0) / (a + 1.0) + digamma(a + 1.0) - a * digamma(a + 2.0) / (a + 1.0));
}

double cov_w_log_w_pair(double pi, double pj, double a) {
  const double psi_a2 = digamma(a + 2.0);
  const double psi_a1 = digamma(a + 1.0);
  const double ei = digamma(a * pi + 1.0);
  const double ej = digamma(a * pj + 1.0);
  return a * pi * pj / (a + 1.0) * ((ei - psi_a2) * (ej - psi_a2) - trigamma(a + 2.0)) -
         pi * pj * (ei - psi_a1) * (ej - psi_a1);
}

}  // namespace dirichlet_moments

double bb_var_reverse(const DiscreteModel& model, const AlphaSchedule& schedule) {
  namespace dm = dirichlet_moments;
  const double a = schedule(model.size());
  const auto groups = group_weights(model.p());

  double diagonal = 0.0;
  for (const auto& [pi, count] : groups) {
    const double lp = std::log(pi);
    diagonal += static_cast<double>(count) *
                (dm::var_w_log_w(pi, a) + lp * lp * dm::var_w(pi, a) -
                 2.0 * lp * dm::cov_w_log_w_with_w(pi, a));
  }

  // Ordered pairs i != j; each unordered pair therefore appears twice.
  double off_diagonal = 0.0;
  for (const auto& [pi, ci] : groups) {
    for (const auto& [pj, cj] : groups) {
      const double pairs = (pi == pj) ? static_cast<double>(ci) * static_cast<double>(ci - 1)
                                      : static_cast<double>(ci) * static_cast<double>(cj);
      if (pairs == 0.0) continue;
      const double lpi = std::log(pi);
      const double lpj = std::log(pj);
      off_diagonal += pairs * (dm::cov_w_log_w_pair(pi, pj, a) + lpi * lpj * dm::cov_w(pi, pj, a) -
                               2.0 * lpj * dm::cov_w_log_w_with_other(pi, pj, a));
    }
  }
  return diagonal + off_diagonal;
}

std::pair<double, double> bb_limit_values(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("bb_limit_values: alpha must be positive");
  }
  const double log_a = std::log(alpha);
  return {log_a - digamma(alpha), digamma(alpha + 1.0) - log_a};
}

}  // namespace ptkl
