#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ptkl {

/// Atoms xi_1..xi_n with strictly positive base weights p on the simplex.
/// Atom locations are labels only; no KL computation reads them.
class DiscreteModel {
 public:
  explicit DiscreteModel(std::vector<double> p, std::vector<std::string> atoms = {});

  static DiscreteModel uniform(std::size_t n);

  std::size_t size() const { return p_.size(); }
  std::span<const double> p() const { return p_; }
  std::span<const std::string> atoms() const { return atoms_; }

  /// H(p) = sum p_i log p_i (signed as in the moment formulas, i.e. <= 0).
  double entropy_term() const;

 private:
  std::vector<double> p_;
  std::vector<std::string> atoms_;
};

/// Dirichlet precision alpha_n as a function of the number of atoms.
class AlphaSchedule {
 public:
  enum class Kind { Constant, Linear, Quadratic };

  static AlphaSchedule constant(double alpha) { return AlphaSchedule(Kind::Constant, alpha); }
  static AlphaSchedule linear(double alpha) { return AlphaSchedule(Kind::Linear, alpha); }
  static AlphaSchedule quadratic(double alpha) { return AlphaSchedule(Kind::Quadratic, alpha); }
  /// "constant" | "linear" | "quadratic".
  static AlphaSchedule parse(std::string_view name, double alpha);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  std::string_view name() const;

  /// alpha, alpha n or alpha n^2.
  double operator()(std::size_t n) const;

 private:
  AlphaSchedule(Kind kind, double alpha);
  Kind kind_;
  double alpha_;
};

/// KL(f0 || f) = sum p_i log(p_i / w_i); +inf when some w_i = 0.
double kl_forward_discrete(std::span<const double> p, std::span<const double> w);
/// Same, from log-weights.
double kl_forward_discrete_log(std::span<const double> p, std::span<const double> log_w);

/// KL(f || f0) = sum w_i log(w_i / p_i) with 0 log 0 = 0.
double kl_reverse_discrete(std::span<const double> p, std::span<const double> w);
double kl_reverse_discrete_log(std::span<const double> p, std::span<const double> log_w);

/// h(w) = -sum (1/n + w_i) log w_i: the forward minus reverse KL against
/// uniform base weights. Requires an interior w.
double kl_gap(std::span<const double> w);

/// Upper bound on E KL(f || f0) under n w ~ Mult(n, p):
/// sum p_i log(p_i + (1 - p_i)/n) - H(p).
double freq_bootstrap_mean_reverse_bound(const DiscreteModel& model);

inline constexpr std::size_t kMaxEnumerationAtoms = 12;

/// Exact E KL(f || f0) under n w ~ Mult(n, p) by walking every count
/// vector. n <= kMaxEnumerationAtoms.
double enumerate_freq_bootstrap_reverse_mean(const DiscreteModel& model);

// Generalised Bayesian bootstrap, w ~ Dir(alpha_n p).

double bb_mean_forward(const DiscreteModel& model, const AlphaSchedule& schedule);
double bb_var_forward(const DiscreteModel& model, const AlphaSchedule& schedule);
double bb_mean_reverse(const DiscreteModel& model, const AlphaSchedule& schedule);
double bb_var_reverse(const DiscreteModel& model, const AlphaSchedule& schedule);

/// n -> inf limits of E KL(f0||f) and E KL(f||f0) for alpha_n = alpha n and
/// uniform p: (log alpha - psi0(alpha), psi0(alpha+1) - log alpha).
std::pair<double, double> bb_limit_values(double alpha);

/// Second-order moments of Dirichlet(a p) weights. `a` is the total
/// precision alpha_n; p_i, p_j are the base weights of atoms i != j.
namespace dirichlet_moments {
double var_w(double pi, double a);
double cov_w(double pi, double pj, double a);
double var_w_log_w(double pi, double a);
double cov_w_log_w_with_w(double pi, double a);                     // Cov(w_i log w_i, w_i)
double cov_w_log_w_with_other(double pi, double pj, double a);      // Cov(w_i log w_i, w_j)
double cov_w_log_w_pair(double pi, double pj, double a);            // Cov(w_i log w_i, w_j log w_j)
}  // namespace dirichlet_moments

}  // namespace ptkl
