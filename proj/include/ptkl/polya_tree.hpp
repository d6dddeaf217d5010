#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ptkl/centring.hpp"
#include "ptkl/rng.hpp"

namespace ptkl {

/// Deepest truncation level accepted by PolyaTreeSpec (closed forms only).
inline constexpr int kMaxLevels = 30;
/// Deepest level that can be sampled: a draw stores 2^(M+1) - 2 doubles,
/// i.e. 1 GiB at M = 26.
inline constexpr int kMaxSampledLevels = 26;

/// Precision function rho(m): beta shapes at level m are alpha * rho(m).
class RhoFamily {
 public:
  enum class Kind { Discrete, Singular, Polynomial, Geometric };

  static RhoFamily discrete() { return RhoFamily(Kind::Discrete, 0.0); }      // 2^-m
  static RhoFamily singular() { return RhoFamily(Kind::Singular, 0.0); }      // 1
  static RhoFamily polynomial(double delta);                                  // m^delta
  static RhoFamily geometric(double delta);                                   // delta^m

  Kind kind() const { return kind_; }
  /// delta for Polynomial/Geometric; empty otherwise.
  std::optional<double> delta() const;
  bool is_continuous() const { return kind_ == Kind::Polynomial || kind_ == Kind::Geometric; }
  std::string_view name() const;

  /// rho(m) for m >= 1.
  double operator()(int m) const;

 private:
  RhoFamily(Kind kind, double delta) : kind_(kind), delta_(delta) {}
  Kind kind_;
  double delta_;
};

/// The four families in table order, with the given delta for
/// the two absolutely continuous ones.
std::vector<RhoFamily> all_rho_families(double delta);

/// Finite Polya tree PT_M(alpha, rho, F0).
class PolyaTreeSpec {
 public:
  PolyaTreeSpec(double alpha, RhoFamily rho, int levels,
                std::optional<Centring> centring = std::nullopt);

  double alpha() const { return alpha_; }
  const RhoFamily& rho() const { return rho_; }
  int levels() const { return levels_; }
  const std::optional<Centring>& centring() const { return centring_; }

  /// alpha * rho(m): both beta parameters at level m.
  double beta_shape(int m) const { return alpha_ * rho_(m); }

 private:
  double alpha_;
  RhoFamily rho_;
  int levels_;
  std::optional<Centring> centring_;
};

/// Realised branching probabilities of one tree, stored as log Y_mj in a
/// flat level-major array. Level m occupies 2^m slots starting at 2^m - 2;
/// slots 2i and 2i+1 (0-based within the level) hold the sibling pair
/// (log Y, log(1 - Y)).
class PolyaTreeDraw {
 public:
  /// A draw with every Y = 1/2.
  explicit PolyaTreeDraw(int levels);

  int levels() const { return levels_; }

  /// log Y_mj with 1-based level m and 1-based index j.
  double log_branch(int m, int j) const;

  /// All 2^m log branch probabilities of level m.
  std::span<const double> level(int m) const;
  std::span<double> level(int m);

  /// Set the pair (Y_{m,2i-1}, Y_{m,2i}) from the left probability y, with
  /// i the 1-based pair index.
  void set_left(int m, int pair, double y);

  /// Leaf masses F(B_Mj), j = 1..2^M, as logarithms.
  std::vector<double> leaf_log_masses() const;

  static std::size_t storage_doubles(int levels);

 private:
  int levels_;
  std::vector<double> log_y_;
};

/// Index of the level-k ancestor of B_mj (1-based indices throughout).
int ancestor_index(int m, int j, int k);

struct Interval {
  double lower;  // exclusive
  double upper;  // inclusive
};

/// B_mj = (F0^-1((j-1)/2^m), F0^-1(j/2^m)], with -inf/+inf at the ends.
Interval partition_bounds(const PolyaTreeSpec& spec, int m, int j);

/// Independent Be(alpha rho(m), alpha rho(m)) draw for each left child.
PolyaTreeDraw sample_tree(const PolyaTreeSpec& spec, RngStream& stream);

/// As sample_tree, reusing `draw` (must have spec.levels() levels).
void sample_tree_into(const PolyaTreeSpec& spec, RngStream& stream, PolyaTreeDraw& draw);

/// KL(f0 || f). Independent of F0.
double kl_forward(const PolyaTreeDraw& draw);

/// KL(f || f0), one top-down pass over cumulative log-masses.
double kl_reverse(const PolyaTreeDraw& draw);
/// Allocation-free variant; `scratch` is resized to 2^(M-1) on demand.
double kl_reverse(const PolyaTreeDraw& draw, std::vector<double>& scratch);

/// Density of the truncated tree at x: prod_m Y_{m, j_m(x)} * 2^M * f0(x).
double density_at(const PolyaTreeSpec& spec, const PolyaTreeDraw& draw, double x);

// Closed-form moments.

double mean_kl_forward(const PolyaTreeSpec& spec);
double var_kl_forward(const PolyaTreeSpec& spec);
double mean_kl_reverse(const PolyaTreeSpec& spec);
double var_kl_reverse(const PolyaTreeSpec& spec);

/// Upper bound on lim_{M->inf} E KL(f0 || f) for the two continuous
/// families: polynomial zeta(delta)/(4 alpha) + zeta(delta^2)/alpha^2,
/// geometric (alpha (delta+1) + 4) / (4 alpha^2 (delta^2 - 1)).
double corollary_bound(double alpha, const RhoFamily& family);

// Building blocks of the reverse-KL variance, as functions of the level
// shape c = alpha rho(m).
double lambda2(double c);
double lambda3(double c);
double lambda4(double c);
double lambda5(double c);
double lambda6(double c);

struct ReverseLevelTerms {
  double shape;
  double l2, l3, l4, l5, l6;
};

std::vector<ReverseLevelTerms> reverse_level_terms(const PolyaTreeSpec& spec);

/// Var KL(f || f0) = A + B assembled from per-level terms (levels 1..M in
/// order).
double var_kl_reverse_from_terms(std::span<const ReverseLevelTerms> terms);

struct MomentRow {
  RhoFamily family;
  int levels;
  double alpha;
  double mean_fwd;
  double var_fwd;
  double mean_rev;
  double var_rev;
  std::optional<double> bound;  // continuous families only
};

struct MomentGrid {
  std::vector<RhoFamily> families;
  std::vector<double> alphas;
  int max_levels = 10;
};

/// One row per (family, alpha, M = 1..max_levels), family-major.
std::vector<MomentRow> moment_table(const MomentGrid& grid);

}  // namespace ptkl
