#include "ptkl/polya_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ptkl/sampling.hpp"
#include "ptkl/special_functions.hpp"

namespace ptkl {
namespace {

constexpr double kLog2 = std::numbers::ln2;

std::size_t level_offset(int m) { return (std::size_t{1} << m) - 2; }

void require_level(int m, int levels) {
  if (m < 1 || m > levels) {
    throw std::out_of_range("level " + std::to_string(m) + " outside 1.." +
                            std::to_string(levels));
  }
}

void require_index(int m, int j) {
  if (j < 1 || static_cast<long long>(j) > (1LL << m)) {
    throw std::out_of_range("set index " + std::to_string(j) + " outside 1..2^" +
                            std::to_string(m));
  }
}

// KL of Bernoulli(y) from Bernoulli(1/2) given log y and log(1-y):
// y (log y + log 2) + (1-y)(log(1-y) + log 2).
double binary_kl_from_half(double log_y, double log_1my) {
  return std::exp(log_y) * (log_y + kLog2) + std::exp(log_1my) * (log_1my + kLog2);
}

}  // namespace

// RhoFamily

RhoFamily RhoFamily::polynomial(double delta) {
  if (!(delta > 1.0) || !std::isfinite(delta)) {
    throw std::domain_error("polynomial rho requires delta > 1");
  }
  return RhoFamily(Kind::Polynomial, delta);
}

RhoFamily RhoFamily::geometric(double delta) {
  if (!(delta > 1.0) || !std::isfinite(delta)) {
    throw std::domain_error("geometric rho requires delta > 1");
  }
  return RhoFamily(Kind::Geometric, delta);
}

std::optional<double> RhoFamily::delta() const {
  if (is_continuous()) return delta_;
  return std::nullopt;
}

std::string_view RhoFamily::name() const {
  switch (kind_) {
    case Kind::Discrete:
      return "discrete";
    case Kind::Singular:
      return "singular";
    case Kind::Polynomial:
      return "polynomial";
    case Kind::Geometric:
      return "geometric";
  }
  return "unknown";
}

double RhoFamily::operator()(int m) const {
  if (m < 1) {
    throw std::out_of_range("rho(m) requires m >= 1");
  }
  const double md = static_cast<double>(m);
  switch (kind_) {
    case Kind::Discrete:
      return std::ldexp(1.0, -m);
    case Kind::Singular:
      return 1.0;
    case Kind::Polynomial:
      return std::pow(md, delta_);
    case Kind::Geometric:
      return std::pow(delta_, md);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<RhoFamily> all_rho_families(double delta) {
  return {RhoFamily::discrete(), RhoFamily::singular(), RhoFamily::polynomial(delta),
          RhoFamily::geometric(delta)};
}

// PolyaTreeSpec

PolyaTreeSpec::PolyaTreeSpec(double alpha, RhoFamily rho, int levels,
                             std::optional<Centring> centring)
    : alpha_(alpha), rho_(rho), levels_(levels), centring_(centring) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("PolyaTreeSpec: alpha must be positive and finite");
  }
  if (levels < 1 || levels > kMaxLevels) {
    throw std::domain_error("PolyaTreeSpec: levels must lie in 1.." + std::to_string(kMaxLevels));
  }
}

// PolyaTreeDraw

std::size_t PolyaTreeDraw::storage_doubles(int levels) {
  return (std::size_t{1} << (levels + 1)) - 2;
}

PolyaTreeDraw::PolyaTreeDraw(int levels) : levels_(levels) {
  if (levels < 1 || levels > kMaxSampledLevels) {
    throw std::length_error("PolyaTreeDraw: levels must lie in 1.." +
                            std::to_string(kMaxSampledLevels));
  }
  log_y_.assign(storage_doubles(levels), -kLog2);
}

double PolyaTreeDraw::log_branch(int m, int j) const {
  require_level(m, levels_);
  require_index(m, j);
  return log_y_[level_offset(m) + static_cast<std::size_t>(j - 1)];
}

std::span<const double> PolyaTreeDraw::level(int m) const {
  require_level(m, levels_);
  return {log_y_.data() + level_offset(m), std::size_t{1} << m};
}

std::span<double> PolyaTreeDraw::level(int m) {
  require_level(m, levels_);
  return {log_y_.data() + level_offset(m), std::size_t{1} << m};
}

void PolyaTreeDraw::set_left(int m, int pair, double y) {
  require_level(m, levels_);
  if (pair < 1 || static_cast<long long>(pair) > (1LL << (m - 1))) {
    throw std::out_of_range("pair index outside 1..2^(m-1)");
  }
  if (!(y > 0.0 && y < 1.0)) {
    throw std::domain_error("branch probability must lie in (0, 1)");
  }
  auto lv = level(m);
  const auto i = static_cast<std::size_t>(pair - 1);
  lv[2 * i] = std::log(y);
  lv[2 * i + 1] = std::log1p(-y);
}

std::vector<double> PolyaTreeDraw::leaf_log_masses() const {
  std::vector<double> mass(std::size_t{1} << levels_, 0.0);
  for (int m = 1; m <= levels_; ++m) {
    const auto lv = level(m);
    // Children of parent p land at 2p and 2p+1 >= p, so walk parents downward.
    for (std::size_t p = std::size_t{1} << (m - 1); p-- > 0;) {
      const double parent = mass[p];
      mass[2 * p] = parent + lv[2 * p];
      mass[2 * p + 1] = parent + lv[2 * p + 1];
    }
  }
  return mass;
}

// Index arithmetic and partition

int ancestor_index(int m, int j, int k) {
  if (m < 1 || m > kMaxLevels || k < 1 || k > m) {
    throw std::out_of_range("ancestor_index: require 1 <= k <= m <= " +
                            std::to_string(kMaxLevels));
  }
  require_index(m, j);
  for (int level = m; level > k; --level) {
    j = (j + 1) / 2;
  }
  return j;
}

Interval partition_bounds(const PolyaTreeSpec& spec, int m, int j) {
  if (!spec.centring()) {
    throw std::logic_error("partition_bounds: spec has no centring distribution");
  }
  if (m < 1 || m > kMaxLevels) {
    throw std::out_of_range("partition_bounds: level outside 1.." + std::to_string(kMaxLevels));
  }
  require_index(m, j);
  const double cells = std::ldexp(1.0, m);
  const auto& f0 = *spec.centring();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Interval b{};
  b.lower = (j == 1) ? -kInf : f0.quantile((j - 1) / cells);
  b.upper = (j == static_cast<int>(cells)) ? kInf : f0.quantile(j / cells);
  return b;
}

// Sampling

void sample_tree_into(const PolyaTreeSpec& spec, RngStream& stream, PolyaTreeDraw& draw) {
  if (draw.levels() != spec.levels()) {
    throw std::invalid_argument("sample_tree_into: draw depth does not match spec");
  }
  for (int m = 1; m <= spec.levels(); ++m) {
    const double shape = spec.beta_shape(m);
    auto lv = draw.level(m);
    for (std::size_t i = 0; i < lv.size(); i += 2) {
      const BetaDraw y = sample_beta_log(stream, shape, shape);
      lv[i] = y.log_y;
      lv[i + 1] = y.log_1my;
    }
  }
}

PolyaTreeDraw sample_tree(const PolyaTreeSpec& spec, RngStream& stream) {
  if (spec.levels() > kMaxSampledLevels) {
    throw std::length_error("sample_tree: levels exceed the sampling limit");
  }
  PolyaTreeDraw draw(spec.levels());
  sample_tree_into(spec, stream, draw);
  return draw;
}

// KL divergences

double kl_forward(const PolyaTreeDraw& draw) {
  double total = 0.0;
  for (int m = 1; m <= draw.levels(); ++m) {
    const auto lv = draw.level(m);
    double level_sum = 0.0;
    for (std::size_t i = 0; i < lv.size(); i += 2) {
      // -(log y + log(1-y) + 2 log 2) >= 0 for every pair
      level_sum -= (lv[i] + kLog2) + (lv[i + 1] + kLog2);
    }
    total += std::ldexp(level_sum, -m);
  }
  return total;
}

double kl_reverse(const PolyaTreeDraw& draw, std::vector<double>& scratch) {
  const int levels = draw.levels();
  const std::size_t parents_at_bottom = std::size_t{1} << (levels - 1);
  if (scratch.size() < parents_at_bottom) {
    scratch.resize(parents_at_bottom);
  }
  // scratch[p] holds log F of parent p of the level being processed.
  scratch[0] = 0.0;
  double total = 0.0;
  for (int m = 1; m <= levels; ++m) {
    const auto lv = draw.level(m);
    const std::size_t pairs = lv.size() / 2;
    const bool store_children = m < levels;
    for (std::size_t p = pairs; p-- > 0;) {
      const double parent = scratch[p];
      const double ly = lv[2 * p];
      const double l1y = lv[2 * p + 1];
      total += std::exp(parent) * binary_kl_from_half(ly, l1y);
      if (store_children) {
        scratch[2 * p] = parent + ly;
        scratch[2 * p + 1] = parent + l1y;
      }
    }
  }
  return total;
}

double kl_reverse(const PolyaTreeDraw& draw) {
  std::vector<double> scratch;
  return kl_reverse(draw, scratch);
}

double density_at(const PolyaTreeSpec& spec, const PolyaTreeDraw& draw, double x) {
  if (!spec.centring()) {
    throw std::logic_error("density_at: spec has no centring distribution");
  }
  if (draw.levels() != spec.levels()) {
    throw std::invalid_argument("density_at: draw depth does not match spec");
  }
  const auto& f0 = *spec.centring();
  const double base = f0.density(x);
  if (base == 0.0) {
    return 0.0;
  }
  const int levels = spec.levels();
  const double cells = std::ldexp(1.0, levels);
  // B_Mj is half-open on the left, so a dyadic boundary belongs to the lower set.
  double leaf = std::ceil(f0.cdf(x) * cells);
  leaf = std::min(std::max(leaf, 1.0), cells);
  const int leaf_index = static_cast<int>(leaf);

  double log_mass = 0.0;
  for (int m = 1; m <= levels; ++m) {
    log_mass += draw.log_branch(m, ancestor_index(levels, leaf_index, m));
  }
  return std::exp(log_mass + levels * kLog2) * base;
}

// Closed forms

double mean_kl_forward(const PolyaTreeSpec& spec) {
  double total = 0.0;
  for (int m = 1; m <= spec.levels(); ++m) {
    const double c = spec.beta_shape(m);
    total += digamma(2.0 * c) - digamma(c) - kLog2;
  }
  return total;
}

double var_kl_forward(const PolyaTreeSpec& spec) {
  double total = 0.0;
  for (int m = 1; m <= spec.levels(); ++m) {
    const double c = spec.beta_shape(m);
    total += std::ldexp(trigamma(c) - 2.0 * trigamma(2.0 * c), -m);
  }
  return total;
}

double mean_kl_reverse(const PolyaTreeSpec& spec) {
  double total = 0.0;
  for (int m = 1; m <= spec.levels(); ++m) {
    total += lambda2(spec.beta_shape(m)) + kLog2;
  }
  return total;
}

double corollary_bound(double alpha, const RhoFamily& family) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("corollary_bound: alpha must be positive");
  }
  if (!family.is_continuous()) {
    throw std::domain_error("corollary_bound: only defined for polynomial and geometric rho");
  }
  const double delta = *family.delta();
  if (family.kind() == RhoFamily::Kind::Polynomial) {
    return riemann_zeta(delta) / (4.0 * alpha) + riemann_zeta(delta * delta) / (alpha * alpha);
  }
  return (alpha * (delta + 1.0) + 4.0) / (4.0 * alpha * alpha * (delta * delta - 1.0));
}

double lambda2(double c) { return digamma(c + 1.0) - digamma(2.0 * c + 1.0); }

double lambda3(double c) { return digamma(c + 2.0) - digamma(2.0 * c + 2.0); }

double lambda4(double c) { return digamma(c + 1.0) - digamma(2.0 * c + 2.0); }

double lambda5(double c) {
  const double d = digamma(c + 2.0) - digamma(2.0 * c + 2.0);
  return trigamma(c + 2.0) - trigamma(2.0 * c + 2.0) + d * d;
}

double lambda6(double c) {
  const double d = digamma(c + 1.0) - digamma(2.0 * c + 2.0);
  return d * d - trigamma(2.0 * c + 2.0);
}

std::vector<ReverseLevelTerms> reverse_level_terms(const PolyaTreeSpec& spec) {
  std::vector<ReverseLevelTerms> terms;
  terms.reserve(static_cast<std::size_t>(spec.levels()));
  for (int m = 1; m <= spec.levels(); ++m) {
    const double c = spec.beta_shape(m);
    terms.push_back({c, lambda2(c), lambda3(c), lambda4(c), lambda5(c), lambda6(c)});
  }
  return terms;
}

double var_kl_reverse_from_terms(std::span<const ReverseLevelTerms> terms) {
  const std::size_t levels = terms.size();
  // ratio[m] = (c+1)/(2c+1), share[m] = c/(2c+1); prefix[m] = prod_{k<=m} ratio[k].
  std::vector<double> ratio(levels + 1), share(levels + 1), prefix(levels + 1), half(levels + 1);
  prefix[0] = 1.0;
  half[0] = 1.0;
  for (std::size_t m = 1; m <= levels; ++m) {
    const double c = terms[m - 1].shape;
    ratio[m] = (c + 1.0) / (2.0 * c + 1.0);
    share[m] = c / (2.0 * c + 1.0);
    prefix[m] = prefix[m - 1] * ratio[m];
    half[m] = 0.5 * half[m - 1];
  }
  auto l2 = [&](std::size_t m) { return terms[m - 1].l2; };

  double a = 0.0;
  for (std::size_t m = 1; m <= levels; ++m) {
    a += prefix[m] * terms[m - 1].l5 - half[m] * l2(m) * l2(m);
  }

  double b = 0.0;
  for (std::size_t m = 1; m <= levels; ++m) {
    const auto& t = terms[m - 1];
    const double l2m_sq = t.l2 * t.l2;
    double inner = share[m] * prefix[m - 1] * t.l6 - half[m] * l2m_sq;
    for (std::size_t j = 1; j < m; ++j) {
      inner += share[j] * prefix[j - 1] * l2m_sq - half[j] * l2m_sq;
    }
    double cross = 0.0;
    for (std::size_t j = m + 1; j <= levels; ++j) {
      cross += ratio[m] * t.l3 * l2(j) + share[m] * t.l4 * l2(j) - t.l2 * l2(j);
    }
    inner += 2.0 * prefix[m - 1] * cross;
    b += inner;
  }
  return a + b;
}

double var_kl_reverse(const PolyaTreeSpec& spec) {
  const auto terms = reverse_level_terms(spec);
  return var_kl_reverse_from_terms(terms);
}

std::vector<MomentRow> moment_table(const MomentGrid& grid) {
  if (grid.max_levels < 1 || grid.max_levels > kMaxLevels) {
    throw std::domain_error("moment_table: max_levels outside 1.." + std::to_string(kMaxLevels));
  }
  std::vector<MomentRow> rows;
  rows.reserve(grid.families.size() * grid.alphas.size() *
               static_cast<std::size_t>(grid.max_levels));
  for (const auto& family : grid.families) {
    for (double alpha : grid.alphas) {
      std::optional<double> bound;
      if (family.is_continuous()) bound = corollary_bound(alpha, family);
      for (int m = 1; m <= grid.max_levels; ++m) {
        const PolyaTreeSpec spec(alpha, family, m);
        rows.push_back({family, m, alpha, mean_kl_forward(spec), var_kl_forward(spec),
                        mean_kl_reverse(spec), var_kl_reverse(spec), bound});
      }
    }
  }
  return rows;
}

}  // namespace ptkl
