#pragma once

#include <string_view>

namespace ptkl {

/// Centring distribution F0 of a Polya tree: supplies the quantile map that
/// places the dyadic partition, plus the CDF and density used by
/// density_at().
class Centring {
 public:
  enum class Kind { Uniform01, StandardNormal };

  static Centring uniform01() { return Centring(Kind::Uniform01); }
  static Centring standard_normal() { return Centring(Kind::StandardNormal); }

  Kind kind() const { return kind_; }
  std::string_view name() const;

  /// F0^-1(u) for u in [0, 1]; returns -inf at 0 and +inf at 1 for
  /// unbounded supports.
  double quantile(double u) const;
  double cdf(double x) const;
  double density(double x) const;

 private:
  explicit Centring(Kind kind) : kind_(kind) {}
  Kind kind_;
};

}  // namespace ptkl
