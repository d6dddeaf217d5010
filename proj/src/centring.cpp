#include "ptkl/centring.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ptkl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Bisection on the CDF; 200 halvings of [-40, 40] reach the double grid.
double normal_quantile(double u) {
  if (u <= 0.0) return -kInf;
  if (u >= 1.0) return kInf;
  if (u == 0.5) return 0.0;
  double lo = -40.0;
  double hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (normal_cdf(mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view Centring::name() const {
  switch (kind_) {
    case Kind::Uniform01:
      return "uniform";
    case Kind::StandardNormal:
      return "normal";
  }
  return "unknown";
}

double Centring::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("Centring::quantile: u must lie in [0, 1]");
  }
  switch (kind_) {
    case Kind::Uniform01:
      return u;
    case Kind::StandardNormal:
      return normal_quantile(u);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double Centring::cdf(double x) const {
  switch (kind_) {
    case Kind::Uniform01:
      return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x);
    case Kind::StandardNormal:
      return normal_cdf(x);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double Centring::density(double x) const {
  switch (kind_) {
    case Kind::Uniform01:
      return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
    case Kind::StandardNormal:
      return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace ptkl
