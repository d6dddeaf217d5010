#include "ptkl/csv.hpp"

#include <cmath>
#include <cstdio>

namespace ptkl {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_real(*x) : std::string();
}

}  // namespace ptkl
