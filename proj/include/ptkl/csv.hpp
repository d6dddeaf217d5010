#pragma once

#include <optional>
#include <string>

namespace ptkl {

/// printf("%.12g"); "inf", "-inf" and "nan" for non-finite values.
std::string format_real(double x);

/// Empty string for std::nullopt.
std::string format_optional(const std::optional<double>& x);

}  // namespace ptkl
