#include "ptkl/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ptkl {
namespace {

constexpr double kShiftThreshold = 8.0;
constexpr double kStirlingThreshold = 10.0;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(name) + ": argument must be a positive finite real, got " +
                            std::to_string(x));
  }
}

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients). Valid for x >= 0.5.
double log_gamma_lanczos(double x) {
  static constexpr std::array<double, 9> kCoef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  const double z = x - 1.0;
  double sum = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) {
    sum += kCoef[i] / (z + static_cast<double>(i));
  }
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Stirling series with Bernoulli terms through B_12.
double log_gamma_stirling(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 +
             inv2 * (-1.0 / 360.0 +
                     inv2 * (1.0 / 1260.0 +
                             inv2 * (-1.0 / 1680.0 +
                                     inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360360.0))))));
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x == 1.0 || x == 2.0) {
    return 0.0;
  }
  if (x >= kStirlingThreshold) {
    return log_gamma_stirling(x);
  }
  if (x < 0.5) {
    return log_gamma_lanczos(x + 1.0) - std::log(x);
  }
  return log_gamma_lanczos(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double shift = 0.0;
  while (x < kShiftThreshold) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // sum_{k=1}^{6} B_2k / (2k x^2k)
  const double tail =
      inv2 * (1.0 / 12.0 +
              inv2 * (-1.0 / 120.0 +
                      inv2 * (1.0 / 252.0 +
                              inv2 * (-1.0 / 240.0 +
                                      inv2 * (1.0 / 132.0 + inv2 * (-691.0 / 32760.0))))));
  return shift + (std::log(x) - 0.5 / x - tail);
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double y = x;
  int steps = 0;
  while (y < kShiftThreshold) {
    y += 1.0;
    ++steps;
  }
  const double inv = 1.0 / y;
  const double inv2 = inv * inv;
  // 1/y + 1/(2y^2) + sum_{k=1}^{7} B_2k / y^(2k+1)
  double total =
      inv * (1.0 +
             inv * 0.5 +
             inv2 * (1.0 / 6.0 +
                     inv2 * (-1.0 / 30.0 +
                             inv2 * (1.0 / 42.0 +
                                     inv2 * (-1.0 / 30.0 +
                                             inv2 * (5.0 / 66.0 +
                                                     inv2 * (-691.0 / 2730.0 +
                                                             inv2 * (7.0 / 6.0))))))));
  // Small-to-large, so the dominant 1/x^2 is the single last rounding.
  for (int k = steps - 1; k >= 0; --k) {
    const double v = x + static_cast<double>(k);
    total += 1.0 / (v * v);
  }
  return total;
}

double riemann_zeta(double s) {
  if (!(s > 1.0) || std::isnan(s)) {
    throw std::domain_error("riemann_zeta: requires s > 1, got " + std::to_string(s));
  }
  if (std::isinf(s)) {
    return 1.0;
  }
  constexpr int kTerms = 20;
  // Euler-Maclaurin: sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
  //   + sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1).
  static constexpr std::array<double, 6> kBernoulliOverFactorial = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0};

  double sum = 0.0;
  for (int n = kTerms - 1; n >= 1; --n) {
    sum += std::pow(static_cast<double>(n), -s);
  }
  const double big_n = kTerms;
  const double n_pow = std::pow(big_n, -s);
  double correction = big_n * n_pow / (s - 1.0) + 0.5 * n_pow;

  double rising = s;            // s (s+1) ... (s+2k-2)
  double power = n_pow / big_n;  // N^(-s-2k+1)
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    correction += kBernoulliOverFactorial[k] * rising * power;
    const double a = s + 2.0 * static_cast<double>(k) + 1.0;
    rising *= a * (a + 1.0);
    power /= big_n * big_n;
  }
  return sum + correction;
}

}  // namespace ptkl
