#include "ptkl/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ptkl {
namespace {

void require_shape(double shape, const char* who) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::domain_error(std::string(who) + ": shape must be positive and finite, got " +
                            std::to_string(shape));
  }
}

// Marsaglia & Tsang (2000), shape >= 1. Returns log of the variate.
double log_gamma_marsaglia_tsang(RngStream& stream, double shape) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = stream.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return std::log(d) + std::log(v);
    }
  }
}

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double sample_log_gamma(RngStream& stream, double shape) {
  require_shape(shape, "sample_gamma");
  if (shape >= 1.0) {
    return log_gamma_marsaglia_tsang(stream, shape);
  }
  const double boosted = log_gamma_marsaglia_tsang(stream, shape + 1.0);
  return boosted + std::log(stream.uniform()) / shape;
}

double sample_gamma(RngStream& stream, double shape) {
  return std::exp(sample_log_gamma(stream, shape));
}

BetaDraw sample_beta_log(RngStream& stream, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("sample_beta_log: parameters must be positive and finite");
  }
  const double lg1 = sample_log_gamma(stream, a);
  const double lg2 = sample_log_gamma(stream, b);
  const double total = log_sum_exp(lg1, lg2);
  BetaDraw draw{};
  draw.log_y = lg1 - total;
  draw.log_1my = lg2 - total;
  draw.y = std::exp(draw.log_y);
  return draw;
}

void sample_dirichlet_log(RngStream& stream, std::span<const double> concentration,
                          std::span<double> log_weights) {
  if (concentration.size() < 2) {
    throw std::domain_error("sample_dirichlet: need at least two categories");
  }
  if (log_weights.size() != concentration.size()) {
    throw std::invalid_argument("sample_dirichlet: output size mismatch");
  }
  for (double a : concentration) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::domain_error("sample_dirichlet: concentration entries must be positive");
    }
  }
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < concentration.size(); ++i) {
    log_weights[i] = sample_log_gamma(stream, concentration[i]);
    max_log = std::max(max_log, log_weights[i]);
  }
  double scaled = 0.0;
  for (double lg : log_weights) {
    scaled += std::exp(lg - max_log);
  }
  const double log_total = max_log + std::log(scaled);
  for (double& lg : log_weights) {
    lg -= log_total;
  }
}

std::vector<double> sample_dirichlet(RngStream& stream, std::span<const double> concentration) {
  std::vector<double> w(concentration.size());
  sample_dirichlet_log(stream, concentration, w);
  double total = 0.0;
  for (double& v : w) {
    v = std::exp(v);
    total += v;
  }
  // exp() rounding leaves the sum a few ulps from 1
  for (double& v : w) {
    v /= total;
  }
  return w;
}

void validate_probability_vector(std::span<const double> p, double tolerance) {
  if (p.empty()) {
    throw std::domain_error("probability vector is empty");
  }
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::domain_error("probability vector has a negative or non-finite entry");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > tolerance) {
    throw std::domain_error("probability vector sums to " + std::to_string(total) + ", not 1");
  }
}

std::vector<std::uint32_t> sample_multinomial_counts(RngStream& stream, std::uint32_t trials,
                                                     std::span<const double> p) {
  if (trials == 0) {
    throw std::domain_error("sample_multinomial: trials must be >= 1");
  }
  validate_probability_vector(p, 1e-9);
  std::vector<double> cumulative(p.size());
  double running = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    running += p[i];
    cumulative[i] = running;
  }
  std::vector<std::uint32_t> counts(p.size(), 0);
  for (std::uint32_t t = 0; t < trials; ++t) {
    const double u = stream.uniform() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      --it;
    }
    // skip zero-probability categories that share the same cumulative value
    while (p[static_cast<std::size_t>(it - cumulative.begin())] == 0.0 && it != cumulative.begin()) {
      --it;
    }
    ++counts[static_cast<std::size_t>(it - cumulative.begin())];
  }
  return counts;
}

std::vector<double> sample_multinomial_weights(RngStream& stream, std::uint32_t trials,
                                               std::span<const double> p) {
  const auto counts = sample_multinomial_counts(stream, trials, p);
  std::vector<double> w(counts.size());
  const double inv = 1.0 / static_cast<double>(trials);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    w[i] = static_cast<double>(counts[i]) * inv;
  }
  return w;
}

}  // namespace ptkl
