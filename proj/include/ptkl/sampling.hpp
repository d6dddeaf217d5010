#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ptkl/rng.hpp"

namespace ptkl {

/// log of a Gamma(shape, 1) draw. Marsaglia-Tsang squeeze for shape >= 1;
/// for shape < 1 the boost G(a) = G(a+1) U^(1/a) is applied in log space,
/// so the result stays finite even when the variate itself underflows.
double sample_log_gamma(RngStream& stream, double shape);

/// Gamma(shape, 1) draw. May underflow to 0 for very small shapes; use
/// sample_log_gamma when the logarithm is what is needed.
double sample_gamma(RngStream& stream, double shape);

struct BetaDraw {
  double y;
  double log_y;
  double log_1my;
};

/// Be(a, b) via two gamma variates; log y and log(1-y) are formed from
/// the log-gamma variates directly and are finite even when y rounds to
/// 0 or 1.
BetaDraw sample_beta_log(RngStream& stream, double a, double b);

/// Dirichlet(concentration) weights; entries sum to 1.
std::vector<double> sample_dirichlet(RngStream& stream, std::span<const double> concentration);

/// Dirichlet draw written as log-weights into `log_weights` (same length
/// as `concentration`). Log-weights are exact even where exp() underflows.
void sample_dirichlet_log(RngStream& stream, std::span<const double> concentration,
                          std::span<double> log_weights);

/// Multinomial(trials, p) counts over p.size() categories.
std::vector<std::uint32_t> sample_multinomial_counts(RngStream& stream, std::uint32_t trials,
                                                     std::span<const double> p);

/// Bootstrap weights w = counts / trials, with counts ~ Mult(trials, p).
std::vector<double> sample_multinomial_weights(RngStream& stream, std::uint32_t trials,
                                               std::span<const double> p);

/// Throws std::domain_error unless p is a probability vector: entries
/// non-negative and summing to 1 within `tolerance`.
void validate_probability_vector(std::span<const double> p, double tolerance);

}  // namespace ptkl
