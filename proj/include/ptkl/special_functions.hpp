#pragma once

// Log-gamma, digamma, trigamma and Riemann zeta on the positive reals.
//
// All functions are pure and thread-safe. Arguments outside the domain
// raise std::domain_error.

namespace ptkl {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// psi_0(x) = d/dx log Gamma(x), x > 0.
///
/// Arguments below 8 are shifted upward with psi(x) = psi(x+1) - 1/x,
/// then the asymptotic series in 1/x^2 is applied through B_12.
double digamma(double x);

/// psi_1(x) = d^2/dx^2 log Gamma(x), x > 0.
double trigamma(double x);

/// zeta(s) = sum_{n>=1} n^-s for real s > 1.
double riemann_zeta(double s);

}  // namespace ptkl
