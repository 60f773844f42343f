#pragma once

#include <cstdint>

#include "decaysum/decay.hpp"

namespace decaysum {

/// gamma_2 / gamma_F bounds for M_f at horizon T, plus the prior-work
/// baseline and the Gaussian-mechanism sensitivity for comparison.
/// closed_form and baseline are NaN for kinds that have no family formula.
struct NormBounds {
  double gamma2_lower = 1.0;
  double gamma2_upper = 1.0;
  double gammaF_upper = 1.0;
  double closed_form = 0.0;
  double baseline = 0.0;
  double gaussian_sensitivity = 0.0;
  std::int64_t horizon = 1;
};

/// Generalized harmonic sum H(T, p) = sum_{n=1}^{T-1} n^-p.
double harmonic_sum(std::int64_t T, double p);

/// S(T, 2 alpha) = sum_{n=1}^{T-1} 1 / (n alpha^{2n}).
double exp_log_sum(std::int64_t T, double alpha);

/// Riemann zeta at even arguments. 2c in {2,4,6,8,10} uses the closed-form
/// constants pi^2/6, pi^4/90, pi^6/945, pi^8/9450, pi^10/93555; larger even
/// orders fall back to a partial sum truncated at 1e-15.
double zeta_even(int two_c);

/// Lower bound 2 / sqrt(4 - f(2)^2); exceeds 1 whenever f(2) > 0.
/// Rejects SlidingWindow (the block construction bypasses this bound).
double gamma2_lower_bound(const DecayFunction& f);

/// Upper bound 1 + sum_{n=1}^{T-1} a_n^2 from the square-root coefficients.
/// Monotone non-decreasing in T. Rejects SlidingWindow.
double gamma2_upper_bound(const DecayFunction& f, std::int64_t T);

/// Family-specific closed-form gamma_2 upper bound:
///   Polynomial(c):   1 + (sum_{m=2}^{T} m^-2c) / 4   (capped by 1 + (zeta(2c)-1)/4)
///   Exponential(a):  1 + S(T, 2a) / pi               (a = 1 gives the harmonic sum)
/// Never smaller than gamma2_upper_bound(f, T). Other kinds: domain error.
double closed_form_upper(const DecayFunction& f, std::int64_t T);

/// Prior-work gamma_2 bound for comparison:
///   Polynomial(c):   sqrt(sum_{n=1}^{T} n^-c)
///   Exponential(a):  sum_{n=0}^{T-1} a^-2n
/// Strictly exceeds gamma2_upper_bound for T >= 2. Other kinds: domain error.
double baseline_bounds(const DecayFunction& f, std::int64_t T);

/// l2-sensitivity of the full decaying-sum map: sqrt(sum_{n=1}^{T} f(n)^2).
double gaussian_sensitivity(const DecayFunction& f, std::int64_t T);

/// Bolot et al. sensitivity constant for polynomial decay, 1 + 1/c.
double bolot_sensitivity(int c);

NormBounds norm_bounds(const DecayFunction& f, std::int64_t T);

}  // namespace decaysum
