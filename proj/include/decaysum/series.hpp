#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "decaysum/decay.hpp"

namespace decaysum {

/// Input symbol g(x) = sum_n g_n x^n with g_n = f(n+1), so g_0 = f(1) = 1.
struct SeriesInput {
  std::vector<double> g_coeffs;

  std::int64_t horizon() const { return static_cast<std::int64_t>(g_coeffs.size()); }
};

/// Coefficients a_0..a_{T-1} of the square-root symbol h(x), h(x)^2 = g(x).
/// a_0 = 1 always; this vector doubles as the first column of the
/// lower-triangular factor L.
struct SqrtSeries {
  std::vector<double> coeffs;

  std::int64_t horizon() const { return static_cast<std::int64_t>(coeffs.size()); }
};

/// First T values of g_n = f(n+1) for the given decay function.
SeriesInput series_input(const DecayFunction& f, std::int64_t horizon);

/// Square-root coefficients by matching powers of x in h(x)^2 = g(x):
///   a_0 = 1,  a_n = (g_n - sum_{k=1}^{n-1} a_k a_{n-k}) / 2.
/// O(T^2) time, O(T) memory. Requires g_0 = 1 (normalize f so f(1) = 1).
SqrtSeries sqrt_series(const SeriesInput& input);

/// Largest order accepted by the Bell-polynomial path. The factorials in the
/// closed form lose double precision long before they overflow, so this route
/// is a small-n cross-check only; production code uses sqrt_series.
inline constexpr int kBellMaxOrder = 30;

/// Partial exponential Bell polynomial B_{n,k}(s_1, s_2, ...) via the
/// recurrence B_{n,k} = (1/k) sum_{l=k-1}^{n-1} C(n,l) s_{n-l} B_{l,k-1},
/// with B_{0,0} = 1 and B_{n,0} = 0 for n >= 1.
/// s spans s_1..s_{n-k+1} (s[0] = s_1). Requires 0 <= k <= n <= kBellMaxOrder
/// and k >= 1 when n >= 1.
double bell_polynomial(int n, int k, std::span<const double> s);

/// Exact coefficient a_n through Faa di Bruno's formula:
///   a_n = (1/n!) sum_{k=1}^{n} B_{n,k}(1! f(2), 2! f(3), ...)
///                 prod_{m=0}^{k-1} (1/2 - m).
/// Accepts n <= kBellMaxOrder; agrees with sqrt_series to ~1e-12 relative.
double closed_form_coeff(const DecayFunction& f, int n);

/// Coefficient a_n = alpha^-n |binom(-1/2, n)| for exponential decay,
/// computed as the running product prod_{j=1}^{n} (2j-1) / (2j alpha).
/// Satisfies a_n <= alpha^-n / sqrt(pi n) for n >= 1. Requires alpha >= 1.
double exponential_coeff(double alpha, std::int64_t n);

}  // namespace decaysum
