#include "decaysum/series.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace decaysum {

SeriesInput series_input(const DecayFunction& f, std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("series horizon must be >= 1");
  if (f.is_window())
    throw std::domain_error("sliding-window decay has no square-root symbol; "
                            "use the block factorization");
  SeriesInput in;
  in.g_coeffs.resize(static_cast<std::size_t>(horizon));
  for (std::int64_t n = 0; n < horizon; ++n)
    in.g_coeffs[static_cast<std::size_t>(n)] = f(n + 1);
  return in;
}

SqrtSeries sqrt_series(const SeriesInput& input) {
  const std::int64_t T = input.horizon();
  if (T == 0) throw std::invalid_argument("sqrt_series: empty input");
  if (input.g_coeffs[0] != 1.0)
    throw std::invalid_argument("sqrt_series: g_0 must equal 1 (normalize so f(1) = 1)");

  SqrtSeries out;
  out.coeffs.assign(static_cast<std::size_t>(T), 0.0);
  auto& a = out.coeffs;
  a[0] = 1.0;
  for (std::int64_t n = 1; n < T; ++n) {
    double cross = 0.0;
    for (std::int64_t k = 1; k < n; ++k)
      cross += a[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(n - k)];
    a[static_cast<std::size_t>(n)] =
        (input.g_coeffs[static_cast<std::size_t>(n)] - cross) / 2.0;
  }
  return out;
}

namespace {

// Bell table in long double: the alternating-sign sum in the closed form
// cancels enough that plain double drifts past 1e-9 relative by n = 30.
std::vector<std::vector<long double>> bell_table(int n_max,
                                                 std::span<const double> s) {
  std::vector<std::vector<long double>> B(
      static_cast<std::size_t>(n_max) + 1,
      std::vector<long double>(static_cast<std::size_t>(n_max) + 1, 0.0L));
  B[0][0] = 1.0L;

  // binomial coefficients C(n, l)
  std::vector<std::vector<long double>> C(B.size(), std::vector<long double>(B.size(), 0.0L));
  for (std::size_t n = 0; n < C.size(); ++n) {
    C[n][0] = 1.0L;
    for (std::size_t l = 1; l <= n; ++l)
      C[n][l] = C[n - 1][l - 1] + (l <= n - 1 ? C[n - 1][l] : 0.0L);
  }

  auto s_at = [&](int idx) -> long double {  // s_idx, 1-based
    return idx - 1 < static_cast<int>(s.size())
               ? static_cast<long double>(s[static_cast<std::size_t>(idx - 1)])
               : 0.0L;
  };

  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      long double acc = 0.0L;
      for (int l = k - 1; l <= n - 1; ++l)
        acc += C[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)] *
               s_at(n - l) * B[static_cast<std::size_t>(l)][static_cast<std::size_t>(k - 1)];
      B[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = acc / k;
    }
  }
  return B;
}

}  // namespace

double bell_polynomial(int n, int k, std::span<const double> s) {
  if (n < 0 || k < 0) throw std::domain_error("bell_polynomial: negative order");
  if (n > kBellMaxOrder)
    throw std::out_of_range("bell_polynomial: n exceeds the closed-form cap of 30");
  if (k > n || (k == 0 && n > 0))
    throw std::domain_error("bell_polynomial: requires 1 <= k <= n");
  if (n == 0) return 1.0;
  const auto B = bell_table(n, s);
  return static_cast<double>(B[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
}

double closed_form_coeff(const DecayFunction& f, int n) {
  if (n < 0) throw std::domain_error("closed_form_coeff: n must be >= 0");
  if (n > kBellMaxOrder)
    throw std::out_of_range("closed_form_coeff: n exceeds the closed-form cap of 30");
  if (f.is_window())
    throw std::domain_error("closed_form_coeff: sliding-window decay unsupported");
  if (n == 0) return 1.0;

  // s_m = m! f(m+1)
  std::vector<double> s(static_cast<std::size_t>(n));
  double fact = 1.0;
  for (int m = 1; m <= n; ++m) {
    fact *= m;
    s[static_cast<std::size_t>(m - 1)] = fact * f(m + 1);
  }

  const auto B = bell_table(n, s);
  long double total = 0.0L;
  long double prod = 1.0L;  // prod_{m=0}^{k-1} (1/2 - m)
  for (int k = 1; k <= n; ++k) {
    prod *= 0.5L - (k - 1);
    total += B[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] * prod;
  }
  long double n_fact = 1.0L;
  for (int m = 2; m <= n; ++m) n_fact *= m;
  return static_cast<double>(total / n_fact);
}

double exponential_coeff(double alpha, std::int64_t n) {
  if (!(alpha >= 1.0)) throw std::domain_error("exponential_coeff: alpha must be >= 1");
  if (n < 0) throw std::domain_error("exponential_coeff: n must be >= 0");
  double v = 1.0;
  for (std::int64_t j = 1; j <= n; ++j)
    v *= static_cast<double>(2 * j - 1) / (static_cast<double>(2 * j) * alpha);
  return v;
}

}  // namespace decaysum
