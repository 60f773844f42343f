#include "decaysum/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "decaysum/series.hpp"

namespace decaysum {

namespace {
constexpr double kPi = 3.14159265358979323846;

void reject_window(const DecayFunction& f, const char* what) {
  if (f.is_window())
    throw std::domain_error(std::string(what) +
                            ": sliding-window decay goes through the block "
                            "factorization, not the square-root bounds");
}
}  // namespace

double harmonic_sum(std::int64_t T, double p) {
  if (T < 1) throw std::invalid_argument("harmonic_sum: T must be >= 1");
  double sum = 0.0, comp = 0.0;
  for (std::int64_t n = 1; n < T; ++n) {
    const double term = std::pow(static_cast<double>(n), -p) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

double exp_log_sum(std::int64_t T, double alpha) {
  if (T < 1) throw std::invalid_argument("exp_log_sum: T must be >= 1");
  if (!(alpha >= 1.0)) throw std::domain_error("exp_log_sum: alpha must be >= 1");
  double sum = 0.0, ratio = 1.0;
  const double a2 = alpha * alpha;
  for (std::int64_t n = 1; n < T; ++n) {
    ratio /= a2;
    if (ratio == 0.0) break;
    sum += ratio / static_cast<double>(n);
  }
  return sum;
}

double zeta_even(int two_c) {
  if (two_c < 2 || two_c % 2 != 0)
    throw std::domain_error("zeta_even: argument must be a positive even integer");
  switch (two_c) {
    case 2: return kPi * kPi / 6.0;
    case 4: return std::pow(kPi, 4) / 90.0;
    case 6: return std::pow(kPi, 6) / 945.0;
    case 8: return std::pow(kPi, 8) / 9450.0;
    case 10: return std::pow(kPi, 10) / 93555.0;
    default: {
      double sum = 1.0;
      for (std::int64_t n = 2;; ++n) {
        const double term = std::pow(static_cast<double>(n), -two_c);
        if (term < 1e-15) break;
        sum += term;
      }
      return sum;
    }
  }
}

double gamma2_lower_bound(const DecayFunction& f) {
  reject_window(f, "gamma2_lower_bound");
  const double f2 = f(2);
  if (!(std::abs(f2) < 2.0))
    throw std::domain_error("gamma2_lower_bound: needs |f(2)| < 2");
  return 2.0 / std::sqrt(4.0 - f2 * f2);
}

double gamma2_upper_bound(const DecayFunction& f, std::int64_t T) {
  reject_window(f, "gamma2_upper_bound");
  const SqrtSeries a = sqrt_series(series_input(f, T));
  double sum = 0.0, comp = 0.0;
  for (std::int64_t n = 1; n < T; ++n) {
    const double c = a.coeffs[static_cast<std::size_t>(n)];
    const double term = c * c - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return 1.0 + sum;
}

double closed_form_upper(const DecayFunction& f, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("closed_form_upper: T must be >= 1");
  switch (f.kind()) {
    case DecayKind::Polynomial: {
      // 1 + (1/4) sum_{n=1}^{T-1} f(n+1)^2 = 1 + (H(T+1, 2c) - 1) / 4
      const double H = harmonic_sum(T + 1, 2.0 * f.exponent());
      return 1.0 + (H - 1.0) / 4.0;
    }
    case DecayKind::Exponential:
      return 1.0 + exp_log_sum(T, f.alpha()) / kPi;
    default:
      throw std::domain_error("closed_form_upper: only polynomial and "
                              "exponential decay have family closed forms");
  }
}

double baseline_bounds(const DecayFunction& f, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("baseline_bounds: T must be >= 1");
  switch (f.kind()) {
    case DecayKind::Polynomial:
      // sqrt(sum_{n=1}^{T} n^-c)
      return std::sqrt(harmonic_sum(T + 1, static_cast<double>(f.exponent())));
    case DecayKind::Exponential: {
      // sum_{n=0}^{T-1} alpha^-2n
      double sum = 0.0, ratio = 1.0;
      const double a2 = f.alpha() * f.alpha();
      for (std::int64_t n = 0; n < T; ++n) {
        sum += ratio;
        ratio /= a2;
        if (ratio == 0.0) break;
      }
      return sum;
    }
    default:
      throw std::domain_error("baseline_bounds: only polynomial and "
                              "exponential decay have prior-work baselines");
  }
}

double gaussian_sensitivity(const DecayFunction& f, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("gaussian_sensitivity: T must be >= 1");
  double sum = 0.0, comp = 0.0;
  for (std::int64_t n = 1; n <= T; ++n) {
    const double v = f(n);
    const double term = v * v - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return std::sqrt(sum);
}

double bolot_sensitivity(int c) {
  if (c < 1) throw std::domain_error("bolot_sensitivity: c must be >= 1");
  return 1.0 + 1.0 / static_cast<double>(c);
}

NormBounds norm_bounds(const DecayFunction& f, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("norm_bounds: T must be >= 1");
  NormBounds b;
  b.horizon = T;
  b.gaussian_sensitivity = gaussian_sensitivity(f, T);
  if (f.is_window()) {
    b.gamma2_lower = b.gamma2_upper = b.gammaF_upper = std::numeric_limits<double>::quiet_NaN();
    b.closed_form = b.baseline = std::numeric_limits<double>::quiet_NaN();
    return b;
  }
  // the lower bound needs f(2), so T = 1 reports the trivial 1
  b.gamma2_lower = T >= 2 ? gamma2_lower_bound(f) : 1.0;
  b.gamma2_upper = gamma2_upper_bound(f, T);
  b.gammaF_upper = std::sqrt(static_cast<double>(T)) * b.gamma2_upper;
  const bool has_family =
      f.kind() == DecayKind::Polynomial || f.kind() == DecayKind::Exponential;
  b.closed_form = has_family ? closed_form_upper(f, T)
                             : std::numeric_limits<double>::quiet_NaN();
  b.baseline = has_family ? baseline_bounds(f, T)
                          : std::numeric_limits<double>::quiet_NaN();
  return b;
}

}  // namespace decaysum
