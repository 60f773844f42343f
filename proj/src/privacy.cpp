#include "decaysum/privacy.hpp"

#include <cmath>
#include <stdexcept>

namespace decaysum {

SigmaConvention parse_sigma_convention(const std::string& name) {
  if (name == "main-text") return SigmaConvention::MainText;
  if (name == "appendix") return SigmaConvention::Appendix;
  if (name == "analytic") return SigmaConvention::Analytic;
  throw std::invalid_argument("unknown sigma convention '" + name +
                              "' (expected main-text, appendix or analytic)");
}

std::string to_string(SigmaConvention c) {
  switch (c) {
    case SigmaConvention::MainText: return "main-text";
    case SigmaConvention::Appendix: return "appendix";
    case SigmaConvention::Analytic: return "analytic";
  }
  return "?";
}

namespace {
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
}  // namespace

double analytic_gaussian_multiplier(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("analytic_gaussian_multiplier: needs epsilon > 0, delta in (0,1)");
  auto delta_for = [&](double s) {
    return std_normal_cdf(1.0 / (2.0 * s) - epsilon * s) -
           std::exp(epsilon) * std_normal_cdf(-1.0 / (2.0 * s) - epsilon * s);
  };
  double lo = 1e-6, hi = 1.0;
  while (delta_for(hi) > delta) hi *= 2.0;  // delta_for is decreasing in s
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (delta_for(mid) > delta) lo = mid; else hi = mid;
  }
  return hi;
}

double PrivacyParams::sigma_multiplier() const {
  switch (convention) {
    case SigmaConvention::MainText:
      return 2.0 * std::sqrt(2.0 * std::log(1.25 / delta)) / epsilon;
    case SigmaConvention::Appendix:
      return 2.0 * std::sqrt(std::log(1.25 / delta)) / epsilon;
    case SigmaConvention::Analytic:
      return analytic_gaussian_multiplier(epsilon, delta);
  }
  throw std::logic_error("unreachable sigma convention");
}

PrivacyParams PrivacyParams::make(double epsilon, double delta, double clip_bound,
                                  SigmaConvention convention) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("privacy: epsilon must lie in (0,1]");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("privacy: delta must lie in (0,1)");
  if (!(clip_bound > 0.0))
    throw std::invalid_argument("privacy: clip bound must be positive");
  return PrivacyParams{epsilon, delta, clip_bound, convention};
}

}  // namespace decaysum
