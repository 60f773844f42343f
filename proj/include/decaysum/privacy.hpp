#pragma once

#include <string>

namespace decaysum {

/// How the (epsilon, delta) pair is translated into a noise multiplier.
///   MainText:  2 sqrt(2 ln(1.25/delta)) / epsilon
///   Appendix:  2 sqrt(ln(1.25/delta)) / epsilon
///   Analytic:  smallest multiplier satisfying the exact Gaussian-mechanism
///              condition Phi(1/2s - eps s) - e^eps Phi(-1/2s - eps s) <= delta
enum class SigmaConvention { MainText, Appendix, Analytic };

SigmaConvention parse_sigma_convention(const std::string& name);
std::string to_string(SigmaConvention c);

/// Smallest s with Phi(1/(2s) - eps*s) - e^eps * Phi(-1/(2s) - eps*s) <= delta.
double analytic_gaussian_multiplier(double epsilon, double delta);

struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double clip_bound = 1.0;  // magnitude cap Delta on each stream element
  SigmaConvention convention = SigmaConvention::MainText;

  /// sigma_{eps,delta} under the selected convention.
  double sigma_multiplier() const;

  /// Validates epsilon, delta in (0,1) and clip_bound > 0.
  static PrivacyParams make(double epsilon, double delta, double clip_bound,
                            SigmaConvention convention = SigmaConvention::MainText);
};

}  // namespace decaysum
