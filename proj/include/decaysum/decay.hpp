#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace decaysum {

enum class DecayKind { Constant, Polynomial, Exponential, SlidingWindow, Custom };

/// Weight function f : {1, 2, ...} -> R+ with f(1) = 1, monotonically
/// non-increasing. Such a function defines the lower-triangular Toeplitz
/// matrix M_f with entries M_f[i][j] = f(i - j + 1), whose row t computes
/// the decaying sum sum_{i<=t} x_i f(t - i + 1).
///
/// Exponential(alpha) evaluates to alpha^(1-n) so that f(1) = 1; the weight
/// shrinks by a factor alpha per step. SlidingWindow(w) is {0,1}-valued
/// (1 for n <= w) and is only accepted by the block mechanism, not by the
/// square-root factorization. Custom tables are extended past their last
/// entry by repeating the final value.
class DecayFunction {
 public:
  static DecayFunction constant();
  static DecayFunction polynomial(int c);
  static DecayFunction exponential(double alpha);
  static DecayFunction sliding_window(std::int64_t w);
  static DecayFunction custom(std::vector<double> table);

  /// Parses "const", "poly:C", "exp:ALPHA" or "window:W".
  static DecayFunction parse(const std::string& spec);

  double operator()(std::int64_t n) const;

  DecayKind kind() const { return kind_; }
  bool is_window() const { return kind_ == DecayKind::SlidingWindow; }
  int exponent() const;         // Polynomial only
  double alpha() const;         // Exponential only
  std::int64_t window() const;  // SlidingWindow only

  std::string name() const;

 private:
  DecayFunction(DecayKind kind, int c, double alpha, std::int64_t w,
                std::vector<double> table);

  DecayKind kind_;
  int exponent_ = 0;
  double alpha_ = 1.0;
  std::int64_t window_ = 0;
  std::vector<double> table_;
};

}  // namespace decaysum
