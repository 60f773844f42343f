#pragma once

#include <cstdint>
#include <vector>

#include "decaysum/decay.hpp"
#include "decaysum/privacy.hpp"
#include "decaysum/toeplitz.hpp"

namespace decaysum {

/// Streaming factorization mechanism: at step t it returns the t-th entry of
/// L(Lx' + b), where x' is the zero-padded prefix of the stream and b is an
/// i.i.d. Gaussian vector with per-coordinate standard deviation
/// sigma_{eps,delta} * Delta * ||L||_{1->2}, drawn once at construction so a
/// seed fixes the whole transcript. The expected output is the exact decaying
/// sum sum_{i<=t} x_i f(t-i+1); the noise variance at step t is
/// sigma^2 * sum_{i<=t} r(i)^2.
///
/// Inputs are clamped to [-Delta, Delta]; clamps are counted, not rejected.
/// unsafe_no_privacy forces the noise to zero (test mode, never implicit).
class FactorizationMechanism {
 public:
  FactorizationMechanism(const DecayFunction& f, std::int64_t T,
                         const PrivacyParams& privacy, std::uint64_t seed,
                         bool unsafe_no_privacy = false);

  double step(double x_t);

  std::int64_t time() const { return t_; }
  std::int64_t horizon() const { return factor_.horizon; }
  std::int64_t clip_count() const { return clips_; }
  const ToeplitzFactor& factor() const { return factor_; }

  /// Per-coordinate std of the base noise b.
  double base_noise_std() const { return base_std_; }
  /// Analytic noise std of the output at step t (1-based).
  double noise_std(std::int64_t t) const;

 private:
  ToeplitzFactor factor_;
  double clip_;
  double base_std_;
  std::vector<double> base_noise_;  // b
  std::vector<double> inner_;       // v[i] = (Lx')[i] + b[i] for i < t
  std::vector<double> xs_;          // clamped inputs
  std::vector<double> prefix_r2_;   // prefix_r2_[i] = sum_{q<=i+1} r(q)^2
  std::int64_t t_ = 0;
  std::int64_t clips_ = 0;
};

/// Sliding-window mechanism over the block factorization. Each block of size
/// w runs the constant-decay factorization independently; completed blocks
/// contribute their released noisy totals to a running prefix estimate
///   U[t] = sum_{completed blocks} u[block end] + u[t],
/// and the output is U[t] for t <= w and U[t] - U[t-w] afterwards. With the
/// noise off this telescopes to the exact window sum
/// sum_{i=max(1,t-w+1)}^{t} x_i. Everything released is block-local, so the
/// privacy accounting is that of the w-dimensional constant-decay factor.
class SlidingWindowMechanism {
 public:
  SlidingWindowMechanism(std::int64_t w, std::int64_t T,
                         const PrivacyParams& privacy, std::uint64_t seed,
                         bool unsafe_no_privacy = false);

  double step(double x_t);

  std::int64_t time() const { return t_; }
  std::int64_t horizon() const { return block_.horizon; }
  std::int64_t window() const { return block_.window; }
  std::int64_t clip_count() const { return clips_; }
  const BlockFactor& block_factor() const { return block_; }

  double base_noise_std() const { return base_std_; }
  /// Analytic noise std of the output at step t. For t > w the noise is
  /// z[t] + z[prev block end] - z[t-w]; the last two live in the same block
  /// and are correlated, and cancel exactly when t sits at a block boundary.
  double noise_std(std::int64_t t) const;

 private:
  BlockFactor block_;
  double clip_;
  double base_std_;
  std::vector<double> base_noise_;
  std::vector<double> noisy_prefix_;  // U[1..t]
  std::vector<double> block_xs_;      // inputs of the current block
  double completed_total_ = 0.0;      // sum of u[block end] over closed blocks
  std::int64_t t_ = 0;
  std::int64_t clips_ = 0;
};

/// Per-step Gaussian baseline: the exact decaying sum plus independent noise
/// with standard deviation sigma_{eps,delta} * Delta * L_CDS, where L_CDS is
/// the l2-sensitivity sqrt(sum_{n<=T} f(n)^2) of the whole output vector.
class GaussianBaselineMechanism {
 public:
  GaussianBaselineMechanism(const DecayFunction& f, std::int64_t T,
                            const PrivacyParams& privacy, std::uint64_t seed,
                            bool unsafe_no_privacy = false);

  double step(double x_t);

  std::int64_t time() const { return t_; }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t clip_count() const { return clips_; }
  double noise_std() const { return noise_std_; }

 private:
  DecayFunction f_;
  std::int64_t horizon_;
  double clip_;
  double noise_std_;
  std::vector<double> noise_;
  std::vector<double> xs_;
  std::int64_t t_ = 0;
  std::int64_t clips_ = 0;
};

}  // namespace decaysum
