#include "decaysum/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "decaysum/bounds.hpp"
#include "decaysum/rng.hpp"

namespace decaysum {

namespace {

std::vector<double> draw_noise(std::int64_t count, double std_dev, std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(count), 0.0);
  if (std_dev > 0.0) {
    GaussianSampler sampler(seed);
    for (auto& v : out) v = std_dev * sampler.next();
  }
  return out;
}

double clamp_input(double x, double bound, std::int64_t& clips) {
  if (x > bound) { ++clips; return bound; }
  if (x < -bound) { ++clips; return -bound; }
  return x;
}

}  // namespace

FactorizationMechanism::FactorizationMechanism(const DecayFunction& f,
                                               std::int64_t T,
                                               const PrivacyParams& privacy,
                                               std::uint64_t seed,
                                               bool unsafe_no_privacy)
    : factor_(build_factor(f, T)), clip_(privacy.clip_bound) {
  base_std_ = unsafe_no_privacy
                  ? 0.0
                  : privacy.sigma_multiplier() * clip_ * factor_.column_norm;
  base_noise_ = draw_noise(T, base_std_, seed);
  inner_.reserve(static_cast<std::size_t>(T));
  xs_.reserve(static_cast<std::size_t>(T));
  prefix_r2_.resize(static_cast<std::size_t>(T));
  double acc = 0.0;
  for (std::int64_t i = 0; i < T; ++i) {
    const double r = factor_.first_column[static_cast<std::size_t>(i)];
    acc += r * r;
    prefix_r2_[static_cast<std::size_t>(i)] = acc;
  }
}

double FactorizationMechanism::step(double x_t) {
  if (t_ >= factor_.horizon)
    throw std::out_of_range("FactorizationMechanism::step: stream exhausted");
  xs_.push_back(clamp_input(x_t, clip_, clips_));
  ++t_;

  const auto& r = factor_.first_column;
  // v[t] = (L x')[t] + b[t]
  double lx = 0.0;
  for (std::int64_t j = 0; j < t_; ++j)
    lx += r[static_cast<std::size_t>(t_ - 1 - j)] * xs_[static_cast<std::size_t>(j)];
  inner_.push_back(lx + base_noise_[static_cast<std::size_t>(t_ - 1)]);

  // out_t = (L v)[t]
  double out = 0.0;
  for (std::int64_t i = 0; i < t_; ++i)
    out += r[static_cast<std::size_t>(t_ - 1 - i)] * inner_[static_cast<std::size_t>(i)];
  return out;
}

double FactorizationMechanism::noise_std(std::int64_t t) const {
  if (t < 1 || t > factor_.horizon)
    throw std::out_of_range("noise_std: t out of range");
  return base_std_ * std::sqrt(prefix_r2_[static_cast<std::size_t>(t - 1)]);
}

SlidingWindowMechanism::SlidingWindowMechanism(std::int64_t w, std::int64_t T,
                                               const PrivacyParams& privacy,
                                               std::uint64_t seed,
                                               bool unsafe_no_privacy)
    : block_(build_block_factor(w, T)), clip_(privacy.clip_bound) {
  base_std_ = unsafe_no_privacy
                  ? 0.0
                  : privacy.sigma_multiplier() * clip_ * block_.base_factor.column_norm;
  base_noise_ = draw_noise(T, base_std_, seed);
  noisy_prefix_.reserve(static_cast<std::size_t>(T));
  block_xs_.reserve(static_cast<std::size_t>(w));
}

double SlidingWindowMechanism::step(double x_t) {
  const std::int64_t T = block_.horizon;
  const std::int64_t w = block_.window;
  if (t_ >= T) throw std::out_of_range("SlidingWindowMechanism::step: stream exhausted");
  const double x = clamp_input(x_t, clip_, clips_);
  ++t_;

  const std::int64_t offset = (t_ - 1) % w;  // 0-based position within the block
  const std::int64_t block_start = t_ - 1 - offset;
  if (offset == 0) block_xs_.clear();
  block_xs_.push_back(x);

  // u[t] = (block prefix sum of x) + (L_1 b_block)[offset]
  double v = 0.0;
  for (double xi : block_xs_) v += xi;
  const auto& r = block_.base_factor.first_column;
  double z = 0.0;
  for (std::int64_t q = 0; q <= offset; ++q)
    z += r[static_cast<std::size_t>(offset - q)] *
         base_noise_[static_cast<std::size_t>(block_start + q)];
  const double u = v + z;

  // U[t] = completed block totals + u[t]
  const double U = completed_total_ + u;
  noisy_prefix_.push_back(U);
  if (offset == w - 1) completed_total_ += u;

  if (t_ <= w) return U;
  return U - noisy_prefix_[static_cast<std::size_t>(t_ - w - 1)];
}

double SlidingWindowMechanism::noise_std(std::int64_t t) const {
  const std::int64_t w = block_.window;
  if (t < 1 || t > block_.horizon) throw std::out_of_range("noise_std: t out of range");
  const auto& r = block_.base_factor.first_column;
  // C = L1 L1^T over the base block
  auto cov = [&](std::int64_t i, std::int64_t j) {  // 1-based indices, i >= j
    double acc = 0.0;
    for (std::int64_t q = 1; q <= j; ++q)
      acc += r[static_cast<std::size_t>(i - q)] * r[static_cast<std::size_t>(j - q)];
    return acc;
  };
  const std::int64_t p = (t - 1) % w + 1;
  double variance;
  if (t <= w || p == w) {
    variance = cov(p, p);
  } else {
    // noise = z[t] + z[prev block end] - z[t-w]; the last two share a block
    variance = cov(p, p) + cov(w, w) + cov(p, p) - 2.0 * cov(w, p);
  }
  return base_std_ * std::sqrt(variance);
}

GaussianBaselineMechanism::GaussianBaselineMechanism(const DecayFunction& f,
                                                     std::int64_t T,
                                                     const PrivacyParams& privacy,
                                                     std::uint64_t seed,
                                                     bool unsafe_no_privacy)
    : f_(f), horizon_(T), clip_(privacy.clip_bound) {
  if (T < 1) throw std::invalid_argument("GaussianBaselineMechanism: T must be >= 1");
  noise_std_ = unsafe_no_privacy
                   ? 0.0
                   : privacy.sigma_multiplier() * clip_ * gaussian_sensitivity(f, T);
  noise_ = draw_noise(T, noise_std_, seed);
  xs_.reserve(static_cast<std::size_t>(T));
}

double GaussianBaselineMechanism::step(double x_t) {
  if (t_ >= horizon_)
    throw std::out_of_range("GaussianBaselineMechanism::step: stream exhausted");
  xs_.push_back(clamp_input(x_t, clip_, clips_));
  ++t_;
  double truth = 0.0;
  for (std::int64_t i = 1; i <= t_; ++i)
    truth += xs_[static_cast<std::size_t>(i - 1)] * f_(t_ - i + 1);
  return truth + noise_[static_cast<std::size_t>(t_ - 1)];
}

}  // namespace decaysum
