#include "decaysum/toeplitz.hpp"

#include <cmath>
#include <stdexcept>

#include "decaysum/series.hpp"

namespace decaysum {

ToeplitzFactor build_factor(const DecayFunction& f, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("build_factor: T must be >= 1");
  if (f.is_window())
    throw std::domain_error("build_factor: use build_block_factor for "
                            "sliding-window decay");
  ToeplitzFactor factor;
  factor.first_column = sqrt_series(series_input(f, T)).coeffs;
  factor.horizon = T;
  double sum = 0.0;
  for (double r : factor.first_column) sum += r * r;
  factor.column_norm = std::sqrt(sum);
  return factor;
}

std::vector<double> toeplitz_matvec(const ToeplitzFactor& factor,
                                    std::span<const double> x) {
  const std::int64_t T = factor.horizon;
  if (static_cast<std::int64_t>(x.size()) != T)
    throw std::invalid_argument("toeplitz_matvec: vector length must equal the horizon");
  std::vector<double> out(static_cast<std::size_t>(T), 0.0);
  const auto& r = factor.first_column;
  for (std::int64_t t = 0; t < T; ++t) {
    double acc = 0.0;
    for (std::int64_t i = 0; i <= t; ++i)
      acc += r[static_cast<std::size_t>(t - i)] * x[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

DenseMatrix reconstruct_mf(const ToeplitzFactor& factor) {
  const std::int64_t T = factor.horizon;
  if (T > 8192)
    throw std::length_error("reconstruct_mf: dense reconstruction guarded at T <= 8192");
  // L*L is lower-triangular Toeplitz; its first column is the truncated
  // convolution square of r.
  const auto& r = factor.first_column;
  std::vector<double> col(static_cast<std::size_t>(T), 0.0);
  for (std::int64_t k = 0; k < T; ++k) {
    double acc = 0.0;
    for (std::int64_t i = 0; i <= k; ++i)
      acc += r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(k - i)];
    col[static_cast<std::size_t>(k)] = acc;
  }
  DenseMatrix m;
  m.n = T;
  m.data.assign(static_cast<std::size_t>(T * T), 0.0);
  for (std::int64_t i = 0; i < T; ++i)
    for (std::int64_t j = 0; j <= i; ++j)
      m.at(i, j) = col[static_cast<std::size_t>(i - j)];
  return m;
}

BlockFactor build_block_factor(std::int64_t w, std::int64_t T) {
  if (w < 1) throw std::invalid_argument("build_block_factor: w must be >= 1");
  if (T < 1) throw std::invalid_argument("build_block_factor: T must be >= 1");
  if (w > T) throw std::invalid_argument("build_block_factor: needs w <= T");
  BlockFactor b;
  b.window = w;
  b.horizon = T;
  b.block_count = (T + w - 1) / w;
  b.tail_size = T % w;
  b.base_factor = build_factor(DecayFunction::constant(), w);
  return b;
}

}  // namespace decaysum
