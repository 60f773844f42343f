#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "decaysum/decay.hpp"

namespace decaysum {

/// Lower-triangular Toeplitz factor L with L*L = M_f on the first T
/// diagonals. first_column holds r(1)..r(T) with r(i) = a_{i-1}, r(1) = 1.
struct ToeplitzFactor {
  std::vector<double> first_column;
  std::int64_t horizon = 0;
  double column_norm = 1.0;  // ||L||_{1->2} = sqrt(sum_i r(i)^2)

  double column_norm_sq() const { return column_norm * column_norm; }
};

/// Dense row-major matrix, test support only.
struct DenseMatrix {
  std::int64_t n = 0;
  std::vector<double> data;

  double& at(std::int64_t i, std::int64_t j) { return data[i * n + j]; }
  double at(std::int64_t i, std::int64_t j) const { return data[i * n + j]; }
};

ToeplitzFactor build_factor(const DecayFunction& f, std::int64_t T);

/// out[t] = sum_{i=1}^{t} r(t-i+1) x[i]; direct O(T^2) convolution.
std::vector<double> toeplitz_matvec(const ToeplitzFactor& factor,
                                    std::span<const double> x);

/// Dense L*L. The product of two lower-triangular Toeplitz matrices is again
/// lower-triangular Toeplitz, so the first column (the convolution square of
/// r) determines every entry. Guarded at T <= 8192 (quadratic memory).
DenseMatrix reconstruct_mf(const ToeplitzFactor& factor);

/// Block-diagonal factorization for the sliding-window mechanism: blocks of
/// dimension `window` holding the constant-decay factor L_1 (L_1 * L_1 = M_1,
/// the all-ones lower triangle), with a final tail block of dimension
/// T mod window when T is not a multiple of window.
struct BlockFactor {
  std::int64_t window = 0;
  std::int64_t horizon = 0;
  std::int64_t block_count = 0;
  std::int64_t tail_size = 0;  // 0 when window divides horizon
  ToeplitzFactor base_factor;  // dimension = window, constant decay
};

BlockFactor build_block_factor(std::int64_t w, std::int64_t T);

}  // namespace decaysum
