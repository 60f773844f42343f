#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "decaysum/decay.hpp"
#include "decaysum/privacy.hpp"

namespace decaysum {

/// Reference oracle: out[t] = sum_{i=1}^{t} x_i f(t-i+1), direct O(T^2).
/// SlidingWindow decay yields plain window sums.
std::vector<double> true_decaying_sums(const DecayFunction& f,
                                       std::span<const double> x);

enum class StreamDistribution { Ones, Zeros, Uniform, Rademacher };
StreamDistribution parse_distribution(const std::string& name);
std::string to_string(StreamDistribution d);

enum class MechanismKind { Factorization, SlidingWindow, GaussianBaseline };
MechanismKind parse_mechanism(const std::string& name);
std::string to_string(MechanismKind m);

struct ErrorReport {
  std::string mechanism;
  std::string decay;
  std::int64_t horizon = 0;
  std::int64_t trials = 0;
  double empirical_linf = 0.0;  // mean over trials of max_t |out_t - truth_t|
  double empirical_l22 = 0.0;   // mean over trials of (1/T) sum_t (out_t - truth_t)^2
  double bound_linf = 0.0;      // sigma * Delta * gamma2_upper * sqrt(ln T)
  double bound_l22 = 0.0;       // (sigma * Delta * gamma2_upper)^2
};

/// Monte Carlo error estimate at a fixed stream distribution. Trial i uses
/// mechanism seed derive_seed(seed, 2i) and stream seed derive_seed(seed,
/// 2i+1), so parallel and serial runs aggregate identically (per-trial
/// results are reduced in index order with compensated summation).
/// threads = 0 picks the hardware concurrency.
ErrorReport run_error_experiment(MechanismKind kind, const DecayFunction& f,
                                 std::int64_t T, const PrivacyParams& privacy,
                                 std::int64_t trials, StreamDistribution dist,
                                 std::uint64_t seed,
                                 bool unsafe_no_privacy = false,
                                 int threads = 0);

/// Row of the coefficient-gap table for f(n) = n^-c. gap = f(n+1)/2 - a_n is
/// the slack in the domination 2 a_n <= f(n+1); gap_sq = (f(n+1)/2)^2 - a_n^2
/// is the per-term slack between the two gamma_2 bound sums.
struct GapRow {
  std::int64_t n = 0;
  double coeff = 0.0;
  double half_weight = 0.0;
  double gap = 0.0;
  double gap_sq = 0.0;
};

/// Gap table for n = 1..N. Every gap is non-negative for f(n) = n^-c.
std::vector<GapRow> coeff_gap_table(int c, std::int64_t N);

struct ComparisonReport {
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<std::pair<std::string, bool>> orderings;
  bool all_pass = true;
};

/// Tabulates our bounds against the prior baseline, the Gaussian-mechanism
/// sensitivity and (polynomial only) the Bolot et al. constant, and flags
/// each claimed strict ordering. Polynomial and Exponential only.
ComparisonReport comparison_report(const DecayFunction& f, std::int64_t T,
                                   const PrivacyParams& privacy);

}  // namespace decaysum
