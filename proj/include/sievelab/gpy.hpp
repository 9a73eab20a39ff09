#pragma once

#include <cstdint>
#include <vector>

#include "sievelab/sieve.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

/// Zhang's level exponent 1/4 + 1/1168, kept for reference only.
inline constexpr double kZhangLevel = 0.25 + 1.0 / 1168.0;

struct GpyParams {
  int l = 1;
  double b = 0.25;
  std::uint64_t x = 10000;
  AdmissibleTuple tuple;

  int k() const noexcept { return static_cast<int>(tuple.size()); }
  /// floor(x^b)
  std::uint64_t d_limit() const;
  /// Throws PreconditionError unless 0 < b < 1/2, l >= 1, x >= 100 and the tuple is non-empty.
  void validate() const;
};

struct GpyReport {
  GpyParams params;
  std::uint64_t D_limit = 0;
  double S1 = 0.0;
  double S2 = 0.0;
  double S2_log = 0.0;  // theta(n) = log n weighting of the tuple primes
  double objective = 0.0;  // S2 - S1
  double S1_rearranged = 0.0;
  double S2_rearranged = 0.0;
  double S2_log_rearranged = 0.0;
  double E = 0.0;
  int E_index = 1;
  double tolerance = 1e-9;
};

struct GpyOptions {
  int e_index = 1;
  double tolerance = 1e-9;
};

/// mu(d) (log(x^b / d))^(k+l) / (k+l)!
double lambda_d(std::uint64_t d, const GpyParams& params);

/// (sum of lambda_d over d <= x^b with d | prod(n + h_i))^2
double f_weight(std::uint64_t n, const GpyParams& params);

/// Direct and rearranged S1, S2 (plus E). Throws ConsistencyError if the two
/// routes differ by more than options.tolerance relative.
GpyReport weighted_sums(const GpyParams& params, const GpyOptions& options = {});

/// { c in [1, d] : gcd(c, d) = 1, d | prod_j (c - h_i + h_j) }, i is 1-based.
std::vector<std::uint64_t> residue_set_C(int i, std::uint64_t d, const AdmissibleTuple& tuple);

struct PrimePowerEntry {
  std::uint64_t n = 0;
  PrimePower power;
};

/// Every prime power p^m in [lo, hi), ascending.
std::vector<PrimePowerEntry> prime_powers_in(std::uint64_t lo, std::uint64_t hi);

/// sum_{x <= n < 2x, n = c (mod d)} Lambda(n) - x / phi(d)
double remainder_R(std::uint64_t x, std::uint64_t d, std::uint64_t c);

/// sum_{d < x^{2b}} |mu(d)| sum_{c in C_i(d)} |R(x; d, c)|
double error_sum_E(const GpyParams& params, int i = 1);

enum class Weighting { prime_count, von_mangoldt };

/// E_q for q = 1 .. floor(x^theta), index q-1.
std::vector<double> level_of_distribution_terms(std::uint64_t x, double theta,
                                                Weighting weighting = Weighting::prime_count);
double level_of_distribution_sum(std::uint64_t x, double theta, Weighting weighting = Weighting::prime_count);

}  // namespace sievelab
