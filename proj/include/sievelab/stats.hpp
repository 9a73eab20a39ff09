#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/sieve.hpp"

namespace sievelab {

struct StatReport {
  std::uint64_t x = 0;
  std::string statistic;
  double value = 0.0;
  double reference = 0.0;
  double deviation = 0.0;  // |value - reference|
};

StatReport make_stat(std::uint64_t x, std::string statistic, double value, double reference);

/// pi(x) log(x) / x.
double pnt_ratio(std::uint64_t x, const SieveConfig& config = {});

struct PigeonholeReport {
  std::uint64_t X = 0;
  std::uint64_t H = 0;
  std::uint64_t samples = 0;  // equals X in exact mode
  bool exact = false;
  std::uint64_t seed = 0;
  double prob_sum = 0.0;
  std::vector<double> frequencies;  // frequencies[h-1] estimates P(n+h prime)
  GapRecord min_gap;                // smallest consecutive-prime gap in [X, 2X+H]
  std::uint64_t min_gap_found = 0;
};

/// Estimates sum_{1<=h<=H} P(n+h prime) for n uniform in [X, 2X). With
/// `samples` empty every n is visited (exact frequencies).
PigeonholeReport pigeonhole_experiment(std::uint64_t X, std::uint64_t H, std::optional<std::uint64_t> samples,
                                       std::uint64_t seed, const SieveConfig& config = {});

struct MertensSums {
  std::uint64_t n = 0;
  double sum_log_p_over_p = 0.0;
  double sum_inv_p = 0.0;
  double d1 = 0.0;  // sum log p / p - log n
  double d2 = 0.0;  // sum 1/p - log log n
};

MertensSums mertens_sums(std::uint64_t n, const SieveConfig& config = {});

/// Fraction of N in {2..n} with |omega(N) - loglog n| <= a sqrt(loglog n).
double hardy_ramanujan_proportion(std::uint64_t n, double a);
double hardy_ramanujan_proportion(const std::vector<std::uint8_t>& omega, double a);

struct ErdosKacResult {
  double empirical = 0.0;
  double gaussian = 0.0;
  double ks_distance = 0.0;
};

/// Normalized statistic (omega(n) - loglog n)/sqrt(loglog n) over n in [3, x].
/// The KS distance is taken over 1000 equally spaced points of [-kKsGridHalfWidth, +kKsGridHalfWidth].
ErdosKacResult erdos_kac(std::uint64_t x, double a, double b);
ErdosKacResult erdos_kac(const std::vector<std::uint8_t>& omega, double a, double b);

inline constexpr double kKsGridHalfWidth = 4.0;
inline constexpr int kKsGridPoints = 1000;

}  // namespace sievelab
