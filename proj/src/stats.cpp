#include "sievelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sievelab/errors.hpp"
#include "sievelab/normal.hpp"

namespace sievelab {

StatReport make_stat(std::uint64_t x, std::string statistic, double value, double reference) {
  return {x, std::move(statistic), value, reference, std::fabs(value - reference)};
}

double pnt_ratio(std::uint64_t x, const SieveConfig& config) {
  if (x < 10) throw PreconditionError("pnt_ratio: need x >= 10");
  const double xd = static_cast<double>(x);
  return static_cast<double>(prime_count(x, config)) * std::log(xd) / xd;
}

PigeonholeReport pigeonhole_experiment(std::uint64_t X, std::uint64_t H, std::optional<std::uint64_t> samples,
                                       std::uint64_t seed, const SieveConfig& config) {
  if (X < 100) throw PreconditionError("pigeonhole_experiment: need X >= 100");
  if (samples && *samples == 0) throw PreconditionError("pigeonhole_experiment: need samples >= 1");

  PigeonholeReport r;
  r.X = X;
  r.H = H;
  r.seed = seed;
  r.exact = !samples.has_value();
  r.samples = samples.value_or(X);
  r.frequencies.assign(H, 0.0);

  const PrimeTable table = sieve_range(X, 2 * X + H + 1, false, config);
  if (H > 0) {
    std::vector<std::uint64_t> hits(H, 0);
    auto tally = [&](std::uint64_t n) {
      for (std::uint64_t h = 1; h <= H; ++h)
        if (table.is_prime(n + h)) ++hits[h - 1];
    };
    if (r.exact) {
      for (std::uint64_t n = X; n < 2 * X; ++n) tally(n);
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::uint64_t> pick(X, 2 * X - 1);
      for (std::uint64_t s = 0; s < r.samples; ++s) tally(pick(rng));
    }
    CompensatedSum sum;
    for (std::uint64_t h = 0; h < H; ++h) {
      r.frequencies[h] = static_cast<double>(hits[h]) / static_cast<double>(r.samples);
      sum.add(r.frequencies[h]);
    }
    r.prob_sum = sum.value();
  }

  const GapScan scan = gap_scan(X, 2 * X + H + 1, false, config);
  r.min_gap = scan.min;
  r.min_gap_found = scan.min.gap;
  return r;
}

MertensSums mertens_sums(std::uint64_t n, const SieveConfig& config) {
  if (n < 3) throw PreconditionError("mertens_sums: need n >= 3");
  CompensatedSum s1;
  CompensatedSum s2;
  for_each_prime(
      2, n + 1,
      [&](std::uint64_t p) {
        const double pd = static_cast<double>(p);
        s1.add(std::log(pd) / pd);
        s2.add(1.0 / pd);
      },
      config);
  MertensSums m;
  m.n = n;
  m.sum_log_p_over_p = s1.value();
  m.sum_inv_p = s2.value();
  const double logn = std::log(static_cast<double>(n));
  m.d1 = m.sum_log_p_over_p - logn;
  m.d2 = m.sum_inv_p - std::log(logn);
  return m;
}

double hardy_ramanujan_proportion(const std::vector<std::uint8_t>& omega, double a) {
  if (omega.size() < 17) throw PreconditionError("hardy_ramanujan_proportion: need n >= 16");
  if (!(a > 0)) throw PreconditionError("hardy_ramanujan_proportion: need a > 0");
  const std::uint64_t n = omega.size() - 1;
  const double ll = std::log(std::log(static_cast<double>(n)));
  const double band = a * std::sqrt(ll);
  std::uint64_t inside = 0;
  for (std::uint64_t m = 2; m <= n; ++m)
    if (std::fabs(omega[m] - ll) <= band) ++inside;
  return static_cast<double>(inside) / static_cast<double>(n - 1);
}

double hardy_ramanujan_proportion(std::uint64_t n, double a) {
  if (n < 16) throw PreconditionError("hardy_ramanujan_proportion: need n >= 16");
  return hardy_ramanujan_proportion(omega_table(n), a);
}

ErdosKacResult erdos_kac(const std::vector<std::uint8_t>& omega, double a, double b) {
  if (omega.size() < 17) throw PreconditionError("erdos_kac: need x >= 16");
  if (!(a < b)) throw PreconditionError("erdos_kac: need a < b");
  const std::uint64_t x = omega.size() - 1;

  std::vector<double> z;
  z.reserve(x - 2);
  std::uint64_t inside = 0;
  for (std::uint64_t n = 3; n <= x; ++n) {
    const double ll = std::log(std::log(static_cast<double>(n)));
    const double v = (omega[n] - ll) / std::sqrt(ll);
    if (a <= v && v <= b) ++inside;
    z.push_back(v);
  }
  std::sort(z.begin(), z.end());
  const double count = static_cast<double>(z.size());

  ErdosKacResult r;
  r.empirical = static_cast<double>(inside) / count;
  r.gaussian = normal_interval(a, b);
  for (int i = 0; i < kKsGridPoints; ++i) {
    const double g = -kKsGridHalfWidth + 2.0 * kKsGridHalfWidth * i / (kKsGridPoints - 1);
    const auto below = std::upper_bound(z.begin(), z.end(), g) - z.begin();
    const double emp = static_cast<double>(below) / count;
    r.ks_distance = std::max(r.ks_distance, std::fabs(emp - normal_cdf(g)));
  }
  return r;
}

ErdosKacResult erdos_kac(std::uint64_t x, double a, double b) {
  if (x < 16) throw PreconditionError("erdos_kac: need x >= 16");
  return erdos_kac(omega_table(x), a, b);
}

}  // namespace sievelab
