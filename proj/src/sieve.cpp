#include "sievelab/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "sievelab/errors.hpp"

namespace sievelab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

unsigned thread_count(const SieveConfig& config) {
  unsigned t = config.threads ? config.threads : std::thread::hardware_concurrency();
  return std::max(1u, t);
}

// Marks composites of [lo, hi) in `flags` (1 = prime candidate). When `spf`
// is non-null it receives the smallest prime factor of each composite.
void sieve_segment(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint32_t>& primes,
                   std::vector<std::uint8_t>& flags, std::uint32_t* spf) {
  const std::uint64_t len = hi - lo;
  flags.assign(len, 1);
  for (std::uint64_t n = lo; n < std::min<std::uint64_t>(hi, 2); ++n) flags[n - lo] = 0;
  for (std::uint32_t p32 : primes) {
    const std::uint64_t p = p32;
    const std::uint64_t sq = p * p;
    if (sq >= hi) break;
    std::uint64_t start = std::max(sq, (lo + p - 1) / p * p);
    if (spf) {
      for (std::uint64_t m = start; m < hi; m += p) {
        if (flags[m - lo]) {
          flags[m - lo] = 0;
          spf[m - lo] = p32;
        }
      }
    } else {
      for (std::uint64_t m = start; m < hi; m += p) flags[m - lo] = 0;
    }
  }
}

}  // namespace

std::vector<std::uint32_t> base_primes(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n < lo_ || n >= hi_) throw PreconditionError("is_prime: " + std::to_string(n) + " outside table");
  const std::uint64_t i = n - lo_;
  return (bits_[i >> 6] >> (i & 63)) & 1u;
}

std::uint64_t PrimeTable::smallest_factor(std::uint64_t n) const {
  if (n < lo_ || n >= hi_) throw PreconditionError("smallest_factor: " + std::to_string(n) + " outside table");
  if (spf_.empty()) throw PreconditionError("smallest_factor: table built without factors");
  if (n < 2) return 0;
  const std::uint32_t f = spf_[n - lo_];
  return f ? f : n;
}

std::uint64_t PrimeTable::count() const {
  std::uint64_t c = 0;
  for (auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

std::vector<std::uint64_t> PrimeTable::primes() const {
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word) {
      const int b = std::countr_zero(word);
      out.push_back(lo_ + w * 64 + static_cast<std::uint64_t>(b));
      word &= word - 1;
    }
  }
  return out;
}

PrimeTable sieve_range(std::uint64_t lo, std::uint64_t hi, bool with_factors, const SieveConfig& config) {
  if (hi <= lo) throw PreconditionError("sieve_range: need lo < hi");
  const std::uint64_t len = hi - lo;
  const long double bytes = static_cast<long double>(len) * (with_factors ? 4.125L : 0.125L);
  if (bytes > static_cast<long double>(config.memory_budget)) {
    throw CapacityError("sieve_range: [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        ") exceeds memory budget of " + std::to_string(config.memory_budget) + " bytes");
  }
  PrimeTable table;
  table.lo_ = lo;
  table.hi_ = hi;
  table.bits_.assign((len + 63) / 64, 0);
  if (with_factors) table.spf_.assign(len, 0);

  const auto primes = base_primes(isqrt(hi - 1));
  const std::uint64_t seg = std::max<std::uint64_t>(config.segment_size, 64);
  std::vector<std::uint8_t> flags;
  for (std::uint64_t s = lo; s < hi; s += std::min(seg, hi - s)) {
    const std::uint64_t e = std::min(hi, s + seg);
    sieve_segment(s, e, primes, flags, with_factors ? table.spf_.data() + (s - lo) : nullptr);
    for (std::uint64_t n = s; n < e; ++n) {
      if (flags[n - s]) {
        const std::uint64_t i = n - lo;
        table.bits_[i >> 6] |= std::uint64_t{1} << (i & 63);
      }
    }
  }
  return table;
}

void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& visit,
                    const SieveConfig& config) {
  if (hi <= lo) return;
  const auto primes = base_primes(isqrt(hi - 1));
  const std::uint64_t seg = std::max<std::uint64_t>(config.segment_size, 64);
  std::vector<std::uint8_t> flags;
  for (std::uint64_t s = lo; s < hi; s += std::min(seg, hi - s)) {
    const std::uint64_t e = std::min(hi, s + seg);
    sieve_segment(s, e, primes, flags, nullptr);
    for (std::uint64_t n = s; n < e; ++n)
      if (flags[n - s]) visit(n);
  }
}

std::uint64_t prime_count(std::uint64_t x, const SieveConfig& config) {
  if (x < 2) return 0;
  const std::uint64_t hi = x + 1;
  const auto primes = base_primes(isqrt(x));
  const std::uint64_t seg = std::max<std::uint64_t>(config.segment_size, 64);
  const std::uint64_t nseg = (hi + seg - 1) / seg;
  const unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(config), nseg));

  // Segments are dealt round-robin; partial counts are summed, so the merge is order-free.
  std::vector<std::uint64_t> partial(nthreads, 0);
  auto work = [&](unsigned t) {
    std::vector<std::uint8_t> flags;
    std::uint64_t c = 0;
    for (std::uint64_t k = t; k < nseg; k += nthreads) {
      const std::uint64_t s = k * seg;
      const std::uint64_t e = std::min(hi, s + seg);
      sieve_segment(s, e, primes, flags, nullptr);
      c += static_cast<std::uint64_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
    }
    partial[t] = c;
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
  }
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

ArithTables arith_tables(std::uint64_t n) {
  if (n < 1) throw PreconditionError("arith_tables: need n >= 1");
  ArithTables t;
  t.n = n;
  t.mu.assign(n + 1, 0);
  t.lambda.assign(n + 1, PrimePower{});
  t.phi.assign(n + 1, 0);
  t.omega.assign(n + 1, 0);

  // Linear sieve: every composite is reached exactly once through its smallest prime.
  std::vector<std::uint32_t> spf(n + 1, 0);
  std::vector<std::uint32_t> primes;
  t.mu[1] = 1;
  t.phi[1] = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
      t.mu[i] = -1;
      t.phi[i] = i - 1;
      t.omega[i] = 1;
      t.lambda[i] = {i, 1};
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = i * p;
      if (p > spf[i] || m > n) break;
      spf[m] = p;
      if (p == spf[i]) {
        t.mu[m] = 0;
        t.phi[m] = t.phi[i] * p;
        t.omega[m] = t.omega[i];
        if (t.lambda[i].valid()) t.lambda[m] = {p, t.lambda[i].m + 1};
      } else {
        t.mu[m] = static_cast<std::int8_t>(-t.mu[i]);
        t.phi[m] = t.phi[i] * (p - 1);
        t.omega[m] = static_cast<std::uint8_t>(t.omega[i] + 1);
      }
    }
  }
  return t;
}

std::vector<std::uint8_t> omega_table(std::uint64_t n) {
  std::vector<std::uint8_t> omega(n + 1, 0);
  if (n < 2) return omega;
  for (std::uint32_t p : base_primes(n))
    for (std::uint64_t m = p; m <= n; m += p) ++omega[m];
  return omega;
}

mpz_class primorial(std::uint64_t n) {
  mpz_class out = 1;
  for (std::uint32_t p : base_primes(n)) out *= p;
  return out;
}

GapScan gap_scan(std::uint64_t lo, std::uint64_t hi, bool keep_all, const SieveConfig& config) {
  if (hi <= lo) throw PreconditionError("gap_scan: need lo < hi");
  GapScan scan;
  std::uint64_t prev = 0;
  bool have_prev = false;
  for_each_prime(
      lo, hi,
      [&](std::uint64_t q) {
        if (have_prev) {
          const GapRecord g{prev, q, q - prev};
          if (scan.gaps == 0 || g.gap < scan.min.gap) scan.min = g;
          if (scan.gaps == 0 || g.gap > scan.max.gap) scan.max = g;
          ++scan.gaps;
          if (keep_all) scan.all.push_back(g);
        }
        prev = q;
        have_prev = true;
      },
      config);
  if (scan.gaps == 0) {
    throw PreconditionError("gap_scan: fewer than two primes in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + ")");
  }
  return scan;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int moebius(std::uint64_t n) {
  if (n == 0) throw PreconditionError("moebius: n must be positive");
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw PreconditionError("euler_phi: n must be positive");
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

}  // namespace sievelab
