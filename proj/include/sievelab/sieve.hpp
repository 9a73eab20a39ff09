#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace sievelab {

struct SieveConfig {
  /// Integers per segment.
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  /// Upper bound on bytes held by a materialized PrimeTable.
  std::uint64_t memory_budget = std::uint64_t{2} << 30;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Primality (and optionally smallest prime factor) for every integer in [lo, hi).
/// Immutable after construction.
class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }
  bool has_factors() const noexcept { return !spf_.empty() || lo_ == hi_; }

  bool is_prime(std::uint64_t n) const;
  /// Smallest prime factor; n itself when n is prime, 0 for n < 2.
  /// Requires has_factors().
  std::uint64_t smallest_factor(std::uint64_t n) const;

  std::uint64_t count() const;
  std::vector<std::uint64_t> primes() const;
  const std::vector<std::uint64_t>& words() const noexcept { return bits_; }

 private:
  friend PrimeTable sieve_range(std::uint64_t, std::uint64_t, bool, const SieveConfig&);

  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::vector<std::uint64_t> bits_;
  // 0 for primes and for n < 2; composites below 2^64 have a factor < 2^32.
  std::vector<std::uint32_t> spf_;
};

struct GapRecord {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t gap = 0;
  friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

struct GapScan {
  GapRecord min;
  GapRecord max;
  std::uint64_t gaps = 0;
  std::vector<GapRecord> all;  // filled only when requested
};

struct PrimePower {
  std::uint64_t p = 0;  // 0 when n is not a prime power
  unsigned m = 0;
  bool valid() const noexcept { return p != 0; }
};

/// Multiplicative tables for 1..n; index 0 is unused.
struct ArithTables {
  std::uint64_t n = 0;
  std::vector<std::int8_t> mu;
  std::vector<PrimePower> lambda;
  std::vector<std::uint64_t> phi;
  std::vector<std::uint8_t> omega;
};

/// All primes <= n by an unsegmented sieve (used for base primes).
std::vector<std::uint32_t> base_primes(std::uint64_t n);

PrimeTable sieve_range(std::uint64_t lo, std::uint64_t hi, bool with_factors = true,
                       const SieveConfig& config = {});

/// Visits every prime in [lo, hi) in ascending order, one segment at a time.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& visit,
                    const SieveConfig& config = {});

/// Exact pi(x).
std::uint64_t prime_count(std::uint64_t x, const SieveConfig& config = {});

ArithTables arith_tables(std::uint64_t n);

/// omega(m) for 0 <= m <= n (omega(0) = omega(1) = 0).
std::vector<std::uint8_t> omega_table(std::uint64_t n);

/// Product of all primes <= n.
mpz_class primorial(std::uint64_t n);

/// Consecutive-prime gaps with both endpoints in [lo, hi). Ties go to the smaller p.
GapScan gap_scan(std::uint64_t lo, std::uint64_t hi, bool keep_all = false,
                 const SieveConfig& config = {});

/// Factorization by trial division; small helper for moduli and test values.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

int moebius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

}  // namespace sievelab
