#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/sieve.hpp"

using namespace sievelab;

TEST_CASE("sieve_range small cases") {
  CHECK(sieve_range(0, 11).primes() == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(sieve_range(0, 2).primes().empty());
  CHECK_THROWS_AS(sieve_range(5, 5), PreconditionError);
  CHECK_THROWS_AS(sieve_range(10, 5), PreconditionError);
}

TEST_CASE("sieve_range agrees with trial division just below 1e8") {
  const std::uint64_t hi = 100000000, lo = hi - 100;
  const PrimeTable t = sieve_range(lo, hi);
  for (std::uint64_t n = lo; n < hi; ++n) {
    CHECK(t.is_prime(n) == oracle::is_prime_td(n));
    CHECK(t.smallest_factor(n) == oracle::smallest_factor_td(n));
  }
}

TEST_CASE("smallest factor table") {
  const PrimeTable t = sieve_range(0, 20000);
  CHECK(t.smallest_factor(0) == 0);
  CHECK(t.smallest_factor(1) == 0);
  for (std::uint64_t n = 2; n < 20000; ++n) {
    const auto f = t.smallest_factor(n);
    REQUIRE(n % f == 0);
    REQUIRE(oracle::is_prime_td(f));
    if (t.is_prime(n)) REQUIRE(f == n);
  }
}

TEST_CASE("segmented and unsegmented agree bit for bit on [0, 1e6]") {
  const auto reference = oracle::simple_sieve(1000000);
  for (std::uint64_t seg : {std::uint64_t{1} << 20, std::uint64_t{4096}, std::uint64_t{1000}, std::uint64_t{64}}) {
    SieveConfig cfg;
    cfg.segment_size = seg;
    const PrimeTable t = sieve_range(0, 1000001, false, cfg);
    const PrimeTable whole = sieve_range(0, 1000001, false, SieveConfig{2000000, SieveConfig{}.memory_budget, 1});
    CHECK(t.words() == whole.words());
    std::size_t mismatches = 0;
    for (std::uint64_t n = 0; n <= 1000000; ++n) mismatches += t.is_prime(n) != reference[n];
    CHECK(mismatches == 0);
  }
}

TEST_CASE("random subranges match the simple sieve") {
  const auto reference = oracle::simple_sieve(300000);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t lo = rng() % 300000, hi = lo + rng() % (300001 - lo);
    SieveConfig cfg;
    cfg.segment_size = 1 + rng() % 5000;
    const PrimeTable t = sieve_range(lo, hi, true, cfg);
    std::uint64_t expected = 0;
    for (std::uint64_t n = lo; n < hi; ++n) {
      expected += reference[n];
      REQUIRE(t.is_prime(n) == reference[n]);
    }
    CHECK(t.count() == expected);
  }
}

TEST_CASE("prime_count") {
  CHECK(prime_count(10) == 4);
  CHECK(prime_count(1) == 0);
  CHECK(prime_count(0) == 0);
  CHECK(prime_count(2) == 1);
  const auto reference = oracle::simple_sieve(2000000);
  std::uint64_t pi = 0;
  for (std::uint64_t n = 0; n <= 2000000; ++n) pi += reference[n];
  CHECK(prime_count(2000000) == pi);
  SieveConfig cfg;
  cfg.threads = 3;
  cfg.segment_size = 10007;
  CHECK(prime_count(2000000, cfg) == pi);
}

TEST_CASE("pi is nondecreasing and differences equal popcounts") {
  std::uint64_t prev = 0;
  for (std::uint64_t x = 0; x < 3000; x += 7) {
    const auto c = prime_count(x);
    CHECK(c >= prev);
    prev = c;
  }
  const PrimeTable t = sieve_range(1000, 50000, false);
  CHECK(prime_count(49999) - prime_count(999) == t.count());
}

TEST_CASE("capacity errors") {
  SieveConfig cfg;
  cfg.memory_budget = 1000;
  CHECK_THROWS_AS(sieve_range(0, 1000000, true, cfg), CapacityError);
}

TEST_CASE("arith_tables") {
  const ArithTables a = arith_tables(100);
  CHECK(a.mu[1] == 1);
  CHECK(a.mu[4] == 0);
  CHECK(a.mu[30] == -1);
  CHECK(a.lambda[8].p == 2);
  CHECK(a.lambda[8].m == 3);
  CHECK_FALSE(a.lambda[6].valid());
  CHECK(a.omega[12] == 2);
  CHECK(a.phi[12] == 4);

  const ArithTables big = arith_tables(20000);
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    REQUIRE(big.mu[n] == oracle::mu_td(n));
    REQUIRE(big.phi[n] == oracle::phi_td(n));
    REQUIRE(big.omega[n] == oracle::prime_factors_td(n).size());
    const bool squarefree = oracle::mu_td(n) != 0;
    REQUIRE((big.mu[n] != 0) == squarefree);
    const double lam = big.lambda[n].valid() ? std::log(static_cast<double>(big.lambda[n].p)) : 0.0;
    REQUIRE(lam == oracle::von_mangoldt_td(n));
  }
  CHECK(omega_table(20000) == std::vector<std::uint8_t>(big.omega.begin(), big.omega.end()));
}

TEST_CASE("primorial") {
  CHECK(primorial(2) == 2);
  CHECK(primorial(10) == 210);
  CHECK(primorial(1) == 1);
  mpz_class p = primorial(100);
  int factors = 0;
  for (std::uint64_t q = 2; q <= 100; ++q) {
    if (!oracle::is_prime_td(q)) continue;
    REQUIRE(mpz_divisible_ui_p(p.get_mpz_t(), q));
    p /= q;
    ++factors;
  }
  CHECK(factors == 25);
  CHECK(p == 1);
}

TEST_CASE("gap_scan") {
  const GapScan small = gap_scan(1, 20, true);
  CHECK(small.min == GapRecord{2, 3, 1});
  // 7->11 and 13->17 both have gap 4; ties go to the smaller p.
  CHECK(small.max == GapRecord{7, 11, 4});
  CHECK(gap_scan(1, 1000).max == GapRecord{887, 907, 20});
  CHECK(gap_scan(1000000, 2000000).min.gap == 2);
  CHECK_THROWS_AS(gap_scan(24, 29), PreconditionError);

  const GapScan g = gap_scan(2, 100000, true);
  CHECK(g.all.size() == g.gaps);
  for (const auto& r : g.all) {
    REQUIRE(oracle::is_prime_td(r.p));
    REQUIRE(oracle::is_prime_td(r.q));
    for (auto n = r.p + 1; n < r.q; ++n) REQUIRE_FALSE(oracle::is_prime_td(n));
  }
}

TEST_CASE("factorize, moebius, euler_phi") {
  using F = std::vector<std::pair<std::uint64_t, unsigned>>;
  CHECK(factorize(360) == F{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(1).empty());
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(12) == 0);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(97) == 96);
}
