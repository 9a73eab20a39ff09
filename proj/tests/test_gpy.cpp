#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/gpy.hpp"

using namespace sievelab;

namespace {

GpyParams params(std::uint64_t x, double b, std::vector<std::int64_t> h, int l = 1) {
  GpyParams p;
  p.x = x;
  p.b = b;
  p.l = l;
  p.tuple = std::get<AdmissibleTuple>(check_admissible(h));
  return p;
}

double brute_f(std::uint64_t n, std::uint64_t x, double b, const std::vector<std::int64_t>& h, int l) {
  const int kl = static_cast<int>(h.size()) + l;
  const double R = std::pow(static_cast<double>(x), b);
  mpz_class prod = 1;
  for (auto hi : h) prod *= mpz_class(static_cast<unsigned long>(n + static_cast<std::uint64_t>(hi)));
  double s = 0;
  for (std::uint64_t d = 1; static_cast<double>(d) <= R + 1e-9; ++d) {
    if (prod % mpz_class(static_cast<unsigned long>(d)) != 0) continue;
    s += oracle::mu_td(d) * std::pow(std::log(R / static_cast<double>(d)), kl) / std::tgamma(kl + 1.0);
  }
  return s * s;
}

}  // namespace

TEST_CASE("lambda_d") {
  const auto p = params(10000, 0.25, {0, 2, 6});
  CHECK(p.d_limit() == 10);
  CHECK(lambda_d(1, p) == doctest::Approx(std::pow(0.25 * std::log(1e4), 4) / 24).epsilon(1e-14));
  CHECK(lambda_d(4, p) == 0.0);
  CHECK(std::fabs(lambda_d(10, p)) < 1e-12);
  CHECK_THROWS_AS(lambda_d(11, p), PreconditionError);
}

TEST_CASE("params validation") {
  auto p = params(10000, 0.25, {0, 2, 6});
  p.b = 0.5;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
  p.b = 0.25;
  p.x = 50;
  CHECK_THROWS_AS(p.validate(), PreconditionError);
}

TEST_CASE("f_weight matches brute force at 50 random n") {
  const auto p = params(10000, 0.25, {0, 2, 6});
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t n = 10000 + rng() % 10000;
    const double f = f_weight(n, p);
    CHECK(f >= 0.0);
    CHECK(f == doctest::Approx(brute_f(n, 10000, 0.25, {0, 2, 6}, 1)).epsilon(1e-12));
  }
  const auto q = params(10000, 0.05, {0, 2, 6});
  REQUIRE(q.d_limit() == 1);
  CHECK(f_weight(12345, q) == doctest::Approx(lambda_d(1, q) * lambda_d(1, q)));
}

TEST_CASE("weighted_sums: direct and rearranged agree") {
  for (auto [x, b] : {std::pair{10000ull, 0.25}, std::pair{10000ull, 0.2}, std::pair{30000ull, 0.3}}) {
    const GpyReport r = weighted_sums(params(x, b, {0, 2, 6}));
    CHECK(r.S1 > 0);
    CHECK(std::fabs(r.S1 - r.S1_rearranged) <= 1e-9 * r.S1);
    CHECK(std::fabs(r.S2 - r.S2_rearranged) <= 1e-9 * r.S2);
    CHECK(std::fabs(r.S2_log - r.S2_log_rearranged) <= 1e-9 * r.S2_log);
    CHECK(r.objective == doctest::Approx(r.S2 - r.S1));
  }
  const GpyReport other = weighted_sums(params(20000, 0.25, {0, 4, 6, 10, 12}, 2));
  CHECK(std::fabs(other.S1 - other.S1_rearranged) <= 1e-9 * other.S1);
}

TEST_CASE("weighted_sums collapses when only d = 1 qualifies") {
  const auto p = params(10000, 0.05, {0, 2, 6});
  const GpyReport r = weighted_sums(p);
  const double l1 = lambda_d(1, p);
  const auto ref = oracle::simple_sieve(20010);
  double tuple_primes = 0;
  for (std::uint64_t n = 10000; n < 20000; ++n)
    for (auto h : {0, 2, 6}) tuple_primes += ref[n + h];
  CHECK(r.S1 == doctest::Approx(l1 * l1 * 10000).epsilon(1e-12));
  CHECK(r.S2 == doctest::Approx(l1 * l1 * tuple_primes).epsilon(1e-12));
}

TEST_CASE("residue_set_C") {
  const auto t2 = std::get<AdmissibleTuple>(check_admissible(std::vector<std::int64_t>{0, 2}));
  CHECK(residue_set_C(1, 1, t2) == std::vector<std::uint64_t>{1});
  CHECK(residue_set_C(1, 2, t2).empty());
  const std::vector<std::int64_t> h{0, 2, 6};
  const auto t3 = std::get<AdmissibleTuple>(check_admissible(h));
  for (std::uint64_t d = 1; d <= 1000; ++d) {
    if (oracle::mu_td(d) == 0) {
      CHECK_THROWS_AS(residue_set_C(1, d, t3), PreconditionError);
      continue;
    }
    for (int i = 1; i <= 3; ++i) REQUIRE(residue_set_C(i, d, t3) == oracle::naive_C(i, d, h));
  }
}

TEST_CASE("remainder_R") {
  CHECK(std::fabs(remainder_R(1000000, 1, 1)) <= 0.05 * 1e6);
  CHECK(std::fabs(remainder_R(10000, 2, 1)) <= 0.1 * 1e4 / 2);
  CHECK_THROWS_AS(remainder_R(10000, 6, 3), PreconditionError);

  for (std::uint64_t d : {3u, 10u, 12u, 30u}) {
    const std::uint64_t x = 5000;
    double total = 0, coprime_mass = 0;
    for (std::uint64_t c = 1; c <= d; ++c)
      if (std::gcd(c, d) == 1) total += remainder_R(x, d, c);
    for (std::uint64_t n = x; n < 2 * x; ++n)
      if (std::gcd(n, d) == 1) coprime_mass += oracle::von_mangoldt_td(n);
    CHECK(total == doctest::Approx(coprime_mass - static_cast<double>(x)).epsilon(1e-9));
  }
}

TEST_CASE("error_sum_E") {
  const std::vector<std::int64_t> h{0, 2, 6};
  CHECK(error_sum_E(params(10000, 0.2, h)) == oracle::error_sum_E(10000, 0.2, h, 1));
  CHECK(error_sum_E(params(10000, 0.25, h), 2) == oracle::error_sum_E(10000, 0.25, h, 2));

  // x^{2b} < 2: only d = 1.
  const double only_one = error_sum_E(params(10000, 0.03, h));
  CHECK(only_one == doctest::Approx(std::fabs(remainder_R(10000, 1, 1))).epsilon(1e-12));

  CHECK(error_sum_E(params(10000, 0.15, h)) <= error_sum_E(params(10000, 0.2, h)));

  double prev = 1e300;
  for (std::uint64_t x : {10000u, 100000u, 1000000u}) {
    const double e = error_sum_E(params(x, 0.2, h)) / static_cast<double>(x);
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("level of distribution terms") {
  const auto terms = level_of_distribution_terms(100000, 0.4);
  REQUIRE(terms.size() == 100);
  CHECK(terms[0] == 0.0);
  CHECK(terms[1] == 1.0);
  const auto lam = level_of_distribution_terms(100000, 0.4, Weighting::von_mangoldt);
  CHECK(lam[0] == 0.0);
  CHECK(level_of_distribution_sum(1000000, 0.4) / 1e6 < level_of_distribution_sum(100000, 0.4) / 1e5);
}
