#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "sievelab/errors.hpp"
#include "sievelab/tuples.hpp"

using namespace sievelab;

namespace {

using Offsets = std::vector<std::int64_t>;

// Admissible iff no prime p <= k has all residues covered.
bool brute_admissible(const Offsets& h) {
  for (std::uint64_t p = 2; p <= h.size(); ++p) {
    if (!oracle::is_prime_td(p)) continue;
    std::vector<bool> hit(p, false);
    for (auto v : h) hit[static_cast<std::uint64_t>(((v % static_cast<std::int64_t>(p)) + p) % p)] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return false;
  }
  return true;
}

void check_certificate(const AdmissibleTuple& t) {
  for (const auto& [p, r] : t.certificate) {
    for (auto h : t.offsets) REQUIRE(((h % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % p != r);
  }
  for (std::uint64_t p = 2; p <= t.size(); ++p)
    if (oracle::is_prime_td(p)) REQUIRE(t.certificate.count(p) == 1);
}

}  // namespace

TEST_CASE("check_admissible examples") {
  const auto a = check_admissible(Offsets{0, 2});
  REQUIRE(std::holds_alternative<AdmissibleTuple>(a));
  CHECK(std::get<AdmissibleTuple>(a).certificate.at(2) == 1);

  const auto r = check_admissible(Offsets{0, 2, 4});
  REQUIRE(std::holds_alternative<Refutation>(r));
  CHECK(std::get<Refutation>(r).prime == 3);

  const auto b = check_admissible(Offsets{0, 2, 6});
  REQUIRE(std::holds_alternative<AdmissibleTuple>(b));
  CHECK(std::get<AdmissibleTuple>(b).certificate.at(2) == 1);
  CHECK(std::get<AdmissibleTuple>(b).certificate.at(3) == 1);
  check_certificate(std::get<AdmissibleTuple>(b));
}

TEST_CASE("check_admissible rejects unsorted or repeated offsets") {
  CHECK_THROWS_AS(check_admissible(Offsets{0, 0, 2}), PreconditionError);
  CHECK_THROWS_AS(check_admissible(Offsets{2, 0}), PreconditionError);
}

TEST_CASE("admissibility matches brute force and is shift invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    std::set<std::int64_t> s;
    const int k = 1 + static_cast<int>(rng() % 9);
    while (static_cast<int>(s.size()) < k) s.insert(static_cast<std::int64_t>(rng() % 40));
    Offsets h(s.begin(), s.end());
    const bool expected = brute_admissible(h);
    REQUIRE(is_admissible(h) == expected);
    const std::int64_t shift = static_cast<std::int64_t>(rng() % 1000) - 500;
    Offsets moved = h;
    for (auto& v : moved) v += shift;
    REQUIRE(is_admissible(moved) == expected);
    const auto res = check_admissible(h);
    if (expected) check_certificate(std::get<AdmissibleTuple>(res));
  }
}

TEST_CASE("prime_offset_tuple") {
  CHECK(prime_offset_tuple(2).offsets == Offsets{0, 2});
  CHECK(prime_offset_tuple(3).offsets == Offsets{0, 2, 6});
  const AdmissibleTuple t = prime_offset_tuple(105);
  CHECK(t.size() == 105);
  CHECK(t.diameter() == 636);
  CHECK(t.diameter() <= 720);
  CHECK(is_admissible(t.offsets));
  check_certificate(t);
}

TEST_CASE("greedy_narrow_tuple") {
  auto s2 = greedy_narrow_tuple(2, 10);
  REQUIRE(s2.tuple);
  CHECK(s2.tuple->diameter() == 2);

  auto s3 = greedy_narrow_tuple(3, 10);
  REQUIRE(s3.tuple);
  CHECK(s3.tuple->diameter() == 6);
  CHECK(s3.tuple->offsets == Offsets{0, 2, 6});

  auto s5 = greedy_narrow_tuple(5, 16);
  REQUIRE(s5.tuple);
  CHECK(s5.tuple->offsets == Offsets{0, 2, 6, 12, 14});

  auto s105 = greedy_narrow_tuple(105, 720);
  REQUIRE(s105.tuple);
  CHECK(s105.tuple->size() == 105);
  CHECK(s105.tuple->diameter() <= 720);
  CHECK(is_admissible(s105.tuple->offsets));
  check_certificate(*s105.tuple);

  const auto base = prime_offset_tuple(40);
  auto s40 = greedy_narrow_tuple(40, base.diameter());
  REQUIRE(s40.tuple);
  CHECK(s40.tuple->diameter() <= base.diameter());

  CHECK_FALSE(greedy_narrow_tuple(5, 6).tuple);
}

TEST_CASE("exhaustive search confirms 6 is the narrowest admissible triple") {
  for (std::int64_t d = 2; d < 6; ++d)
    for (std::int64_t m = 1; m < d; ++m) CHECK_FALSE(is_admissible(Offsets{0, m, d}));
}

TEST_CASE("tuple files round trip") {
  const AdmissibleTuple t = prime_offset_tuple(10);
  std::stringstream io;
  write_tuple(io, t);
  CHECK(read_tuple(io) == t.offsets);

  std::istringstream commented("# a triple\n0\n\n2\n6\n");
  CHECK(read_tuple(commented) == Offsets{0, 2, 6});
  std::istringstream bad("0 2\n");
  CHECK_THROWS_AS(read_tuple(bad), PreconditionError);
}
