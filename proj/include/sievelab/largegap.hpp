#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "sievelab/sieve.hpp"

namespace sievelab {

/// y + first, ..., y + first + length - 1 are composite; witnesses[j] is a
/// prime dividing y + first + j.
struct CompositeRun {
  mpz_class y;
  std::uint64_t first = 2;
  std::uint64_t length = 0;
  std::vector<std::uint64_t> witnesses;
};

/// One residue class c_p per prime p <= n, and the part of [first, last]
/// that no class hits.
struct CoveringSystem {
  std::uint64_t n = 0;
  std::map<std::uint64_t, std::uint64_t> residues;
  std::uint64_t first = 1;
  std::uint64_t last = 0;  // y_len
  std::vector<std::uint64_t> uncovered;

  bool complete() const noexcept { return uncovered.empty(); }
};

struct CoverOptions {
  /// Primes p <= phase_split * n form the first greedy phase.
  double phase_split = 0.5;
};

/// P(n)+2, ..., P(n)+n with the smallest prime factor of j as witness.
CompositeRun primorial_run(std::uint64_t n);

/// Builds a CoveringSystem from explicit residues (keys must be exactly the primes <= n).
CoveringSystem make_covering(std::uint64_t n, std::map<std::uint64_t, std::uint64_t> residues, std::uint64_t first,
                             std::uint64_t last);

/// Two-phase greedy covering of [1, y_len] by one class per prime p <= n.
CoveringSystem greedy_cover(std::uint64_t n, std::uint64_t y_len, const CoverOptions& options = {});

/// Largest L <= max_len with greedy_cover(n, L) complete (0 if none).
std::uint64_t longest_greedy_cover(std::uint64_t n, std::uint64_t max_len, const CoverOptions& options = {});

/// Smallest positive y with y = -c_p (mod p) for every p <= n.
mpz_class crt_shift(const CoveringSystem& system);

/// The composite run y + first .. y + last. Uses crt_shift's y, lifted by
/// P(n) when y + first does not exceed n (so no witness equals its value).
CompositeRun composite_run(const CoveringSystem& system);

/// Checks every member: witness divides it and 1 < witness < value; also
/// re-finds a prime factor <= bound by trial division, independent of the witnesses.
bool verify_composite_run(const CompositeRun& run, std::uint64_t bound);

/// Largest consecutive-prime gap with both primes <= X (ties to smaller p).
GapRecord max_gap_G(std::uint64_t X);

}  // namespace sievelab
