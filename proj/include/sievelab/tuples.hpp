#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sievelab {

/// Strictly increasing offsets together with one avoided residue class for
/// every prime p <= k. Only check_admissible and the constructors below
/// produce certified tuples.
struct AdmissibleTuple {
  std::vector<std::int64_t> offsets;
  std::map<std::uint64_t, std::uint64_t> certificate;  // prime -> avoided residue

  std::size_t size() const noexcept { return offsets.size(); }
  std::int64_t diameter() const noexcept { return offsets.empty() ? 0 : offsets.back() - offsets.front(); }
};

/// Every residue class mod `prime` is hit: covering[r] is an offset == r (mod prime).
struct Refutation {
  std::uint64_t prime = 0;
  std::vector<std::int64_t> covering;
};

using AdmissibilityResult = std::variant<AdmissibleTuple, Refutation>;

/// Throws PreconditionError when offsets are empty or not strictly increasing.
AdmissibilityResult check_admissible(std::span<const std::int64_t> offsets);
bool is_admissible(std::span<const std::int64_t> offsets);

/// First k primes exceeding k, shifted so the first offset is 0.
AdmissibleTuple prime_offset_tuple(std::size_t k);

struct TupleSearch {
  std::optional<AdmissibleTuple> tuple;
  std::size_t survivors = 0;
};

/// Sieves [0, window] by one residue class per prime p <= k, always removing
/// the class holding the fewest survivors (ties to the smaller class).
TupleSearch greedy_narrow_tuple(std::size_t k, std::int64_t window);

std::vector<std::int64_t> read_tuple(std::istream& in);
void write_tuple(std::ostream& out, const AdmissibleTuple& tuple);

}  // namespace sievelab
