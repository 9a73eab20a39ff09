#include "sievelab/tuples.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "sievelab/errors.hpp"
#include "sievelab/sieve.hpp"

namespace sievelab {

namespace {

std::uint64_t mod(std::int64_t a, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((a % m) + m) % m);
}

}  // namespace

AdmissibilityResult check_admissible(std::span<const std::int64_t> offsets) {
  if (offsets.empty()) throw PreconditionError("check_admissible: empty tuple");
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    if (offsets[i] <= offsets[i - 1]) throw PreconditionError("check_admissible: offsets must be strictly increasing");
  }
  AdmissibleTuple tuple;
  tuple.offsets.assign(offsets.begin(), offsets.end());
  for (std::uint32_t p : base_primes(offsets.size())) {
    std::vector<std::optional<std::int64_t>> hit(p);
    for (std::int64_t h : offsets) {
      auto& slot = hit[mod(h, p)];
      if (!slot) slot = h;
    }
    auto free = std::find(hit.begin(), hit.end(), std::nullopt);
    if (free == hit.end()) {
      Refutation r{p, {}};
      for (const auto& h : hit) r.covering.push_back(*h);
      return r;
    }
    tuple.certificate[p] = static_cast<std::uint64_t>(free - hit.begin());
  }
  return tuple;
}

bool is_admissible(std::span<const std::int64_t> offsets) {
  return std::holds_alternative<AdmissibleTuple>(check_admissible(offsets));
}

AdmissibleTuple prime_offset_tuple(std::size_t k) {
  if (k == 0) throw PreconditionError("prime_offset_tuple: need k >= 1");
  // p_{pi(k)+k} <= 2(k+1) log(k+1) + 20 comfortably for all k.
  std::uint64_t limit = 4 * k + 64;
  std::vector<std::int64_t> offsets;
  while (true) {
    offsets.clear();
    for (std::uint32_t p : base_primes(limit)) {
      if (p > k) offsets.push_back(p);
      if (offsets.size() == k) break;
    }
    if (offsets.size() == k) break;
    limit *= 2;
  }
  const std::int64_t base = offsets.front();
  for (auto& h : offsets) h -= base;
  return std::get<AdmissibleTuple>(check_admissible(offsets));
}

TupleSearch greedy_narrow_tuple(std::size_t k, std::int64_t window) {
  if (k == 0) throw PreconditionError("greedy_narrow_tuple: need k >= 1");
  if (window < static_cast<std::int64_t>(k)) throw PreconditionError("greedy_narrow_tuple: need window >= k");
  std::vector<std::int64_t> survivors(static_cast<std::size_t>(window) + 1);
  for (std::int64_t i = 0; i <= window; ++i) survivors[static_cast<std::size_t>(i)] = i;

  for (std::uint32_t p : base_primes(k)) {
    std::vector<std::size_t> load(p, 0);
    for (auto h : survivors) ++load[mod(h, p)];
    const auto victim = static_cast<std::uint64_t>(std::min_element(load.begin(), load.end()) - load.begin());
    std::erase_if(survivors, [&](std::int64_t h) { return mod(h, p) == victim; });
  }

  TupleSearch result;
  result.survivors = survivors.size();
  if (survivors.size() < k) return result;
  std::vector<std::int64_t> offsets(survivors.begin(), survivors.begin() + static_cast<std::ptrdiff_t>(k));
  const std::int64_t base = offsets.front();
  for (auto& h : offsets) h -= base;
  result.tuple = std::get<AdmissibleTuple>(check_admissible(offsets));
  return result;
}

std::vector<std::int64_t> read_tuple(std::istream& in) {
  std::vector<std::int64_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::int64_t v = 0;
    std::string rest;
    if (!(ss >> v) || (ss >> rest)) {
      throw PreconditionError("read_tuple: line " + std::to_string(lineno) + " is not a single integer");
    }
    out.push_back(v);
  }
  return out;
}

void write_tuple(std::ostream& out, const AdmissibleTuple& tuple) {
  for (auto h : tuple.offsets) out << h << '\n';
}

}  // namespace sievelab
