#include "sievelab/largegap.hpp"

#include <algorithm>
#include <string>

#include "sievelab/errors.hpp"

namespace sievelab {

namespace {

std::uint64_t smallest_prime_factor(std::uint64_t j) {
  for (std::uint64_t p = 2; p * p <= j; ++p)
    if (j % p == 0) return p;
  return j;
}

std::vector<std::uint64_t> uncovered_of(const std::map<std::uint64_t, std::uint64_t>& residues, std::uint64_t first,
                                        std::uint64_t last) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = first; m <= last; ++m) {
    const bool hit = std::any_of(residues.begin(), residues.end(), [m](const auto& pc) {
      return m % pc.first == pc.second;
    });
    if (!hit) out.push_back(m);
  }
  return out;
}

}  // namespace

CompositeRun primorial_run(std::uint64_t n) {
  if (n < 3) throw PreconditionError("primorial_run: need n >= 3");
  CompositeRun run;
  run.y = primorial(n);
  run.first = 2;
  run.length = n - 1;
  for (std::uint64_t j = 2; j <= n; ++j) run.witnesses.push_back(smallest_prime_factor(j));
  return run;
}

CoveringSystem make_covering(std::uint64_t n, std::map<std::uint64_t, std::uint64_t> residues, std::uint64_t first,
                             std::uint64_t last) {
  const auto primes = base_primes(n);
  if (residues.size() != primes.size() ||
      !std::all_of(primes.begin(), primes.end(), [&](std::uint32_t p) { return residues.count(p) == 1; })) {
    throw PreconditionError("make_covering: residues must be keyed by exactly the primes <= n");
  }
  for (const auto& [p, c] : residues)
    if (c >= p) throw PreconditionError("make_covering: residue " + std::to_string(c) + " not reduced mod " + std::to_string(p));
  if (first < 1 || last < first) throw PreconditionError("make_covering: need 1 <= first <= last");
  CoveringSystem s;
  s.n = n;
  s.residues = std::move(residues);
  s.first = first;
  s.last = last;
  s.uncovered = uncovered_of(s.residues, first, last);
  return s;
}

CoveringSystem greedy_cover(std::uint64_t n, std::uint64_t y_len, const CoverOptions& options) {
  if (n < 5) throw PreconditionError("greedy_cover: need n >= 5");
  if (y_len < 1) throw PreconditionError("greedy_cover: need y_len >= 1");
  std::vector<std::uint64_t> survivors(y_len);
  for (std::uint64_t m = 1; m <= y_len; ++m) survivors[m - 1] = m;

  const double split = options.phase_split * static_cast<double>(n);
  std::map<std::uint64_t, std::uint64_t> residues;
  auto pick = [&](std::uint64_t p) {
    std::vector<std::uint64_t> load(p, 0);
    for (auto m : survivors) ++load[m % p];
    const auto c = static_cast<std::uint64_t>(std::max_element(load.begin(), load.end()) - load.begin());
    residues[p] = c;
    std::erase_if(survivors, [&](std::uint64_t m) { return m % p == c; });
  };
  const auto primes = base_primes(n);
  // Phase one: primes up to the split sieve the bulk of the interval.
  for (std::uint32_t p : primes)
    if (static_cast<double>(p) <= split) pick(p);
  // Phase two: larger primes each take the class catching the most leftovers.
  for (std::uint32_t p : primes)
    if (static_cast<double>(p) > split) pick(p);

  CoveringSystem s;
  s.n = n;
  s.residues = std::move(residues);
  s.first = 1;
  s.last = y_len;
  s.uncovered = std::move(survivors);
  return s;
}

std::uint64_t longest_greedy_cover(std::uint64_t n, std::uint64_t max_len, const CoverOptions& options) {
  std::uint64_t best = 0;
  for (std::uint64_t len = n; len <= max_len; ++len)
    if (greedy_cover(n, len, options).complete()) best = len;
  return best;
}

mpz_class crt_shift(const CoveringSystem& system) {
  if (!system.complete()) {
    std::string holes;
    for (std::size_t i = 0; i < system.uncovered.size() && i < 20; ++i)
      holes += (i ? "," : "") + std::to_string(system.uncovered[i]);
    throw PreconditionError("crt_shift: covering leaves holes {" + holes + (system.uncovered.size() > 20 ? ",..." : "") +
                            "}");
  }
  mpz_class y = 0;
  mpz_class modulus = 1;
  for (const auto& [p, c] : system.residues) {
    const mpz_class target = (p - c) % p;  // y = -c (mod p)
    mpz_class inv;
    const mpz_class mp = modulus % p;
    mpz_invert(inv.get_mpz_t(), mp.get_mpz_t(), mpz_class(p).get_mpz_t());
    mpz_class t = ((target - y) % p + p) % p * inv % p;
    y += modulus * t;
    modulus *= p;
  }
  if (y == 0) y = modulus;
  return y;
}

CompositeRun composite_run(const CoveringSystem& system) {
  CompositeRun run;
  run.y = crt_shift(system);
  if (run.y + system.first <= system.n) run.y += primorial(system.n);
  run.first = system.first;
  run.length = system.last - system.first + 1;
  for (std::uint64_t m = system.first; m <= system.last; ++m) {
    for (const auto& [p, c] : system.residues) {
      if (m % p == c) {
        run.witnesses.push_back(p);
        break;
      }
    }
  }
  return run;
}

bool verify_composite_run(const CompositeRun& run, std::uint64_t bound) {
  if (run.witnesses.size() != run.length) return false;
  const auto primes = base_primes(bound);
  for (std::uint64_t j = 0; j < run.length; ++j) {
    const mpz_class v = run.y + run.first + j;
    const std::uint64_t w = run.witnesses[j];
    if (w < 2 || v <= w || mpz_divisible_ui_p(v.get_mpz_t(), w) == 0) return false;
    const bool found = std::any_of(primes.begin(), primes.end(), [&](std::uint32_t p) {
      return v > p && mpz_divisible_ui_p(v.get_mpz_t(), p) != 0;
    });
    if (!found) {
      // Small values: fall back to a full smallest-factor check.
      if (!v.fits_ulong_p() || smallest_prime_factor(v.get_ui()) == v.get_ui()) return false;
    }
  }
  return true;
}

GapRecord max_gap_G(std::uint64_t X) {
  if (X < 5) throw PreconditionError("max_gap_G: need X >= 5");
  return gap_scan(2, X + 1).max;
}

}  // namespace sievelab
