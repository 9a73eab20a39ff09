#include "sievelab/simplex.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <vector>

#include "sievelab/errors.hpp"

namespace sievelab {

const mpz_class& factorial_z(unsigned n) {
  static std::mutex guard;
  static std::vector<mpz_class> table{mpz_class(1)};
  std::lock_guard lock(guard);
  while (table.size() <= n) table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  return table[n];
}

Rational simplex_monomial_integral(int k, std::span<const int> exponents) {
  if (k < 1) throw PreconditionError("simplex_monomial_integral: need k >= 1");
  if (exponents.size() != static_cast<std::size_t>(k))
    throw PreconditionError("simplex_monomial_integral: need exactly k exponents");
  mpz_class num = 1;
  int total = 0;
  for (int e : exponents) {
    if (e < 0) throw PreconditionError("simplex_monomial_integral: exponents must be nonnegative");
    num *= factorial_z(static_cast<unsigned>(e));
    total += e;
  }
  Rational r(num, factorial_z(static_cast<unsigned>(k + total)));
  r.canonicalize();
  return r;
}

namespace {

// Partitions of n into parts <= max_part, at most max_len parts.
void for_each_partition(int n, int max_part, int max_len, std::vector<int>& parts,
                        const std::function<void(const std::vector<int>&)>& visit) {
  if (n == 0) {
    visit(parts);
    return;
  }
  if (static_cast<int>(parts.size()) == max_len) return;
  for (int p = std::min(n, max_part); p >= 1; --p) {
    parts.push_back(p);
    for_each_partition(n - p, p, max_len, parts, visit);
    parts.pop_back();
  }
}

}  // namespace

const Rational& PowerSumIntegrals::operator()(int a, int b) {
  const auto key = std::make_pair(a, b);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, compute(a, b)).first;
  return it->second;
}

// Expand P2^b by the multinomial theorem and group monomials by the partition
// of b they realize; (1 - P1)^a is the Dirichlet weight of the slack variable.
Rational PowerSumIntegrals::compute(int a, int b) const {
  if (a < 0 || b < 0) throw PreconditionError("PowerSumIntegrals: negative exponent");
  if (dim_ == 0) return b == 0 ? Rational(1) : Rational(0);

  const unsigned denom_index = static_cast<unsigned>(dim_ + a + 2 * b);
  mpz_class total = 0;
  std::vector<int> parts;
  for_each_partition(b, b, dim_, parts, [&](const std::vector<int>& lambda) {
    const auto len = static_cast<unsigned>(lambda.size());
    // multinomial b! / prod lambda_j!
    mpz_class term = factorial_z(static_cast<unsigned>(b));
    mpz_class div = 1;
    for (int part : lambda) div *= factorial_z(static_cast<unsigned>(part));
    // ways to place the parts on distinct coordinates: dim!/(dim-len)! / prod mult!
    term *= factorial_z(static_cast<unsigned>(dim_));
    div *= factorial_z(static_cast<unsigned>(dim_) - len);
    for (std::size_t i = 0; i < lambda.size();) {
      std::size_t j = i;
      while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
      div *= factorial_z(static_cast<unsigned>(j - i));
      i = j;
    }
    // Dirichlet numerator a! prod (2 lambda_j)!
    for (int part : lambda) term *= factorial_z(static_cast<unsigned>(2 * part));
    term /= div;  // exact: the combinatorial factors are integers
    total += term;
  });
  Rational r(total * factorial_z(static_cast<unsigned>(a)), factorial_z(denom_index));
  r.canonicalize();
  return r;
}

}  // namespace sievelab
