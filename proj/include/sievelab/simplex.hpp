#pragma once

#include <map>
#include <span>
#include <utility>

#include "sievelab/rational.hpp"

namespace sievelab {

/// Dirichlet integral over {t_i >= 0, sum t_i <= 1} in k dimensions:
///   int prod t_i^{e_i} dt = prod e_i! / (k + sum e_i)!
/// `exponents` must have length k.
Rational simplex_monomial_integral(int k, std::span<const int> exponents);

/// Memoized int_{R_dim} (1 - P1)^a P2^b dt with P1 = sum t_i, P2 = sum t_i^2.
/// dim = 0 is the one-point simplex (P1 = P2 = 0).
class PowerSumIntegrals {
 public:
  explicit PowerSumIntegrals(int dim) : dim_(dim) {}

  int dim() const noexcept { return dim_; }
  const Rational& operator()(int a, int b);

 private:
  Rational compute(int a, int b) const;

  int dim_;
  std::map<std::pair<int, int>, Rational> cache_;
};

/// n! as an exact integer (memoized).
const mpz_class& factorial_z(unsigned n);

}  // namespace sievelab
