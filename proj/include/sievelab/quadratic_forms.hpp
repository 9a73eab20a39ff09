#pragma once

#include <cstddef>
#include <vector>

#include "sievelab/rational.hpp"

namespace sievelab {

/// Index of the basis polynomial (1 - P1)^a P2^b.
struct BasisIndex {
  int a = 0;
  int b = 0;
  friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

/// All (a, b) with a + 2b <= degree, sorted lexicographically.
std::vector<BasisIndex> symmetric_basis(int degree);

/// A1 is the Gram matrix of I(F) = int_{R_k} F^2, A2 the one of
/// J(F) = sum_i int (int F dt_i)^2, both over the symmetric basis.
struct QuadraticFormPair {
  int k = 0;
  int degree = 0;
  std::vector<BasisIndex> basis;
  RationalMatrix A1;
  RationalMatrix A2;
  Rational scale = 1;  // common factor applied to both matrices
};

struct FormOptions {
  std::size_t basis_cap = 64;
  bool prescale = true;
};

QuadraticFormPair build_quadratic_forms(int k, int degree, const FormOptions& options = {});

/// Inner integral int_0^{1-s} (1-P1)^a P2^b dt_k as a polynomial in
/// u = 1 - s and Q = sum_{i<k} t_i^2: entry (p, q, coefficient) means coef * u^p Q^q.
struct InnerTerm {
  int p = 0;
  int q = 0;
  Rational coefficient;
};
std::vector<InnerTerm> inner_integral(const BasisIndex& index);

/// A = L D L^T with L unit lower triangular. Throws StructuralError on a pivot <= 0.
struct LdlDecomposition {
  RationalMatrix L;
  std::vector<Rational> D;
};
LdlDecomposition exact_ldl(const RationalMatrix& a);

/// Indices of a maximal linearly independent prefix-greedy subset of the basis,
/// read off the exact pivots of a positive semidefinite Gram matrix: a zero
/// pivot marks a function already in the span of earlier ones. Throws
/// StructuralError on a negative pivot.
std::vector<std::size_t> independent_basis(const RationalMatrix& gram);

/// The pair restricted to the given basis positions (ascending).
QuadraticFormPair restrict_basis(const QuadraticFormPair& pair, const std::vector<std::size_t>& keep);

}  // namespace sievelab
