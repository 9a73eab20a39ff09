#include "sievelab/quadratic_forms.hpp"

#include <string>

#include "sievelab/errors.hpp"
#include "sievelab/simplex.hpp"

namespace sievelab {

std::vector<BasisIndex> symmetric_basis(int degree) {
  if (degree < 0) throw PreconditionError("symmetric_basis: need degree >= 0");
  std::vector<BasisIndex> out;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + 2 * b <= degree; ++b) out.push_back({a, b});
  return out;
}

std::vector<InnerTerm> inner_integral(const BasisIndex& index) {
  // (1 - P1) = u - t and P2 = Q + t^2, so the integrand is (u - t)^a (Q + t^2)^b and
  //   int_0^u (u - t)^a t^{2j} dt = a! (2j)! / (a + 2j + 1)! u^{a+2j+1}.
  std::vector<InnerTerm> out;
  mpz_class binom = 1;
  for (int j = 0; j <= index.b; ++j) {
    if (j > 0) {
      binom *= index.b - j + 1;
      binom /= j;
    }
    const unsigned a = static_cast<unsigned>(index.a);
    const unsigned tj = static_cast<unsigned>(2 * j);
    Rational c(binom * factorial_z(a) * factorial_z(tj), factorial_z(a + tj + 1));
    c.canonicalize();
    out.push_back({index.a + 2 * j + 1, index.b - j, c});
  }
  return out;
}

QuadraticFormPair build_quadratic_forms(int k, int degree, const FormOptions& options) {
  if (k < 1) throw PreconditionError("build_quadratic_forms: need k >= 1");
  QuadraticFormPair pair;
  pair.k = k;
  pair.degree = degree;
  pair.basis = symmetric_basis(degree);
  const std::size_t n = pair.basis.size();
  if (n > options.basis_cap) {
    throw CapacityError("build_quadratic_forms: basis size " + std::to_string(n) + " exceeds cap " +
                        std::to_string(options.basis_cap));
  }

  PowerSumIntegrals full(k);
  PowerSumIntegrals face(k - 1);
  std::vector<std::vector<InnerTerm>> inner;
  for (const auto& bi : pair.basis) inner.push_back(inner_integral(bi));

  pair.A1 = RationalMatrix(n);
  pair.A2 = RationalMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const auto& bi = pair.basis[i];
      const auto& bj = pair.basis[j];
      const Rational& a1 = full(bi.a + bj.a, bi.b + bj.b);
      // J(F) = k * (the i = k term) by symmetry of F.
      Rational a2 = 0;
      for (const auto& ti : inner[i])
        for (const auto& tj : inner[j]) a2 += ti.coefficient * tj.coefficient * face(ti.p + tj.p, ti.q + tj.q);
      a2 *= k;
      pair.A1(i, j) = pair.A1(j, i) = a1;
      pair.A2(i, j) = pair.A2(j, i) = a2;
    }
  }

  if (options.prescale) {
    Rational peak = pair.A1.max_abs();
    const Rational peak2 = pair.A2.max_abs();
    if (peak2 > peak) peak = peak2;
    if (peak > 0) {
      pair.scale = 1 / peak;
      pair.A1 *= pair.scale;
      pair.A2 *= pair.scale;
    }
  }
  return pair;
}

LdlDecomposition exact_ldl(const RationalMatrix& a) {
  const std::size_t n = a.size();
  LdlDecomposition out{RationalMatrix::identity(n), std::vector<Rational>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = a(j, j);
    for (std::size_t s = 0; s < j; ++s) d -= out.L(j, s) * out.L(j, s) * out.D[s];
    if (d <= 0) {
      throw StructuralError("exact_ldl: pivot " + std::to_string(j) + " is not positive (matrix not positive definite)");
    }
    out.D[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational v = a(i, j);
      for (std::size_t s = 0; s < j; ++s) v -= out.L(i, s) * out.L(j, s) * out.D[s];
      out.L(i, j) = v / d;
    }
  }
  return out;
}

std::vector<std::size_t> independent_basis(const RationalMatrix& gram) {
  const std::size_t n = gram.size();
  std::vector<std::size_t> keep;
  std::vector<std::vector<Rational>> L;  // L[s][t], t < s, over kept positions
  std::vector<Rational> D;
  for (std::size_t j = 0; j < n; ++j) {
    // Solve L z = gram[keep, j]; the pivot is gram(j, j) - sum z_s^2 / D_s.
    std::vector<Rational> z(keep.size());
    Rational pivot = gram(j, j);
    for (std::size_t s = 0; s < keep.size(); ++s) {
      z[s] = gram(keep[s], j);
      for (std::size_t t = 0; t < s; ++t) z[s] -= L[s][t] * z[t];
      pivot -= z[s] * z[s] / D[s];
    }
    if (pivot < 0) throw StructuralError("independent_basis: negative pivot at " + std::to_string(j));
    if (pivot == 0) continue;
    for (std::size_t s = 0; s < z.size(); ++s) z[s] /= D[s];
    keep.push_back(j);
    L.push_back(std::move(z));
    D.push_back(pivot);
  }
  return keep;
}

QuadraticFormPair restrict_basis(const QuadraticFormPair& pair, const std::vector<std::size_t>& keep) {
  QuadraticFormPair out;
  out.k = pair.k;
  out.degree = pair.degree;
  out.scale = pair.scale;
  out.A1 = RationalMatrix(keep.size());
  out.A2 = RationalMatrix(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= pair.basis.size() || (i > 0 && keep[i] <= keep[i - 1]))
      throw PreconditionError("restrict_basis: positions must be ascending and in range");
    out.basis.push_back(pair.basis[keep[i]]);
    for (std::size_t j = 0; j < keep.size(); ++j) {
      out.A1(i, j) = pair.A1(keep[i], keep[j]);
      out.A2(i, j) = pair.A2(keep[i], keep[j]);
    }
  }
  return out;
}

}  // namespace sievelab
