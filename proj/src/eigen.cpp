#include "sievelab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sievelab/errors.hpp"

namespace sievelab {

namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> multiply(const std::vector<double>& m, std::size_t n, const std::vector<double>& v) {
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += m[i * n + j] * v[j];
  return out;
}

double residual_of(const std::vector<double>& m, std::size_t n, const std::vector<double>& y, double lambda) {
  auto r = multiply(m, n, y);
  for (std::size_t i = 0; i < n; ++i) r[i] -= lambda * y[i];
  return norm2(r) / std::max(std::fabs(lambda), std::numeric_limits<double>::min()) / norm2(y);
}

// Solves (M - sigma I) z = rhs by Gaussian elimination with partial pivoting.
std::vector<double> shifted_solve(std::vector<double> m, std::size_t n, double sigma, std::vector<double> rhs) {
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] -= sigma;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r * n + c]) > std::fabs(m[piv * n + c])) piv = r;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[c * n + j], m[piv * n + j]);
      std::swap(rhs[c], rhs[piv]);
    }
    double p = m[c * n + c];
    if (p == 0.0) p = m[c * n + c] = std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(sigma));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / p;
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<double> z(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m[i * n + j] * z[j];
    z[i] = s / m[i * n + i];
  }
  return z;
}

}  // namespace

void jacobi_eigen(std::vector<double> a, std::size_t n, std::vector<double>& values, std::vector<double>& vectors) {
  vectors.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vectors[i * n + i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    if (off < 1e-300) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          a[r * n + p] = c * arp - s * arq;
          a[r * n + q] = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = a[p * n + r];
          const double aqr = a[q * n + r];
          a[p * n + r] = c * apr - s * aqr;
          a[q * n + r] = s * apr + c * aqr;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = vectors[r * n + p];
          const double vrq = vectors[r * n + q];
          vectors[r * n + p] = c * vrp - s * vrq;
          vectors[r * n + q] = s * vrp + c * vrq;
        }
      }
    }
  }
  values.resize(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[i * n + i];
}

GeneralizedEigenResult largest_generalized_eigenvalue(const RationalMatrix& A1, const RationalMatrix& A2,
                                                      const EigenOptions& options) {
  const std::size_t n = A1.size();
  if (n == 0 || A2.size() != n) throw PreconditionError("largest_generalized_eigenvalue: dimension mismatch");
  if (!A1.is_symmetric() || !A2.is_symmetric())
    throw PreconditionError("largest_generalized_eigenvalue: matrices must be symmetric");

  const LdlDecomposition ldl = exact_ldl(A1);

  // W = L^{-1} A2 L^{-T}, exactly. X = L^{-1} A2 column by column, then W = L^{-1} X^T.
  auto forward = [&](const RationalMatrix& rhs) {
    RationalMatrix out(n);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        Rational v = rhs(i, c);
        for (std::size_t j = 0; j < i; ++j)
          if (ldl.L(i, j) != 0) v -= ldl.L(i, j) * out(j, c);
        out(i, c) = v;
      }
    }
    return out;
  };
  const RationalMatrix X = forward(A2);
  RationalMatrix Xt(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Xt(i, j) = X(j, i);
  const RationalMatrix W = forward(Xt);

  // C = D^{-1/2} W D^{-1/2}; each entry is rounded once.
  std::vector<double> C(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v;
      if (i == j) {
        v = Rational(W(i, i) / ldl.D[i]).get_d();
      } else {
        const Rational sq = W(i, j) * W(i, j) / (ldl.D[i] * ldl.D[j]);
        v = std::sqrt(sq.get_d());
        if (sgn(W(i, j)) < 0) v = -v;
      }
      C[i * n + j] = C[j * n + i] = v;
    }
  }

  std::vector<double> values, vectors;
  jacobi_eigen(C, n, values, vectors);
  const std::size_t top = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = vectors[i * n + top];

  auto rayleigh = [&](const std::vector<double>& v) {
    const auto cv = multiply(C, n, v);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += v[i] * cv[i];
      den += v[i] * v[i];
    }
    return num / den;
  };

  GeneralizedEigenResult result;
  double lambda = rayleigh(y);
  double res = residual_of(C, n, y, lambda);
  int it = 0;
  // Shifted inverse iteration at the Rayleigh quotient.
  while (res > options.residual_tolerance && it < options.max_iterations) {
    auto z = shifted_solve(C, n, lambda, y);
    const double nz = norm2(z);
    if (!std::isfinite(nz) || nz == 0.0) break;
    for (auto& v : z) v /= nz;
    y = std::move(z);
    lambda = rayleigh(y);
    res = residual_of(C, n, y, lambda);
    ++it;
  }
  if (res > options.residual_tolerance) {
    throw ConvergenceError("largest_generalized_eigenvalue: residual " + std::to_string(res) + " after " +
                               std::to_string(it) + " iterations",
                           res);
  }
  result.lambda = lambda;
  result.residual = res;
  result.iterations = it;

  // a = L^{-T} D^{-1/2} y in extended precision.
  const mp_bitcnt_t bits = options.witness_bits;
  std::vector<mpf_class> z(n, mpf_class(0, bits));
  for (std::size_t i = 0; i < n; ++i) {
    mpf_class d(ldl.D[i], bits);
    z[i] = mpf_class(y[i], bits) / sqrt(d);
  }
  std::vector<mpf_class> a(n, mpf_class(0, bits));
  for (std::size_t i = n; i-- > 0;) {
    mpf_class v = z[i];
    for (std::size_t j = i + 1; j < n; ++j) v -= mpf_class(ldl.L(j, i), bits) * a[j];
    a[i] = v;
  }
  mpf_class peak(0, bits);
  std::size_t peak_at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (abs(a[i]) > peak) {
      peak = abs(a[i]);
      peak_at = i;
    }
  }
  if (sgn(a[peak_at]) < 0) peak = -peak;
  result.witness.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const mpf_class scaled = a[i] / peak;
    mpq_set_f(result.witness[i].get_mpq_t(), scaled.get_mpf_t());
  }

  const Rational den = quadratic_form(A1, result.witness);
  if (den <= 0) throw StructuralError("largest_generalized_eigenvalue: witness has non-positive I-form");
  result.quotient = quadratic_form(A2, result.witness) / den;
  result.certified = floor_to_double(result.quotient);
  return result;
}

}  // namespace sievelab
