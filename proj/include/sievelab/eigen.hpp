#pragma once

#include <vector>

#include "sievelab/quadratic_forms.hpp"
#include "sievelab/rational.hpp"

namespace sievelab {

struct EigenOptions {
  double residual_tolerance = 1e-9;
  int max_iterations = 50;
  /// Mantissa bits for the back-transformed witness.
  unsigned witness_bits = 256;
};

struct GeneralizedEigenResult {
  double lambda = 0.0;      // floating eigenvalue of the transformed problem
  double residual = 0.0;    // ||C y - lambda y|| / |lambda|
  int iterations = 0;       // inverse-iteration polish steps
  std::vector<Rational> witness;  // a with A2 a ~ lambda A1 a, max |a_i| ~ 1
  Rational quotient;        // a^T A2 a / a^T A1 a, exact
  double certified = 0.0;   // floor_to_double(quotient)
};

/// Largest lambda with A2 a = lambda A1 a for symmetric A2 and positive
/// definite A1. Exact LDL^T of A1, exact congruence of A2, floating solve of
/// the symmetric problem, exact Rayleigh quotient at the returned witness.
GeneralizedEigenResult largest_generalized_eigenvalue(const RationalMatrix& A1, const RationalMatrix& A2,
                                                      const EigenOptions& options = {});

inline GeneralizedEigenResult largest_generalized_eigenvalue(const QuadraticFormPair& pair,
                                                             const EigenOptions& options = {}) {
  return largest_generalized_eigenvalue(pair.A1, pair.A2, options);
}

/// Cyclic Jacobi on a symmetric row-major n x n matrix. Returns eigenvalues,
/// and eigenvectors as columns of `vectors` (row-major).
void jacobi_eigen(std::vector<double> matrix, std::size_t n, std::vector<double>& values,
                  std::vector<double>& vectors);

}  // namespace sievelab
