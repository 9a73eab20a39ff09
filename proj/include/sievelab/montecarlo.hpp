#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sievelab/quadratic_forms.hpp"

namespace sievelab {

struct IJEstimate {
  double I = 0.0;
  double J = 0.0;
  double I_se = 0.0;
  double J_se = 0.0;
  std::uint64_t samples = 0;
  /// J/I with a delta-method standard error (I and J use independent draws).
  double ratio() const { return J / I; }
  double ratio_se() const;
};

/// Monte Carlo I(F), J(F) for F = sum c_{a,b} (1-P1)^a P2^b on the k-simplex.
/// Points come from normalized exponential spacings; the inner t_k integral of
/// J uses Gauss-Legendre nodes, exact for the polynomial degree.
IJEstimate ij_monte_carlo(int k, std::span<const double> coeffs, int degree, std::uint64_t samples,
                          std::uint64_t seed);

/// Entry-wise estimates of the A1 and A2 Gram matrices (unscaled) with standard errors.
struct GramEstimate {
  std::size_t n = 0;
  std::vector<double> A1, A1_se, A2, A2_se;  // row-major n x n
};
GramEstimate gram_monte_carlo(int k, int degree, std::uint64_t samples, std::uint64_t seed);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int m, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace sievelab
