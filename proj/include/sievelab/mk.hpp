#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/eigen.hpp"
#include "sievelab/quadratic_forms.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

enum class MkMethod { poly, g_function, monte_carlo };
enum class GVariant { as_printed, ratio_squared };

const char* to_string(MkMethod m);
const char* to_string(GVariant v);
GVariant parse_g_variant(const std::string& s);

/// A proven lower bound on M_k. For the polynomial method the bound is the
/// exact Rayleigh quotient at `witness`, rounded down to a double.
struct MkCertificate {
  int k = 0;
  MkMethod method = MkMethod::poly;
  int degree = 0;
  std::vector<BasisIndex> basis;
  std::vector<Rational> witness;
  Rational exact_value;
  double lower_bound = 0.0;
  double eigenvalue = 0.0;
  double residual = 0.0;
  // g-function witness
  double A = 0.0;
  double T = 0.0;
  GVariant variant = GVariant::ratio_squared;
};

struct MkOptions {
  FormOptions forms;
  EigenOptions eigen;
};

MkCertificate mk_lower_bound_poly(int k, int degree, const MkOptions& options = {});

/// Rebuilds the quadratic forms and re-evaluates the Rayleigh quotient at the
/// witness. True iff it reproduces exact_value and lower_bound does not exceed it.
bool verify_certificate(const MkCertificate& cert, const MkOptions& options = {});

struct GBoundParams {
  double A = 1.0;
  double T = 1.0;
  std::int64_t k = 2;
  GVariant variant = GVariant::ratio_squared;
};

/// Closed-form integrals of g(t) = 1/(1 + A t) over [0, T].
struct GIntegrals {
  double g = 0.0;    // int g
  double g2 = 0.0;   // int g^2
  double tg2 = 0.0;  // int t g^2
  double mu() const { return tg2 / g2; }
};
GIntegrals g_integrals(double A, double T);

struct GBoundResult {
  GBoundParams params;
  GIntegrals integrals;
  double mu = 0.0;
  double first_factor = 0.0;
  double correction = 0.0;
  double bound = 0.0;
  bool useful = false;  // bound > 0
};

/// first_factor * (1 - T / (k (1 - T/k - mu)^2)). Throws PreconditionError
/// unless A > 0, T > 0, mu < 1 and T < k (1 - mu).
GBoundResult mk_lower_bound_g(const GBoundParams& params);

/// Grid seed over A in [1e-3, 10 log k], T in [1, k], then golden-section
/// coordinate refinement. Throws PreconditionError if no grid point is feasible.
GBoundResult optimize_g_bound(std::int64_t k, GVariant variant);

/// M_k > 2m / theta implies DHL(k, m + 1).
bool dhl_inference(double mk_lower, double theta, int m);

struct GapBoundReport {
  int k = 0;
  int degree = 0;
  double theta = 0.0;
  int m = 1;
  AdmissibleTuple tuple;
  MkCertificate certificate;
  double threshold = 0.0;  // 2m / theta
  bool dhl = false;
  std::int64_t gap_bound = 0;  // tuple diameter, meaningful when dhl
  std::string assumption;
  std::string inequality;
  std::string claim;
};

/// Rejects tuples that are inadmissible or of length != k before computing anything.
GapBoundReport gap_bound_chain(int k, int degree, double theta, int m, const std::vector<std::int64_t>& offsets,
                               const MkOptions& options = {});

}  // namespace sievelab
