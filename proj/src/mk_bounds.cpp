#include "sievelab/mk.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <variant>

#include "sievelab/errors.hpp"

namespace sievelab {

const char* to_string(MkMethod m) {
  switch (m) {
    case MkMethod::poly: return "poly";
    case MkMethod::g_function: return "g";
    case MkMethod::monte_carlo: return "monte-carlo";
  }
  return "?";
}

const char* to_string(GVariant v) { return v == GVariant::as_printed ? "as-printed" : "ratio-squared"; }

GVariant parse_g_variant(const std::string& s) {
  if (s == "as-printed") return GVariant::as_printed;
  if (s == "ratio-squared") return GVariant::ratio_squared;
  throw PreconditionError("unknown g-bound variant '" + s + "' (expected as-printed or ratio-squared)");
}

MkCertificate mk_lower_bound_poly(int k, int degree, const MkOptions& options) {
  QuadraticFormPair pair = build_quadratic_forms(k, degree, options.forms);
  // For k = 1 the basis functions are all polynomials in one variable and
  // become dependent once degree >= 2.
  const auto keep = independent_basis(pair.A1);
  if (keep.size() < pair.basis.size()) pair = restrict_basis(pair, keep);
  const GeneralizedEigenResult eig = largest_generalized_eigenvalue(pair, options.eigen);
  MkCertificate cert;
  cert.k = k;
  cert.method = MkMethod::poly;
  cert.degree = degree;
  cert.basis = pair.basis;
  cert.witness = eig.witness;
  cert.exact_value = eig.quotient;
  cert.lower_bound = eig.certified;
  cert.eigenvalue = eig.lambda;
  cert.residual = eig.residual;
  return cert;
}

bool verify_certificate(const MkCertificate& cert, const MkOptions& options) {
  if (cert.method != MkMethod::poly) return false;
  const QuadraticFormPair full = build_quadratic_forms(cert.k, cert.degree, options.forms);
  std::vector<std::size_t> positions;
  for (const auto& b : cert.basis) {
    const auto it = std::find(full.basis.begin(), full.basis.end(), b);
    if (it == full.basis.end()) return false;
    const auto at = static_cast<std::size_t>(it - full.basis.begin());
    if (!positions.empty() && at <= positions.back()) return false;
    positions.push_back(at);
  }
  if (positions.empty() || cert.witness.size() != positions.size()) return false;
  const QuadraticFormPair pair = restrict_basis(full, positions);
  const Rational den = quadratic_form(pair.A1, cert.witness);
  if (den <= 0) return false;
  const Rational value = quadratic_form(pair.A2, cert.witness) / den;
  return value == cert.exact_value && Rational(cert.lower_bound) <= value;
}

GIntegrals g_integrals(double A, double T) {
  GIntegrals r;
  const double u = A * T;
  r.g2 = T / (1.0 + u);
  if (u < 1e-2) {
    // log(1+u)/u = sum_{n>=1} (-1)^{n+1} u^{n-1}/n
    // (log(1+u) - u/(1+u))/u^2 = sum_{n>=2} (-1)^n (n-1)/n u^{n-2}
    double lg = 0.0, tg = 0.0, pw = 1.0;
    for (int n = 1; n < 40; ++n) {
      const double sign = (n % 2) ? 1.0 : -1.0;
      lg += sign * pw / n;
      if (n >= 2) tg -= sign * (n - 1.0) / n * pw / u;
      pw *= u;
    }
    r.g = T * lg;
    r.tg2 = T * T * tg;
  } else {
    const double L = std::log1p(u);
    r.g = L / A;
    r.tg2 = (L - u / (1.0 + u)) / (A * A);
  }
  return r;
}

GBoundResult mk_lower_bound_g(const GBoundParams& params) {
  if (!(params.A > 0.0)) throw PreconditionError("mk_lower_bound_g: need A > 0");
  if (!(params.T > 0.0)) throw PreconditionError("mk_lower_bound_g: need T > 0");
  if (params.k < 1) throw PreconditionError("mk_lower_bound_g: need k >= 1");
  GBoundResult r;
  r.params = params;
  r.integrals = g_integrals(params.A, params.T);
  r.mu = r.integrals.mu();
  const double k = static_cast<double>(params.k);
  if (!(r.mu < 1.0)) throw PreconditionError("mk_lower_bound_g: center of mass mu >= 1");
  if (!(params.T < k * (1.0 - r.mu))) throw PreconditionError("mk_lower_bound_g: need T < k (1 - mu)");
  r.first_factor = params.variant == GVariant::as_printed ? r.integrals.tg2 / r.integrals.g2
                                                          : r.integrals.g * r.integrals.g / r.integrals.g2;
  const double slack = 1.0 - params.T / k - r.mu;
  r.correction = 1.0 - params.T / (k * slack * slack);
  r.bound = r.first_factor * r.correction;
  r.useful = r.bound > 0.0;
  return r;
}

GBoundResult optimize_g_bound(std::int64_t k, GVariant variant) {
  if (k < 2) throw PreconditionError("optimize_g_bound: need k >= 2");
  const double logk = std::log(static_cast<double>(k));
  const double la_lo = std::log(1e-3), la_hi = std::log(10.0 * logk);
  const double lt_lo = 0.0, lt_hi = logk;

  auto eval = [&](double la, double lt) -> std::optional<GBoundResult> {
    try {
      return mk_lower_bound_g({std::exp(la), std::exp(lt), k, variant});
    } catch (const PreconditionError&) {
      return std::nullopt;
    }
  };

  constexpr int grid = 80;
  std::optional<GBoundResult> best;
  double best_la = 0.0, best_lt = 0.0;
  auto consider = [&](double la, double lt) {
    auto r = eval(la, lt);
    if (r && (!best || r->bound > best->bound)) {
      best = r;
      best_la = la;
      best_lt = lt;
    }
    return r ? r->bound : -std::numeric_limits<double>::infinity();
  };
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j)
      consider(la_lo + (la_hi - la_lo) * i / (grid - 1), lt_lo + (lt_hi - lt_lo) * j / (grid - 1));
  if (!best) throw PreconditionError("optimize_g_bound: no feasible (A, T) for k = " + std::to_string(k));

  const double cell_a = (la_hi - la_lo) / (grid - 1);
  const double cell_t = (lt_hi - lt_lo) / (grid - 1);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto golden = [&](double lo, double hi, const std::function<double(double)>& f) {
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 60; ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + phi * (b - a);
        fd = f(d);
      }
    }
  };
  for (int round = 0; round < 8; ++round) {
    const double lt = best_lt;
    golden(std::max(la_lo, best_la - cell_a), std::min(la_hi, best_la + cell_a),
           [&](double la) { return consider(la, lt); });
    const double la = best_la;
    golden(std::max(lt_lo, best_lt - cell_t), std::min(lt_hi, best_lt + cell_t),
           [&](double t) { return consider(la, t); });
  }
  return *best;
}

bool dhl_inference(double mk_lower, double theta, int m) {
  if (!(theta > 0.0 && theta <= 1.0)) throw PreconditionError("dhl_inference: need 0 < theta <= 1");
  if (m < 1) throw PreconditionError("dhl_inference: need m >= 1");
  return mk_lower > 2.0 * m / theta;
}

GapBoundReport gap_bound_chain(int k, int degree, double theta, int m, const std::vector<std::int64_t>& offsets,
                               const MkOptions& options) {
  if (offsets.size() != static_cast<std::size_t>(k)) {
    throw PreconditionError("gap_bound_chain: tuple has " + std::to_string(offsets.size()) + " offsets, need k = " +
                            std::to_string(k));
  }
  auto admissible = check_admissible(offsets);
  if (auto* refuted = std::get_if<Refutation>(&admissible)) {
    throw PreconditionError("gap_bound_chain: tuple is not admissible (all classes mod " +
                            std::to_string(refuted->prime) + " covered)");
  }
  if (!(theta > 0.0 && theta <= 1.0)) throw PreconditionError("gap_bound_chain: need 0 < theta <= 1");
  if (m < 1) throw PreconditionError("gap_bound_chain: need m >= 1");

  GapBoundReport r;
  r.k = k;
  r.degree = degree;
  r.theta = theta;
  r.m = m;
  r.tuple = std::get<AdmissibleTuple>(std::move(admissible));
  r.certificate = mk_lower_bound_poly(k, degree, options);
  r.threshold = 2.0 * m / theta;
  r.dhl = dhl_inference(r.certificate.lower_bound, theta, m);
  r.gap_bound = r.tuple.diameter();
  r.assumption = theta < 0.5 ? "primes have level of distribution theta (Bombieri-Vinogradov, unconditional)"
                             : "EH[theta] (conditional)";
  std::ostringstream ineq;
  ineq.precision(12);
  ineq << "M_" << k << " >= " << r.certificate.lower_bound << (r.dhl ? " > " : " <= ") << "2m/theta = "
       << r.threshold;
  r.inequality = ineq.str();
  std::ostringstream claim;
  if (r.dhl) {
    claim << "DHL(" << k << "," << m + 1 << ") holds, hence liminf p_{n+" << m << "} - p_n <= " << r.gap_bound;
  } else {
    claim << "no claim: inequality fails";
  }
  r.claim = claim.str();
  return r;
}

}  // namespace sievelab
