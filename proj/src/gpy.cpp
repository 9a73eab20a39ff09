#include "sievelab/gpy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "sievelab/errors.hpp"

namespace sievelab {

namespace {

bool near_integer(double v) { return std::fabs(v - std::round(v)) <= 1e-9 * std::max(1.0, v); }

// floor(x^e), treating values within 1e-9 relative of an integer as that integer.
std::uint64_t floor_power(std::uint64_t x, double e) {
  const double v = std::exp(e * std::log(static_cast<double>(x)));
  return static_cast<std::uint64_t>(near_integer(v) ? std::round(v) : std::floor(v));
}

// Largest integer strictly below x^e.
std::uint64_t below_power(std::uint64_t x, double e) {
  const double v = std::exp(e * std::log(static_cast<double>(x)));
  if (near_integer(v)) return static_cast<std::uint64_t>(std::round(v)) - 1;
  return static_cast<std::uint64_t>(std::floor(v));
}

std::uint64_t uabs(std::int64_t v) { return v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v); }

// d | prod_i (n + h_i), peeling one gcd per factor so the product is never formed.
bool divides_product(std::uint64_t d, std::int64_t n, const std::vector<std::int64_t>& offsets) {
  std::uint64_t g = d;
  for (auto h : offsets) {
    if (g == 1) return true;
    g /= std::gcd(g, uabs(n + h));
  }
  return g == 1;
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

struct Weights {
  std::uint64_t D = 0;
  std::vector<double> lambda;  // index d, 0 unused
  std::vector<std::uint64_t> support;  // squarefree d <= D
};

Weights make_weights(const GpyParams& p) {
  Weights w;
  w.D = p.d_limit();
  w.lambda.assign(w.D + 1, 0.0);
  for (std::uint64_t d = 1; d <= w.D; ++d) {
    w.lambda[d] = lambda_d(d, p);
    if (moebius(d) != 0) w.support.push_back(d);
  }
  return w;
}

long double weight_sum(std::int64_t n, const Weights& w, const std::vector<std::int64_t>& offsets) {
  long double s = 0.0L;
  for (auto d : w.support)
    if (divides_product(d, n, offsets)) s += w.lambda[d];
  return s;
}

bool close(long double a, long double b, double tol) {
  const long double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= tol * scale;
}

// Per-modulus tallies over n in [x, 2x) with m | prod(n + h_i).
struct ModulusTally {
  long double count = 0.0L;
  long double primes = 0.0L;
  long double log_primes = 0.0L;
};

}  // namespace

std::uint64_t GpyParams::d_limit() const { return floor_power(x, b); }

void GpyParams::validate() const {
  if (!(b > 0.0 && b < 0.5)) throw PreconditionError("gpy: need 0 < b < 1/2");
  if (l < 1) throw PreconditionError("gpy: need l >= 1");
  if (x < 100) throw PreconditionError("gpy: need x >= 100");
  if (tuple.offsets.empty()) throw PreconditionError("gpy: empty tuple");
}

double lambda_d(std::uint64_t d, const GpyParams& params) {
  params.validate();
  if (d < 1 || d > params.d_limit()) {
    throw PreconditionError("lambda_d: d = " + std::to_string(d) + " outside [1, x^b]");
  }
  const int mu = moebius(d);
  if (mu == 0) return 0.0;
  const double log_ratio = std::max(0.0, params.b * std::log(static_cast<double>(params.x)) -
                                             std::log(static_cast<double>(d)));
  const int power = params.k() + params.l;
  return mu * std::pow(log_ratio, power) / factorial(power);
}

double f_weight(std::uint64_t n, const GpyParams& params) {
  params.validate();
  const Weights w = make_weights(params);
  const long double s = weight_sum(static_cast<std::int64_t>(n), w, params.tuple.offsets);
  return static_cast<double>(s * s);
}

GpyReport weighted_sums(const GpyParams& params, const GpyOptions& options) {
  params.validate();
  const auto& offsets = params.tuple.offsets;
  const std::int64_t hmin = offsets.front();
  const std::int64_t hmax = offsets.back();
  if (static_cast<std::int64_t>(params.x) + hmin < 0) throw PreconditionError("gpy: n + h_1 must be nonnegative");
  const std::uint64_t x = params.x;
  const Weights w = make_weights(params);
  const PrimeTable table = sieve_range(static_cast<std::uint64_t>(static_cast<std::int64_t>(x) + hmin),
                                       static_cast<std::uint64_t>(static_cast<std::int64_t>(2 * x) + hmax), false);

  auto tuple_primes = [&](std::int64_t n, long double& log_mass) {
    int count = 0;
    log_mass = 0.0L;
    for (auto h : offsets) {
      const auto v = static_cast<std::uint64_t>(n + h);
      if (table.is_prime(v)) {
        ++count;
        log_mass += std::log(static_cast<long double>(v));
      }
    }
    return count;
  };

  GpyReport r;
  r.params = params;
  r.D_limit = w.D;
  r.E_index = options.e_index;
  r.tolerance = options.tolerance;

  long double s1 = 0.0L, s2 = 0.0L, s2_log = 0.0L;
  for (std::uint64_t n = x; n < 2 * x; ++n) {
    const auto sn = static_cast<std::int64_t>(n);
    const long double root = weight_sum(sn, w, offsets);
    const long double f = root * root;
    long double log_mass = 0.0L;
    const int cnt = tuple_primes(sn, log_mass);
    s1 += f;
    s2 += f * cnt;
    s2_log += f * log_mass;
  }

  // Rearranged: sum_{d1,d2} lambda_d1 lambda_d2 * #{n : lcm(d1,d2) | prod(n+h_i)}.
  std::map<std::uint64_t, ModulusTally> tallies;
  auto tally_for = [&](std::uint64_t m) -> const ModulusTally& {
    auto it = tallies.find(m);
    if (it != tallies.end()) return it->second;
    ModulusTally t;
    for (std::uint64_t c = 0; c < m; ++c) {
      if (!divides_product(m, static_cast<std::int64_t>(c), offsets)) continue;
      const std::uint64_t first = x + (c + m - x % m) % m;
      for (std::uint64_t n = first; n < 2 * x; n += m) {
        long double log_mass = 0.0L;
        t.count += 1.0L;
        t.primes += tuple_primes(static_cast<std::int64_t>(n), log_mass);
        t.log_primes += log_mass;
      }
    }
    return tallies.emplace(m, t).first->second;
  };
  long double r1 = 0.0L, r2 = 0.0L, r2_log = 0.0L;
  for (auto d1 : w.support) {
    for (auto d2 : w.support) {
      const long double ll = static_cast<long double>(w.lambda[d1]) * w.lambda[d2];
      const ModulusTally& t = tally_for(std::lcm(d1, d2));
      r1 += ll * t.count;
      r2 += ll * t.primes;
      r2_log += ll * t.log_primes;
    }
  }

  r.S1 = static_cast<double>(s1);
  r.S2 = static_cast<double>(s2);
  r.S2_log = static_cast<double>(s2_log);
  r.objective = static_cast<double>(s2 - s1);
  r.S1_rearranged = static_cast<double>(r1);
  r.S2_rearranged = static_cast<double>(r2);
  r.S2_log_rearranged = static_cast<double>(r2_log);

  if (!close(s1, r1, options.tolerance) || !close(s2, r2, options.tolerance) ||
      !close(s2_log, r2_log, options.tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weighted_sums: direct and rearranged sums disagree (S1 " << r.S1 << " vs " << r.S1_rearranged << ", S2 "
        << r.S2 << " vs " << r.S2_rearranged << ")";
    throw ConsistencyError(msg.str());
  }
  r.E = error_sum_E(params, options.e_index);
  return r;
}

std::vector<std::uint64_t> residue_set_C(int i, std::uint64_t d, const AdmissibleTuple& tuple) {
  const auto& h = tuple.offsets;
  if (i < 1 || static_cast<std::size_t>(i) > h.size()) throw PreconditionError("residue_set_C: need 1 <= i <= k");
  if (d == 0 || moebius(d) == 0) throw PreconditionError("residue_set_C: d must be squarefree and positive");
  if (d == 1) return {1};

  // CRT over the prime factors of d: c mod p must be a nonzero h_i - h_j.
  std::vector<unsigned __int128> current{0};
  unsigned __int128 modulus = 1;
  const std::int64_t hi = h[static_cast<std::size_t>(i - 1)];
  for (auto [p, e] : factorize(d)) {
    std::vector<std::uint64_t> allowed;
    for (auto hj : h) {
      const auto sp = static_cast<std::int64_t>(p);
      const auto r = static_cast<std::uint64_t>((((hi - hj) % sp) + sp) % sp);
      if (r != 0) allowed.push_back(r);
    }
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());

    // inverse of modulus mod p by Fermat's little theorem
    unsigned __int128 inv = 1, base = modulus % p;
    for (std::uint64_t ex = p - 2; ex; ex >>= 1) {
      if (ex & 1) inv = inv * base % p;
      base = base * base % p;
    }
    std::vector<unsigned __int128> next;
    for (auto s : current) {
      for (auto a : allowed) {
        const unsigned __int128 t = ((a + p - static_cast<std::uint64_t>(s % p)) % p) * inv % p;
        next.push_back(s + modulus * t);
      }
    }
    current = std::move(next);
    modulus *= p;
  }
  std::vector<std::uint64_t> out;
  out.reserve(current.size());
  for (auto c : current) out.push_back(static_cast<std::uint64_t>(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PrimePowerEntry> prime_powers_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<PrimePowerEntry> out;
  if (hi <= lo) return out;
  for (auto p : sieve_range(lo, hi, false).primes()) out.push_back({p, {p, 1}});
  // Higher powers come from primes up to sqrt(hi).
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  for (std::uint32_t p : base_primes(root)) {
    std::uint64_t v = std::uint64_t{p} * p;
    for (unsigned m = 2; v < hi; ++m) {
      if (v >= lo) out.push_back({v, {p, m}});
      if (v > hi / p) break;
      v *= p;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  return out;
}

double remainder_R(std::uint64_t x, std::uint64_t d, std::uint64_t c) {
  if (d < 1 || c < 1 || c > d) throw PreconditionError("remainder_R: need d >= 1, 1 <= c <= d");
  if (std::gcd(c, d) != 1) throw PreconditionError("remainder_R: gcd(c, d) must be 1");
  double sum = 0.0;
  for (const auto& e : prime_powers_in(x, 2 * x))
    if (e.n % d == c % d) sum += std::log(static_cast<double>(e.power.p));
  return sum - static_cast<double>(x) / static_cast<double>(euler_phi(d));
}

double error_sum_E(const GpyParams& params, int i) {
  params.validate();
  const std::uint64_t x = params.x;
  const std::uint64_t dmax = below_power(x, 2.0 * params.b);
  const auto powers = prime_powers_in(x, 2 * x);
  std::vector<double> logs;
  logs.reserve(powers.size());
  for (const auto& e : powers) logs.push_back(std::log(static_cast<double>(e.power.p)));

  double E = 0.0;
  std::vector<double> sums;
  for (std::uint64_t d = 1; d <= std::max<std::uint64_t>(dmax, 1); ++d) {
    if (moebius(d) == 0) continue;
    sums.assign(d, 0.0);
    for (std::size_t j = 0; j < powers.size(); ++j) sums[powers[j].n % d] += logs[j];
    const double main = static_cast<double>(x) / static_cast<double>(euler_phi(d));
    for (auto c : residue_set_C(i, d, params.tuple)) E += std::fabs(sums[c % d] - main);
  }
  return E;
}

std::vector<double> level_of_distribution_terms(std::uint64_t x, double theta, Weighting weighting) {
  if (x < 100) throw PreconditionError("level_of_distribution: need x >= 100");
  if (!(theta > 0.0 && theta < 1.0)) throw PreconditionError("level_of_distribution: need 0 < theta < 1");
  const std::uint64_t qmax = floor_power(x, theta);

  std::vector<std::uint64_t> values;
  std::vector<double> weights;
  if (weighting == Weighting::prime_count) {
    for_each_prime(2, x + 1, [&](std::uint64_t p) { values.push_back(p); });
    weights.assign(values.size(), 1.0);
  } else {
    for (const auto& e : prime_powers_in(2, x + 1)) {
      values.push_back(e.n);
      weights.push_back(std::log(static_cast<double>(e.power.p)));
    }
  }
  double total = 0.0;
  for (double v : weights) total += v;

  std::vector<double> terms;
  std::vector<double> sums;
  for (std::uint64_t q = 1; q <= qmax; ++q) {
    sums.assign(q, 0.0);
    for (std::size_t j = 0; j < values.size(); ++j) sums[values[j] % q] += weights[j];
    const double main = total / static_cast<double>(euler_phi(q));
    double sup = 0.0;
    for (std::uint64_t a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) sup = std::max(sup, std::fabs(sums[a] - main));
    terms.push_back(sup);
  }
  return terms;
}

double level_of_distribution_sum(std::uint64_t x, double theta, Weighting weighting) {
  double s = 0.0;
  for (double t : level_of_distribution_terms(x, theta, weighting)) s += t;
  return s;
}

}  // namespace sievelab
