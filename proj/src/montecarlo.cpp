#include "sievelab/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sievelab/errors.hpp"

namespace sievelab {

namespace {

double inv_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f /= i;
  return f;
}

// Uniform point of {t >= 0, sum t <= 1} in `dim` dimensions.
void simplex_point(std::mt19937_64& rng, int dim, std::vector<double>& t) {
  std::exponential_distribution<double> expo(1.0);
  t.resize(static_cast<std::size_t>(dim));
  double total = expo(rng);  // slack coordinate
  for (auto& v : t) {
    v = expo(rng);
    total += v;
  }
  for (auto& v : t) v /= total;
}

struct Moments {
  long double sum = 0.0L;
  long double sumsq = 0.0L;
  void add(double v) {
    sum += v;
    sumsq += static_cast<long double>(v) * v;
  }
  // mean and standard error of the mean, scaled by `factor`
  std::pair<double, double> finish(std::uint64_t n, double factor) const {
    const long double mean = sum / n;
    long double var = sumsq / n - mean * mean;
    if (var < 0) var = 0;
    const long double se = n > 1 ? std::sqrt(var * n / (n - 1) / n) : 0.0L;
    return {static_cast<double>(mean * factor), static_cast<double>(se * factor)};
  }
};

double basis_value(const BasisIndex& bi, double one_minus_p1, double p2) {
  return std::pow(one_minus_p1, bi.a) * std::pow(p2, bi.b);
}

}  // namespace

double IJEstimate::ratio_se() const {
  const double r = ratio();
  return std::fabs(r) * std::sqrt((J_se / J) * (J_se / J) + (I_se / I) * (I_se / I));
}

void gauss_legendre_unit(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(m), 0.0);
  weights.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

IJEstimate ij_monte_carlo(int k, std::span<const double> coeffs, int degree, std::uint64_t samples,
                          std::uint64_t seed) {
  if (k < 1) throw PreconditionError("ij_monte_carlo: need k >= 1");
  if (samples < 1000) throw PreconditionError("ij_monte_carlo: need samples >= 1000");
  const auto basis = symmetric_basis(degree);
  if (coeffs.size() != basis.size()) throw PreconditionError("ij_monte_carlo: coefficient count != basis size");

  auto F = [&](double one_minus_p1, double p2) {
    double v = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (coeffs[i] != 0.0) v += coeffs[i] * basis_value(basis[i], one_minus_p1, p2);
    return v;
  };

  std::vector<double> nodes, weights;
  gauss_legendre_unit(degree / 2 + 1, nodes, weights);

  std::mt19937_64 rng(seed);
  std::vector<double> t;
  Moments mi, mj;
  for (std::uint64_t s = 0; s < samples; ++s) {
    simplex_point(rng, k, t);
    double p1 = 0.0, p2 = 0.0;
    for (double v : t) {
      p1 += v;
      p2 += v * v;
    }
    const double f = F(1.0 - p1, p2);
    mi.add(f * f);
  }
  for (std::uint64_t s = 0; s < samples; ++s) {
    simplex_point(rng, k - 1, t);
    double p1 = 0.0, p2 = 0.0;
    for (double v : t) {
      p1 += v;
      p2 += v * v;
    }
    const double u = 1.0 - p1;
    double inner = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double tk = u * nodes[q];
      inner += weights[q] * F(u - tk, p2 + tk * tk);
    }
    inner *= u;
    mj.add(inner * inner);
  }

  IJEstimate e;
  e.samples = samples;
  std::tie(e.I, e.I_se) = mi.finish(samples, inv_factorial(k));
  std::tie(e.J, e.J_se) = mj.finish(samples, k * inv_factorial(k - 1));
  return e;
}

GramEstimate gram_monte_carlo(int k, int degree, std::uint64_t samples, std::uint64_t seed) {
  if (k < 1) throw PreconditionError("gram_monte_carlo: need k >= 1");
  if (samples < 1000) throw PreconditionError("gram_monte_carlo: need samples >= 1000");
  const auto basis = symmetric_basis(degree);
  const std::size_t n = basis.size();

  std::vector<double> nodes, weights;
  gauss_legendre_unit(degree / 2 + 1, nodes, weights);

  std::mt19937_64 rng(seed);
  std::vector<double> t, vals(n);
  std::vector<Moments> m1(n * n), m2(n * n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    simplex_point(rng, k, t);
    double p1 = 0.0, p2 = 0.0;
    for (double v : t) {
      p1 += v;
      p2 += v * v;
    }
    for (std::size_t i = 0; i < n; ++i) vals[i] = basis_value(basis[i], 1.0 - p1, p2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m1[i * n + j].add(vals[i] * vals[j]);
  }
  for (std::uint64_t s = 0; s < samples; ++s) {
    simplex_point(rng, k - 1, t);
    double p1 = 0.0, p2 = 0.0;
    for (double v : t) {
      p1 += v;
      p2 += v * v;
    }
    const double u = 1.0 - p1;
    std::fill(vals.begin(), vals.end(), 0.0);
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double tk = u * nodes[q];
      for (std::size_t i = 0; i < n; ++i) vals[i] += weights[q] * basis_value(basis[i], u - tk, p2 + tk * tk);
    }
    for (auto& v : vals) v *= u;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m2[i * n + j].add(vals[i] * vals[j]);
  }

  GramEstimate g;
  g.n = n;
  g.A1.resize(n * n);
  g.A1_se.resize(n * n);
  g.A2.resize(n * n);
  g.A2_se.resize(n * n);
  for (std::size_t e = 0; e < n * n; ++e) {
    std::tie(g.A1[e], g.A1_se[e]) = m1[e].finish(samples, inv_factorial(k));
    std::tie(g.A2[e], g.A2_se[e]) = m2[e].finish(samples, k * inv_factorial(k - 1));
  }
  return g;
}

}  // namespace sievelab
