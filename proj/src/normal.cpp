#include "sievelab/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sievelab {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

double erf_series(double x) {
  // erf(x) = 2/sqrt(pi) * sum_n (-1)^n x^(2n+1) / (n! (2n+1))
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-17 * std::fabs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// erfc(x) for x > 0 via the continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
double erfc_cf(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 500; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) * std::numbers::inv_sqrtpi / f;
}

}  // namespace

double erf_approx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0) return -erf_approx(-x);
  if (x < 2.5) return erf_series(x);
  return 1.0 - erfc_cf(x);
}

double erfc_approx(double x) {
  if (std::isnan(x)) return x;
  if (x < 2.5) return 1.0 - erf_approx(x);
  return erfc_cf(x);
}

double normal_cdf(double z) {
  if (z == std::numeric_limits<double>::infinity()) return 1.0;
  if (z == -std::numeric_limits<double>::infinity()) return 0.0;
  const double u = z * std::numbers::sqrt2 / 2.0;
  return u < 0 ? 0.5 * erfc_approx(-u) : 0.5 * (1.0 + erf_approx(u));
}

double normal_interval(double a, double b) {
  if (b <= a) return 0.0;
  return normal_cdf(b) - normal_cdf(a);
}

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

}  // namespace sievelab
