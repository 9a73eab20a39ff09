#pragma once

namespace sievelab {

/// erf by Maclaurin series for |x| < 2.5 and a Lentz continued fraction for
/// erfc beyond; absolute error below 1e-12 on the real line.
double erf_approx(double x);
double erfc_approx(double x);

/// Standard normal CDF. Accepts +-infinity.
double normal_cdf(double z);

/// Probability that a standard normal variable lands in [a, b].
double normal_interval(double a, double b);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace sievelab
