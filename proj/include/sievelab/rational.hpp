#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sievelab {

using Rational = mpq_class;

/// Dense row-major square matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n, Rational(0)) {}

  std::size_t size() const noexcept { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  bool is_symmetric() const;
  Rational max_abs() const;
  RationalMatrix& operator*=(const Rational& s);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix diagonal(const std::vector<Rational>& d);

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

/// v^T M v
Rational quadratic_form(const RationalMatrix& m, const std::vector<Rational>& v);

/// Largest double that does not exceed q.
double floor_to_double(const Rational& q);

/// "num/den" in decimal.
std::string to_fraction_string(const Rational& q);
Rational from_fraction_string(const std::string& s);

}  // namespace sievelab
