#include "sievelab/rational.hpp"

#include <cmath>
#include <limits>

#include "sievelab/errors.hpp"

namespace sievelab {

bool RationalMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Rational RationalMatrix::max_abs() const {
  Rational best = 0;
  for (const auto& v : data_) {
    const Rational a = abs(v);
    if (a > best) best = a;
  }
  return best;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s) {
  for (auto& v : data_) v *= s;
  return *this;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& d) {
  RationalMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Rational quadratic_form(const RationalMatrix& m, const std::vector<Rational>& v) {
  if (v.size() != m.size()) throw PreconditionError("quadratic_form: dimension mismatch");
  Rational total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < v.size(); ++j) row += m(i, j) * v[j];
    total += v[i] * row;
  }
  return total;
}

double floor_to_double(const Rational& q) {
  double d = q.get_d();  // truncates toward zero
  if (Rational(d) > q) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational from_fraction_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw PreconditionError("from_fraction_string: cannot parse '" + s + "'");
  if (q.get_den() == 0) throw PreconditionError("from_fraction_string: zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace sievelab
