#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdual/prime_field.hpp"

namespace gdual {

/// Integer Laurent polynomial in one variable t.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(Scalar constant);
  static LaurentPoly monomial(int exponent, Scalar coeff = 1);
  /// 1 - t^d
  static LaurentPoly one_minus(int d);

  bool is_zero() const noexcept { return terms_.empty(); }
  int low() const;   // lowest exponent with nonzero coefficient
  int high() const;  // highest exponent with nonzero coefficient
  Scalar coeff(int exponent) const;
  const std::map<int, Scalar>& terms() const noexcept { return terms_; }
  void set(int exponent, Scalar c);

  /// p(t) -> p(1/t)
  LaurentPoly inverted() const;
  LaurentPoly shifted(int k) const;  // times t^k

  /// Exact quotient by d, or nullopt when d does not divide.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& d) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(Scalar c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, Scalar c) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string(const std::string& var = "t") const;

 private:
  std::map<int, Scalar> terms_;
};

/// Power series coefficients of numerator / prod(1 - t^{d_i}) for exponents
/// in [numerator.low(), max_exponent].
std::map<int, Scalar> expand_rational(const LaurentPoly& numerator, const std::vector<int>& denominator,
                                      int max_exponent);

}  // namespace gdual
