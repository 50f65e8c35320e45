#include "gdual/laurent.hpp"

#include <sstream>

namespace gdual {

LaurentPoly::LaurentPoly(Scalar constant) { set(0, constant); }

LaurentPoly LaurentPoly::monomial(int exponent, Scalar coeff) {
  LaurentPoly p;
  p.set(exponent, coeff);
  return p;
}

LaurentPoly LaurentPoly::one_minus(int d) {
  LaurentPoly p(1);
  p -= monomial(d);
  return p;
}

int LaurentPoly::low() const {
  if (terms_.empty()) throw AlgebraError("ZeroPolynomial", "low() of zero polynomial");
  return terms_.begin()->first;
}

int LaurentPoly::high() const {
  if (terms_.empty()) throw AlgebraError("ZeroPolynomial", "high() of zero polynomial");
  return terms_.rbegin()->first;
}

Scalar LaurentPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

void LaurentPoly::set(int exponent, Scalar c) {
  if (c == 0)
    terms_.erase(exponent);
  else
    terms_[exponent] = c;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly r;
  for (auto [e, c] : terms_) r.terms_[-e] = c;
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  for (auto [e, c] : terms_) r.terms_[e + k] = c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto [e, c] : o.terms_) set(e, coeff(e) + c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto [e, c] : o.terms_) set(e, coeff(e) - c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Scalar c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (auto [ea, ca] : a.terms_)
    for (auto [eb, cb] : b.terms_) r.set(ea + eb, r.coeff(ea + eb) + ca * cb);
  return r;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& d) const {
  if (d.is_zero()) throw AlgebraError("DivisionByZero", "division by the zero polynomial");
  LaurentPoly rem = *this;
  LaurentPoly quot;
  const int dl = d.low();
  const int dh = d.high();
  const Scalar lead = d.coeff(dl);
  // Long division from the lowest term; the quotient support is bounded.
  while (!rem.is_zero()) {
    const int rl = rem.low();
    if (rem.high() - rl < dh - dl) return std::nullopt;
    const Scalar c = rem.coeff(rl);
    if (c % lead != 0) return std::nullopt;
    const LaurentPoly term = monomial(rl - dl, c / lead);
    quot += term;
    rem -= term * d;
  }
  return quot;
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [e, c] : terms_) {
    Scalar a = c;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    } else if (a < 0) {
      os << "-";
      a = -a;
    }
    first = false;
    if (e == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << var;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::map<int, Scalar> expand_rational(const LaurentPoly& numerator, const std::vector<int>& denominator,
                                      int max_exponent) {
  std::map<int, Scalar> out;
  if (numerator.is_zero()) return out;
  const int lo = numerator.low();
  if (max_exponent < lo) return out;
  std::vector<Scalar> coeffs(static_cast<std::size_t>(max_exponent - lo + 1), 0);
  for (auto [e, c] : numerator.terms())
    if (e <= max_exponent) coeffs[static_cast<std::size_t>(e - lo)] = c;
  // Multiply by 1/(1 - t^d) as a running prefix sum with stride d.
  for (int d : denominator)
    for (std::size_t i = static_cast<std::size_t>(d); i < coeffs.size(); ++i) coeffs[i] += coeffs[i - static_cast<std::size_t>(d)];
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[lo + static_cast<int>(i)] = coeffs[i];
  return out;
}

}  // namespace gdual
