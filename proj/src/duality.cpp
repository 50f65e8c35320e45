#include "gdual/duality.hpp"

#include <numeric>

namespace gdual {

namespace {

int denominator_span(const std::vector<int>& den) { return std::accumulate(den.begin(), den.end(), 0); }

Scalar parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

// Numerator of f(1/t) over the same denominator: (-1)^k t^{sum d} N(1/t).
LaurentPoly reciprocal_numerator(const LaurentPoly& n, const std::vector<int>& den) {
  return n.inverted().shifted(denominator_span(den)) * parity_sign(static_cast<int>(den.size()));
}

}  // namespace

HilbertSeries reciprocal(const HilbertSeries& series) {
  HilbertSeries out = series;
  out.numerator = reciprocal_numerator(series.numerator, series.denominator);
  out.closed_form = true;
  return out;
}

std::optional<FunctionalEquationReport> functional_equation(const HilbertSeries& series, int r) {
  if (r < 0) throw AlgebraError("BadArgument", "Krull dimension must be nonnegative");
  const LaurentPoly& n = series.numerator;
  if (n.is_zero()) return std::nullopt;
  const LaurentPoly rn = reciprocal_numerator(n, series.denominator);
  // rn = eps * t^e * n
  const int e = rn.high() - n.high();
  int eps = 0;
  if (rn == n.shifted(e)) eps = 1;
  else if (rn == n.shifted(e) * -1) eps = -1;
  else return std::nullopt;
  FunctionalEquationReport rep;
  rep.krull_dim = r;
  rep.epsilon = eps;
  // In the coconnective case the weight variable is 1/t.
  rep.exponent = series.orientation == Orientation::connective ? e : -e;
  rep.series_a = r - rep.exponent;
  rep.sign_is_standard = eps == parity_sign(r);
  return rep;
}

DefectReport almost_gorenstein_defect(const HilbertSeries& series, int r, int a) {
  if (series.orientation != Orientation::connective)
    throw AlgebraError("BadArgument", "defect extraction is stated for connective series");
  const LaurentPoly rn = reciprocal_numerator(series.numerator, series.denominator);
  const LaurentPoly lhs = rn - series.numerator.shifted(r - a) * parity_sign(r);
  LaurentPoly one_plus_t(1);
  one_plus_t += LaurentPoly::monomial(1);
  DefectReport rep;
  rep.q.denominator = series.denominator;
  rep.q.orientation = series.orientation;
  rep.q.closed_form = true;
  if (lhs.is_zero()) {
    rep.q_equation_holds = true;
    return rep;
  }
  auto quotient = lhs.divide_exact(one_plus_t);
  if (!quotient) throw AlgebraError("NotDivisible", "defect is not divisible by (1+t) for r=" + std::to_string(r) +
                                                         ", a=" + std::to_string(a));
  rep.q.numerator = *quotient * parity_sign(r - 1);
  const LaurentPoly q_rec = reciprocal_numerator(rep.q.numerator, rep.q.denominator);
  rep.q_equation_holds = q_rec == rep.q.numerator.shifted(a - r + 1) * parity_sign(r - 1);
  return rep;
}

}  // namespace gdual
