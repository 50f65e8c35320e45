#pragma once

// Functional equations of Hilbert series under t -> 1/t, and the
// almost-Gorenstein defect polynomial.

#include <optional>

#include "gdual/hilbert.hpp"

namespace gdual {

/// p(1/t) written over the same denominator family as p(t).
HilbertSeries reciprocal(const HilbertSeries& series);

struct FunctionalEquationReport {
  int krull_dim = 0;   // the r supplied by the caller
  int epsilon = 1;     // p(1/t) = epsilon * t^exponent * p(t)
  int exponent = 0;
  int series_a = 0;     // krull_dim - exponent
  bool sign_is_standard = false;  // epsilon == (-1)^krull_dim
};

/// Solves p(1/t) = eps t^e p(t); nullopt when the ratio is not +- a monomial.
std::optional<FunctionalEquationReport> functional_equation(const HilbertSeries& series, int r);

struct DefectReport {
  HilbertSeries q;  // q(t) as numerator over the series' denominator
  bool q_equation_holds = false;
};

/// Extracts q from p(1/t) - (-1)^r t^{r-a} p(t) = (-1)^{r-1} (1+t) q(t) and
/// checks q(1/t) = (-1)^{r-1} t^{a-r+1} q(t). Throws NotDivisible.
DefectReport almost_gorenstein_defect(const HilbertSeries& series, int r, int a);

}  // namespace gdual
