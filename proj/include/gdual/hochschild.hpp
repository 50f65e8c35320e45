#pragma once

// Hochschild homology and cohomology of presented algebras over k from the
// normalized bar complex, with coefficients in R itself or in k.

#include <optional>
#include <string>
#include <vector>

#include "gdual/algebra.hpp"
#include "gdual/bigraded.hpp"
#include "gdual/hilbert.hpp"

namespace gdual {

enum class Coefficients { self, k };

/// HH_s of internal weight <= weight_bound, keyed by (s, signed t). When
/// hom_bound >= 0 only bar degrees s <= hom_bound are computed.
BigradedDimensions hh_homology(const Presentation& pres, Coefficients coeff, int weight_bound, int hom_bound = -1);

struct CohomologyWindow {
  BigradedDimensions dims;              // (s, signed internal degree u), total degree u - s
  std::vector<std::pair<int, int>> unstable;  // bidegrees that moved between truncations
  int truncation = 0;
};

/// HH^s for s <= hom_bound and |u - s| <= total_bound. Coefficients in R are
/// taken as the limit of R / R_{>V}; bidegrees whose dimension still moves
/// between two truncations are reported unstable and left out.
CohomologyWindow hh_cohomology(const Presentation& pres, Coefficients coeff, int total_bound, int hom_bound);

/// Whether b^2 = 0 on every bar slice of weight <= weight_bound.
bool bar_squares_to_zero(const Presentation& pres, Coefficients coeff, int weight_bound);

/// Tor^{R^e}(R, k) from a minimal resolution of k over the enveloping algebra
/// R (x) R, base-changed along multiplication R^e -> R.
BigradedDimensions tor_enveloping(const Presentation& pres, int weight_bound, int hom_bound);
Presentation enveloping_algebra(const Presentation& pres);

struct DwyerMillerReport {
  bool applicable = false;
  std::string reason;  // when not applicable
  bool holds = false;
  std::optional<int> first_mismatch;  // total degree n of HH^n
  std::string coefficients;           // which coefficient module failed
};

/// dim HH^n = dim HH_{n-a} for |n| <= total_bound, coefficients R and k.
DwyerMillerReport dwyer_miller_check(const Presentation& pres, int a, int total_bound, int hom_bound = 6,
                                     int deg_bound = 48);

/// Hilbert series of k[mu_2] (x) Tor^R(k,k), a Tor class in (s,t) sitting
/// in degree s + t.
HilbertSeries thh_prediction(const Presentation& pres, int window);

}  // namespace gdual
