#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdual/algebra.hpp"
#include "gdual/laurent.hpp"

namespace gdual {

struct GradedVectorSpace {
  Orientation orientation = Orientation::connective;
  std::map<int, int> dims;                        // signed degree -> dimension
  std::map<int, std::vector<Exponents>> labels;   // signed degree -> monomial basis

  int dim(int degree) const {
    auto it = dims.find(degree);
    return it == dims.end() ? 0 : it->second;
  }
};

/// Quotient bases in every degree n with |n| <= degree_bound.
GradedVectorSpace enumerate_basis(const Presentation& pres, int degree_bound);

/// numerator / prod(1 - t^{d_i}) in the weight variable. For coconnective
/// algebras the weight variable stands for t^{-1}.
struct HilbertSeries {
  LaurentPoly numerator;
  std::vector<int> denominator;  // sorted ascending, all positive
  Orientation orientation = Orientation::connective;
  bool closed_form = false;
  /// Weights (window_low, window_high] verified when reconstructed.
  int window_low = 0;
  int window_high = 0;

  int krull_dimension() const noexcept { return static_cast<int>(denominator.size()); }
  /// Coefficients by weight up to max_weight.
  std::map<int, Scalar> expand(int max_weight) const { return expand_rational(numerator, denominator, max_weight); }
  /// Removes factors (1 - t^d) that divide the numerator.
  void canonicalize();
  std::string to_string() const;

  friend bool operator==(const HilbertSeries& a, const HilbertSeries& b) {
    return a.numerator == b.numerator && a.denominator == b.denominator && a.orientation == b.orientation;
  }
};

HilbertSeries make_series(LaurentPoly numerator, std::vector<int> denominator,
                          Orientation orientation = Orientation::connective);

/// Factorization of a presentation as polynomial (x) exterior (x) Artinian
/// quotient, when it has that shape.
struct TensorShape {
  std::vector<std::size_t> polynomial;  // free polynomial generators
  std::vector<std::size_t> exterior;    // free exterior generators
  std::vector<std::size_t> artinian;    // generators involved in relations
};
std::optional<TensorShape> tensor_shape(const Presentation& pres);
/// Sub-presentation on the given generators (relations must only involve them).
Presentation sub_presentation(const Presentation& pres, const std::vector<std::size_t>& gens);

/// Closed form for tensor shapes, else rational reconstruction from the
/// dimensions up to degree_bound. Throws ReconstructionFailed.
HilbertSeries hilbert_series(const Presentation& pres, int degree_bound);

/// Reconstruction from a dimension table against a fixed denominator.
HilbertSeries reconstruct_series(const std::map<int, Scalar>& dims_by_weight, int max_weight,
                                 std::vector<int> denominator, Orientation orientation);

}  // namespace gdual
