#pragma once

// Koszul complexes K(R; r_1, ..., r_n) as tensor products over R of the
// two-term complexes R -> R, 1 |-> r_i.

#include <optional>
#include <vector>

#include "gdual/algebra.hpp"
#include "gdual/bigraded.hpp"

namespace gdual {

class KoszulComplex {
 public:
  KoszulComplex(Presentation base, std::vector<Polynomial> elements);

  const Presentation& base() const noexcept { return base_; }
  const std::vector<Polynomial>& elements() const noexcept { return elements_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  int length() const noexcept { return static_cast<int>(elements_.size()); }

  /// Subsets of size s as bitmasks, in increasing order.
  std::vector<unsigned> cells(int s) const;
  int cell_weight(unsigned cell) const;
  Index module_dim(const GradedAlgebra& alg, int s, int n) const;
  /// d_s : K_s(n) -> K_{s-1}(n), rows indexed by (cell, basis of R).
  Matrix differential(const GradedAlgebra& alg, int s, int n) const;

 private:
  Presentation base_;
  std::vector<Polynomial> elements_;
  std::vector<int> weights_;
};

KoszulComplex build_koszul(const Presentation& pres, const std::vector<Polynomial>& elements);

/// H_s in signed internal degree t, for weights up to degree_bound.
BigradedDimensions koszul_homology(const KoszulComplex& cx, int degree_bound);

/// True when d_{s} d_{s+1} = 0 in every weight up to degree_bound.
bool koszul_squares_to_zero(const KoszulComplex& cx, int degree_bound);

struct RegularityReport {
  bool regular = true;
  std::optional<std::pair<int, int>> witness;  // (s, t) of the first higher homology class
  int witness_dim = 0;
};

RegularityReport is_regular_sequence(const Presentation& pres, const std::vector<Polynomial>& elements,
                                     int degree_bound);

}  // namespace gdual
