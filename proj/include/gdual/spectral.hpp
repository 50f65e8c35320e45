#pragma once

// Multiplicative bigraded spectral sequences of cofibre sequences S -> R -> Q.
//
// Connective:   E^2_{s,t} = pi_s(Q) (x) pi_t(S),       d^r : (s,t) -> (s-r, t+r-1)
// Coconnective: E_2^{s,t} = pi_{-s}(S) (x) pi_{-t}(Q), d_r : (s,t) -> (s+r, t-r+1)
//
// Pages are kept as subquotients Z_r / B_r of the E2 algebra in every
// bidegree; differentials are derivations fixed by their generator values.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdual/algebra.hpp"
#include "gdual/bigraded.hpp"
#include "gdual/hilbert.hpp"

namespace gdual {

using Bidegree = std::pair<int, int>;

/// The E2 algebra: tensor presentation with each generator on one axis.
class E2Algebra {
 public:
  E2Algebra(const Presentation& q, const Presentation& s, int window);

  const Presentation& presentation() const noexcept { return algebra_->presentation(); }
  const Presentation& q() const noexcept { return q_; }
  const Presentation& s() const noexcept { return s_; }
  const GradedAlgebra& algebra() const noexcept { return *algebra_; }
  int window() const noexcept { return window_; }
  int orientation_sign() const noexcept { return presentation().orientation_sign(); }
  /// 0 when the generator sits on the s axis, 1 for the t axis.
  int axis(std::size_t gen) const { return axis_.at(gen); }
  Bidegree bidegree(const Exponents& m) const;
  /// Weight bidegree shift of d_r.
  Bidegree shift(int r) const;

  /// Basis indices (into the weight s+t basis) of the bidegree (s,t).
  const std::vector<Index>& cell(Bidegree b) const;
  std::vector<Bidegree> bidegrees() const;

 private:
  Presentation q_;
  Presentation s_;
  std::shared_ptr<const GradedAlgebra> algebra_;
  int window_;
  std::vector<int> axis_;
  std::map<Bidegree, std::vector<Index>> cells_;
};

struct DifferentialSpec {
  int r = 2;
  /// generator name -> target polynomial text (empty or "0" for zero)
  std::vector<std::pair<std::string, std::string>> assignments;
};

/// A derivation of the E2 algebra determined by generator values.
class Derivation {
 public:
  Derivation(std::shared_ptr<const E2Algebra> e2, const DifferentialSpec& spec);

  int page() const noexcept { return r_; }
  /// D applied to a free-algebra polynomial, result in the free algebra.
  Polynomial apply(const Polynomial& f) const;
  /// Matrix of D from the cell b to the cell b + shift (local coordinates);
  /// zero columns when the target lies outside the window.
  Matrix matrix(Bidegree b) const;
  bool is_zero() const;
  /// True when D kills every relation of the presentation.
  bool respects_relations() const;

 private:
  Polynomial apply_monomial(const Exponents& m) const;

  std::shared_ptr<const E2Algebra> e2_;
  int r_;
  std::vector<Polynomial> values_;
};

struct PageCell {
  Matrix cycles;      // Z_r, rows in local coordinates
  Matrix boundaries;  // B_r, subspace of Z_r
  std::vector<Exponents> labels;
  int dim() const { return static_cast<int>(cycles.rows() - boundaries.rows()); }
};

class SpectralPage {
 public:
  static SpectralPage e2(std::shared_ptr<const E2Algebra> e2);

  int r() const noexcept { return r_; }
  const E2Algebra& algebra() const noexcept { return *e2_; }
  std::shared_ptr<const E2Algebra> algebra_ptr() const noexcept { return e2_; }
  const std::map<Bidegree, PageCell>& cells() const noexcept { return cells_; }
  int dim(Bidegree b) const;
  bool reliable(Bidegree b) const;
  /// dim E_r per bidegree; with reliable_only, the top total weight is dropped.
  BigradedDimensions dimensions(bool reliable_only = false) const;
  /// Dimensions per signed total degree over reliable bidegrees.
  std::map<int, int> total_dimensions() const;
  /// Whether the class of a polynomial survives to this page.
  bool contains(const Polynomial& f) const;

  std::string chart() const;
  std::string to_json() const;

  /// Apply d_r and pass to homology.
  SpectralPage turn(const Derivation& d) const;

 private:
  std::shared_ptr<const E2Algebra> e2_;
  int r_ = 2;
  std::map<Bidegree, PageCell> cells_;
};

std::shared_ptr<const E2Algebra> build_e2(const Presentation& q, const Presentation& s, int window);
SpectralPage apply_and_turn(const SpectralPage& page, const DifferentialSpec& spec);

struct ScheduleResult {
  std::vector<SpectralPage> history;  // E2 first, the last page is E-infinity
  const SpectralPage& final_page() const { return history.back(); }
};

ScheduleResult run_schedule(const Presentation& q, const Presentation& s, const std::vector<DifferentialSpec>& specs,
                            int window);

struct FrobeniusReport {
  std::string generator;
  std::int64_t exponent = 1;  // x^exponent survives to E-infinity
  int width = 1;
  std::string derivation;
};

/// S concentrated in degrees of width N forces x^{p^{N-1}} to survive.
std::vector<FrobeniusReport> frobenius_survival(const E2Algebra& e2);

struct ConvergenceReport {
  bool matches = true;
  std::optional<int> first_mismatch;  // signed total degree
  int expected = 0;
  int found = 0;
};

ConvergenceReport convergence_check(const std::map<int, int>& e_infinity, const std::map<int, int>& target);
ConvergenceReport convergence_check(const SpectralPage& e_infinity, const HilbertSeries& target);

/// Schedule files: q/s references, window, and [page r] blocks of assignments.
struct Schedule {
  std::string name;
  Presentation q;
  Presentation s;
  int window = 40;
  std::vector<DifferentialSpec> specs;
};

Schedule parse_schedule(std::string_view text, const std::string& base_dir);
Schedule load_schedule(const std::string& path);

}  // namespace gdual
