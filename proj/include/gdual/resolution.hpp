#pragma once

// Minimal free resolutions of the residue field, Tor and Ext, socles and
// Gorenstein certificates.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdual/algebra.hpp"
#include "gdual/bigraded.hpp"

namespace gdual {

struct ResolutionStage {
  std::vector<int> generator_weights;  // ascending
  /// d(e_j) in the previous stage's free module at weight generator_weights[j].
  std::vector<RowVector> images;
};

/// Minimal resolution F_s -> ... -> F_0 = A -> k, truncated to homological
/// degrees <= hom_bound and weights <= deg_bound.
class FreeResolution {
 public:
  FreeResolution(std::shared_ptr<const GradedAlgebra> algebra, int hom_bound, int deg_bound,
                 std::vector<ResolutionStage> stages);

  const GradedAlgebra& algebra() const noexcept { return *algebra_; }
  std::shared_ptr<const GradedAlgebra> algebra_ptr() const noexcept { return algebra_; }
  int hom_bound() const noexcept { return hom_bound_; }
  int deg_bound() const noexcept { return deg_bound_; }
  const std::vector<ResolutionStage>& stages() const noexcept { return stages_; }
  const ResolutionStage& stage(int s) const { return stages_.at(static_cast<std::size_t>(s)); }

  /// Dimension of F_s in weight n and the offset of generator j's block.
  Index module_dim(int s, int n) const;
  Index block_offset(int s, int n, std::size_t j) const;

  /// (basis monomial of weight mw, index mi) * element of F_s at weight n.
  RowVector left_multiply(int s, int n, const RowVector& elem, int mw, Index mi) const;
  /// Matrix of d_s : F_s(n) -> F_{s-1}(n); for s == 0 the augmentation.
  Matrix differential(int s, int n) const;

  /// The i-th component of d(e_j) at stage s, an element of A.
  RowVector component(int s, std::size_t j, std::size_t i) const;

  bool terminated() const;
  /// Whether no stage-s generators sit in the top `margin` weights.
  bool stage_complete(int s, int margin) const;
  bool is_minimal() const;
  bool composites_vanish() const;

 private:
  std::shared_ptr<const GradedAlgebra> algebra_;
  int hom_bound_;
  int deg_bound_;
  std::vector<ResolutionStage> stages_;
};

FreeResolution minimal_resolution(const Presentation& pres, int hom_bound, int deg_bound);

/// Tor^A_{s,t}(k,k) with t the signed internal degree.
BigradedDimensions tor_dimensions(const FreeResolution& res);
BigradedDimensions tor_dimensions(const Presentation& pres, int hom_bound, int deg_bound);

struct SocleElement {
  int degree = 0;
  std::vector<std::pair<Exponents, Scalar>> terms;
};

/// Annihilator of the maximal ideal. Throws NotArtinian.
std::vector<SocleElement> socle(const Presentation& pres);
/// Top weight of an Artinian presentation, searched over growing windows.
std::optional<int> artinian_top(const Presentation& pres);

struct ExtWindow {
  BigradedDimensions dims;  // (s, weight shift u) -> dim Ext^{s}_u(k, A), reliable entries only
  int max_s = -1;           // largest s whose entries are reliable
  std::map<int, int> u_floor;  // per s: smallest reliable u
};

/// Ext_A(k, A) from the dual of the minimal resolution, reliable bidegrees only.
ExtWindow ext_dimensions(const FreeResolution& res);

enum class Verdict { gorenstein, not_gorenstein, inconclusive };
std::string to_string(Verdict v);

struct GorensteinCertificate {
  Verdict verdict = Verdict::inconclusive;
  std::optional<int> shift;
  std::string evidence;            // socle monomial or Ext bidegree
  std::optional<int> ext_s;        // Ext class bidegree when Ext-derived
  std::optional<int> ext_t;        // signed internal degree of the class
  int hom_bound = 0;
  int deg_bound = 0;
  int margin = 0;                  // exclusion margin at the top of the window
  std::string method;              // "socle" or "ext"
};

GorensteinCertificate gorenstein_certificate(const Presentation& pres, int hom_bound, int deg_bound);
GorensteinCertificate gorenstein_certificate(const FreeResolution& res);

/// sum(exterior degrees) - sum(polynomial degrees + 1) + Artinian socle degree.
/// Throws NotTensorForm.
int structural_shift(const Presentation& pres);

}  // namespace gdual
