#include "gdual/resolution.hpp"

#include <algorithm>
#include <numeric>

#include "gdual/hilbert.hpp"
#include "gdual/presentation_io.hpp"

namespace gdual {

FreeResolution::FreeResolution(std::shared_ptr<const GradedAlgebra> algebra, int hom_bound, int deg_bound,
                               std::vector<ResolutionStage> stages)
    : algebra_(std::move(algebra)), hom_bound_(hom_bound), deg_bound_(deg_bound), stages_(std::move(stages)) {}

Index FreeResolution::module_dim(int s, int n) const {
  Index d = 0;
  for (int g : stage(s).generator_weights)
    if (n >= g) d += algebra_->dim(n - g);
  return d;
}

Index FreeResolution::block_offset(int s, int n, std::size_t j) const {
  const auto& gw = stage(s).generator_weights;
  Index d = 0;
  for (std::size_t k = 0; k < j; ++k)
    if (n >= gw[k]) d += algebra_->dim(n - gw[k]);
  return d;
}

RowVector FreeResolution::left_multiply(int s, int n, const RowVector& elem, int mw, Index mi) const {
  const PrimeField& F = algebra_->field();
  const auto& gw = stage(s).generator_weights;
  RowVector out = RowVector::Zero(module_dim(s, n + mw));
  Index in_off = 0;
  Index out_off = 0;
  for (std::size_t j = 0; j < gw.size(); ++j) {
    const int g = gw[j];
    const Index in_dim = n >= g ? algebra_->dim(n - g) : 0;
    const Index out_dim = n + mw >= g ? algebra_->dim(n + mw - g) : 0;
    for (Index b = 0; b < in_dim; ++b) {
      const Scalar c = elem(in_off + b);
      if (c == 0) continue;
      for (auto [k, v] : algebra_->basis_product(mw, mi, n - g, b)) out(out_off + k) = F.add(out(out_off + k), F.mul(c, v));
    }
    in_off += in_dim;
    out_off += out_dim;
  }
  return out;
}

Matrix FreeResolution::differential(int s, int n) const {
  if (s == 0) {
    Matrix m = Matrix::Zero(module_dim(0, n), n == 0 ? 1 : 0);
    if (n == 0 && m.rows() > 0) m(0, 0) = 1;
    return m;
  }
  const auto& st = stage(s);
  Matrix m(module_dim(s, n), module_dim(s - 1, n));
  Index row = 0;
  for (std::size_t j = 0; j < st.generator_weights.size(); ++j) {
    const int g = st.generator_weights[j];
    if (n < g) continue;
    for (Index b = 0; b < algebra_->dim(n - g); ++b) m.row(row++) = left_multiply(s - 1, g, st.images[j], n - g, b);
  }
  return m;
}

RowVector FreeResolution::component(int s, std::size_t j, std::size_t i) const {
  const int g = stage(s).generator_weights[j];
  const int h = stage(s - 1).generator_weights[i];
  if (g < h) return RowVector::Zero(0);
  return stage(s).images[j].segment(block_offset(s - 1, g, i), algebra_->dim(g - h));
}

bool FreeResolution::terminated() const {
  for (std::size_t s = 1; s < stages_.size(); ++s)
    if (stages_[s].generator_weights.empty()) return true;
  return false;
}

bool FreeResolution::stage_complete(int s, int margin) const {
  for (int k = 1; k <= s && k < static_cast<int>(stages_.size()); ++k)
    if (stage(k).generator_weights.empty()) return true;
  if (s >= static_cast<int>(stages_.size())) return false;
  const auto& gw = stage(s).generator_weights;
  return gw.empty() || gw.back() <= deg_bound_ - margin;
}

bool FreeResolution::is_minimal() const {
  for (int s = 1; s < static_cast<int>(stages_.size()); ++s)
    for (std::size_t j = 0; j < stage(s).generator_weights.size(); ++j)
      for (std::size_t i = 0; i < stage(s - 1).generator_weights.size(); ++i)
        if (stage(s).generator_weights[j] == stage(s - 1).generator_weights[i] && !component(s, j, i).isZero())
          return false;
  return true;
}

bool FreeResolution::composites_vanish() const {
  const PrimeField& F = algebra_->field();
  for (int s = 1; s < static_cast<int>(stages_.size()); ++s) {
    const auto& st = stage(s);
    for (std::size_t j = 0; j < st.generator_weights.size(); ++j) {
      const int g = st.generator_weights[j];
      if (!multiply_mod(st.images[j], differential(s - 1, g), F).isZero()) return false;
    }
  }
  return true;
}

FreeResolution minimal_resolution(const Presentation& pres, int hom_bound, int deg_bound) {
  if (hom_bound < 0 || deg_bound < 0) throw AlgebraError("WindowTooSmall", "negative bounds");
  const int needed = std::max(pres.max_generator_weight(), pres.max_relation_weight());
  if (deg_bound < needed)
    throw AlgebraError("WindowTooSmall", "degree bound " + std::to_string(deg_bound) +
                                             " does not reach the presentation data (weight " + std::to_string(needed) + ")");
  auto alg = std::make_shared<const GradedAlgebra>(pres, deg_bound);
  std::vector<ResolutionStage> stages(1);
  stages[0].generator_weights = {0};
  for (int s = 1; s <= hom_bound; ++s) {
    FreeResolution res(alg, hom_bound, deg_bound, stages);
    ResolutionStage st;
    const bool previous_empty = stages.back().generator_weights.empty();
    for (int n = 1; n <= deg_bound && !previous_empty; ++n) {
      Matrix kernel;
      if (s == 1) kernel = Matrix::Identity(alg->dim(n), alg->dim(n));
      else kernel = left_kernel(res.differential(s - 1, n), alg->field());
      if (kernel.rows() == 0) continue;
      Subspace image(res.module_dim(s - 1, n), alg->field());
      for (std::size_t j = 0; j < st.generator_weights.size(); ++j) {
        const int g = st.generator_weights[j];
        for (Index b = 0; b < alg->dim(n - g); ++b) image.insert(res.left_multiply(s - 1, g, st.images[j], n - g, b));
      }
      for (Index k = 0; k < kernel.rows(); ++k) {
        RowVector v = kernel.row(k);
        if (image.insert(v)) {
          st.generator_weights.push_back(n);
          st.images.push_back(std::move(v));
        }
      }
    }
    stages.push_back(std::move(st));
    if (stages.back().generator_weights.empty()) break;
  }
  return FreeResolution(alg, hom_bound, deg_bound, std::move(stages));
}

BigradedDimensions tor_dimensions(const FreeResolution& res) {
  BigradedDimensions out;
  const int sign = res.algebra().presentation().orientation_sign();
  for (int s = 0; s < static_cast<int>(res.stages().size()); ++s)
    for (int g : res.stage(s).generator_weights) out.add(s, sign * g, 1);
  return out;
}

BigradedDimensions tor_dimensions(const Presentation& pres, int hom_bound, int deg_bound) {
  return tor_dimensions(minimal_resolution(pres, hom_bound, deg_bound));
}

std::optional<int> artinian_top(const Presentation& pres) {
  int base = pres.max_relation_weight();
  for (std::size_t i = 0; i < pres.num_generators(); ++i) base += pres.weight(i);
  base = std::max(base, 1) + pres.max_generator_weight();
  for (int bound = base; bound <= 8 * base; bound *= 2)
    if (auto top = GradedAlgebra(pres, bound).top_weight()) return top;
  return std::nullopt;
}

namespace {

std::vector<SocleElement> socle_of(const GradedAlgebra& alg, int top) {
  const Presentation& pres = alg.presentation();
  const PrimeField& F = alg.field();
  std::vector<RowVector> gens;
  for (std::size_t i = 0; i < pres.num_generators(); ++i) {
    Exponents e(pres.num_generators(), 0);
    e[i] = 1;
    const int w = pres.weight(i);
    RowVector v = RowVector::Zero(alg.dim(w));
    for (auto [k, c] : alg.normal_form(e)) v(k) = c;
    gens.push_back(std::move(v));
  }
  std::vector<SocleElement> out;
  for (int n = 0; n <= top; ++n) {
    const Index dn = alg.dim(n);
    if (dn == 0) continue;
    Index cols = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) cols += alg.dim(n + pres.weight(i));
    Matrix m = Matrix::Zero(dn, cols);
    for (Index b = 0; b < dn; ++b) {
      RowVector x = RowVector::Zero(dn);
      x(b) = 1;
      Index off = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const int w = pres.weight(i);
        const Index len = alg.dim(n + w);
        if (len > 0) m.row(b).segment(off, len) = alg.multiply(w, gens[i], n, x);
        off += len;
      }
    }
    Matrix ker = left_kernel(m, F);
    Echelon ech = row_reduce(ker, F);
    for (Index k = 0; k < ech.rank(); ++k) {
      SocleElement el;
      el.degree = alg.degree_of(n);
      for (Index b = 0; b < dn; ++b)
        if (ech.rows(k, b) != 0) el.terms.emplace_back(alg.basis(n)[static_cast<std::size_t>(b)], ech.rows(k, b));
      out.push_back(std::move(el));
    }
  }
  return out;
}

std::string describe(const Presentation& pres, const SocleElement& el) {
  Polynomial f;
  for (const auto& [m, c] : el.terms) f[m] = c;
  return print_polynomial(pres, f);
}

GorensteinCertificate socle_certificate(const Presentation& pres, int top, int hom_bound, int deg_bound) {
  GradedAlgebra alg(pres, top + pres.max_generator_weight());
  auto soc = socle_of(alg, top);
  GorensteinCertificate cert;
  cert.method = "socle";
  cert.hom_bound = hom_bound;
  cert.deg_bound = deg_bound;
  if (soc.size() == 1) {
    cert.verdict = Verdict::gorenstein;
    cert.shift = soc[0].degree;
    cert.evidence = describe(pres, soc[0]) + " in degree " + std::to_string(soc[0].degree);
  } else {
    cert.verdict = Verdict::not_gorenstein;
    cert.evidence = std::to_string(soc.size()) + "-dimensional socle";
  }
  return cert;
}

int margin_of(const Presentation& pres) { return std::max(pres.max_generator_weight(), pres.max_relation_weight()); }

}  // namespace

std::vector<SocleElement> socle(const Presentation& pres) {
  auto top = artinian_top(pres);
  if (!top) throw AlgebraError("NotArtinian", "the algebra does not vanish in high degrees");
  GradedAlgebra alg(pres, *top + pres.max_generator_weight());
  return socle_of(alg, *top);
}

ExtWindow ext_dimensions(const FreeResolution& res) {
  const GradedAlgebra& A = res.algebra();
  const PrimeField& F = A.field();
  const int margin = margin_of(A.presentation());
  const int D = res.deg_bound();
  const int nstages = static_cast<int>(res.stages().size());
  auto weights = [&](int s) -> const std::vector<int>& {
    static const std::vector<int> none;
    return s >= 0 && s < nstages ? res.stage(s).generator_weights : none;
  };
  auto hom_dim = [&](int s, int u) {
    Index d = 0;
    for (int g : weights(s))
      if (g - u >= 0) d += A.dim(g - u);
    return d;
  };
  // delta_s : Hom(F_s, A)_u -> Hom(F_{s+1}, A)_u
  auto coboundary = [&](int s, int u) {
    const auto& h = weights(s);
    const auto& g = weights(s + 1);
    Matrix m = Matrix::Zero(hom_dim(s, u), hom_dim(s + 1, u));
    std::vector<Index> col_off(g.size(), 0);
    for (std::size_t j = 0, off = 0; j < g.size(); ++j) {
      col_off[j] = static_cast<Index>(off);
      if (g[j] - u >= 0) off += static_cast<std::size_t>(A.dim(g[j] - u));
    }
    Index row = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] - u < 0) continue;
      const Index len = A.dim(h[i] - u);
      for (Index b = 0; b < len; ++b, ++row) {
        RowVector x = RowVector::Zero(len);
        x(b) = 1;
        for (std::size_t j = 0; j < g.size(); ++j) {
          if (g[j] < h[i] || g[j] - u < 0) continue;
          RowVector c = res.component(s + 1, j, i);
          if (c.isZero()) continue;
          m.row(row).segment(col_off[j], A.dim(g[j] - u)) = A.multiply(g[j] - h[i], c, h[i] - u, x);
        }
      }
    }
    return m;
  };

  ExtWindow out;
  for (int s = 0; s + 1 <= res.hom_bound(); ++s) {
    if (!res.stage_complete(s + 1, margin) || !res.stage_complete(s, margin)) break;
    out.max_s = s;
    if (weights(s).empty()) continue;
    int top = 0;
    for (int k = std::max(0, s - 1); k <= s + 1; ++k)
      for (int g : weights(k)) top = std::max(top, g);
    const int u_floor = top - D;
    out.u_floor[s] = u_floor;
    for (int u = u_floor; u <= weights(s).back(); ++u) {
      const Index dim = hom_dim(s, u);
      if (dim == 0) continue;
      const Index out_rank = rank(coboundary(s, u), F);
      const Index in_rank = s == 0 ? 0 : rank(coboundary(s - 1, u), F);
      out.dims.add(s, u, static_cast<int>(dim - out_rank - in_rank));
    }
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::gorenstein: return "gorenstein";
    case Verdict::not_gorenstein: return "not_gorenstein";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

GorensteinCertificate gorenstein_certificate(const FreeResolution& res) {
  const Presentation& pres = res.algebra().presentation();
  if (auto top = res.algebra().top_weight()) return socle_certificate(pres, *top, res.hom_bound(), res.deg_bound());
  ExtWindow ext = ext_dimensions(res);
  GorensteinCertificate cert;
  cert.method = "ext";
  cert.hom_bound = res.hom_bound();
  cert.deg_bound = res.deg_bound();
  cert.margin = margin_of(pres);
  int total = 0;
  for (const auto& [k, d] : ext.dims.entries) total += d;
  const int sign = pres.orientation_sign();
  if (total == 1) {
    const auto [s, u] = ext.dims.entries.begin()->first;
    cert.verdict = Verdict::gorenstein;
    cert.ext_s = s;
    cert.ext_t = -sign * u;
    cert.shift = -sign * u - s;
    cert.evidence = "Ext^{" + std::to_string(s) + "," + std::to_string(*cert.ext_t) + "}(k,A) = k";
  } else if (total > 1) {
    cert.verdict = Verdict::not_gorenstein;
    cert.evidence = std::to_string(total) + " Ext classes inside the window";
  } else {
    cert.verdict = Verdict::inconclusive;
    cert.evidence = ext.max_s < 0 ? "no complete resolution stage inside the window"
                                  : "no Ext class found through s = " + std::to_string(ext.max_s);
  }
  return cert;
}

GorensteinCertificate gorenstein_certificate(const Presentation& pres, int hom_bound, int deg_bound) {
  if (auto top = artinian_top(pres)) return socle_certificate(pres, *top, hom_bound, deg_bound);
  return gorenstein_certificate(minimal_resolution(pres, hom_bound, deg_bound));
}

int structural_shift(const Presentation& pres) {
  auto shape = tensor_shape(pres);
  if (!shape) throw AlgebraError("NotTensorForm", "relations do not split off an Artinian factor");
  int shift = 0;
  for (std::size_t i : shape->exterior) shift += pres.generators()[i].degree;
  for (std::size_t i : shape->polynomial) shift -= pres.generators()[i].degree + 1;
  if (!shape->artinian.empty()) {
    auto soc = socle(sub_presentation(pres, shape->artinian));
    if (soc.size() != 1) throw AlgebraError("NotTensorForm", "Artinian factor is not Gorenstein");
    shift += soc[0].degree;
  }
  return shift;
}

}  // namespace gdual
