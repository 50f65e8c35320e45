#include "gdual/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace gdual {

Presentation::Presentation(PrimeField field, Orientation orientation, std::vector<Generator> generators,
                           std::vector<Polynomial> relations)
    : field_(field), orientation_(orientation), generators_(std::move(generators)) {
  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (g.degree == 0) throw AlgebraError("DegreeZeroGenerator", "generator " + g.name + " has degree 0");
    if ((g.degree > 0) != (orientation_ == Orientation::connective))
      throw AlgebraError("OrientationMismatch", "generator " + g.name + " has degree of the wrong sign");
    if (field_.p() != 2 && g.degree % 2 != 0 && g.kind == GeneratorKind::polynomial)
      throw AlgebraError("ParityMismatch", "odd generator " + g.name + " must be exterior in odd characteristic");
    if (!names.insert(g.name).second) throw AlgebraError("DuplicateGenerator", g.name);
  }
  for (auto& r : relations) {
    for (const auto& [m, c] : r)
      if (m.size() != generators_.size()) throw AlgebraError("BadRelation", "exponent vector length mismatch");
    Polynomial n = normalize(std::move(r));
    if (n.empty()) continue;
    if (polynomial_weight(n) == 0) throw AlgebraError("BadRelation", "relation has a constant term");
    relations_.push_back(std::move(n));
  }
}

int Presentation::weight(std::size_t gen) const noexcept { return std::abs(generators_[gen].degree); }

int Presentation::weight(const Exponents& m) const noexcept {
  int w = 0;
  for (std::size_t i = 0; i < m.size(); ++i) w += m[i] * weight(i);
  return w;
}

int Presentation::exponent_cap(std::size_t gen) const noexcept {
  if (generators_[gen].kind == GeneratorKind::exterior) return 1;
  if (field_.p() != 2 && is_odd(gen)) return 1;
  return -1;  // unbounded
}

std::optional<std::size_t> Presentation::find(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::pair<Exponents, Scalar>> Presentation::multiply(const Exponents& a, const Exponents& b) const {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + b[i];
    const int cap = exponent_cap(i);
    if (cap >= 0 && out[i] > cap) return std::nullopt;
  }
  // Moving each factor of b left past the later factors of a.
  int swaps = 0;
  if (field_.p() != 2) {
    int odd_in_a_after = 0;
    for (std::size_t j = a.size(); j-- > 0;) {
      if (!is_odd(j)) continue;
      swaps += b[j] * odd_in_a_after;
      odd_in_a_after += a[j];
    }
  }
  return std::make_pair(std::move(out), field_.sign(swaps));
}

Polynomial Presentation::multiply(const Polynomial& a, const Polynomial& b) const {
  Polynomial out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto prod = multiply(ma, mb);
      if (!prod) continue;
      Scalar& slot = out[prod->first];
      slot = field_.add(slot, field_.mul(field_.mul(ca, cb), prod->second));
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Polynomial Presentation::generator_polynomial(std::size_t gen, int power) const {
  Exponents e(generators_.size(), 0);
  e[gen] = power;
  Polynomial f;
  const int cap = exponent_cap(gen);
  if (cap < 0 || power <= cap) f[e] = 1 % field_.p();
  return f;
}

int Presentation::polynomial_weight(const Polynomial& f) const {
  if (f.empty()) throw AlgebraError("InhomogeneousOperand", "zero polynomial has no weight");
  const int w = weight(f.begin()->first);
  for (const auto& [m, c] : f)
    if (weight(m) != w) throw AlgebraError("RelationNotHomogeneous", "polynomial mixes degrees");
  return w;
}

Polynomial Presentation::normalize(Polynomial f) const {
  Polynomial out;
  for (auto& [m, c] : f) {
    bool vanishes = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < 0) throw AlgebraError("BadRelation", "negative exponent");
      const int cap = exponent_cap(i);
      if (cap >= 0 && m[i] > cap) vanishes = true;
    }
    const Scalar r = field_.reduce(c);
    if (!vanishes && r != 0) out[m] = r;
  }
  return out;
}

int Presentation::max_generator_weight() const noexcept {
  int w = 0;
  for (std::size_t i = 0; i < generators_.size(); ++i) w = std::max(w, weight(i));
  return w;
}

int Presentation::max_relation_weight() const {
  int w = 0;
  for (const auto& r : relations_) w = std::max(w, polynomial_weight(r));
  return w;
}

bool Presentation::monomial_relations() const noexcept {
  return std::all_of(relations_.begin(), relations_.end(), [](const Polynomial& r) { return r.size() == 1; });
}

Presentation Presentation::with_relations(const std::vector<Polynomial>& extra) const {
  std::vector<Polynomial> rels = relations_;
  rels.insert(rels.end(), extra.begin(), extra.end());
  return Presentation(field_, orientation_, generators_, std::move(rels));
}

Presentation Presentation::tensor(const Presentation& a, const Presentation& b) {
  if (!(a.field_ == b.field_)) throw AlgebraError("FieldMismatch", "tensor factors over different fields");
  if (a.orientation_ != b.orientation_) throw AlgebraError("OrientationMismatch", "tensor factors of opposite orientation");
  std::vector<Generator> gens = a.generators_;
  gens.insert(gens.end(), b.generators_.begin(), b.generators_.end());
  const std::size_t na = a.generators_.size();
  const std::size_t nb = b.generators_.size();
  std::vector<Polynomial> rels;
  for (const auto& r : a.relations_) {
    Polynomial f;
    for (const auto& [m, c] : r) {
      Exponents e = m;
      e.resize(na + nb, 0);
      f[e] = c;
    }
    rels.push_back(std::move(f));
  }
  for (const auto& r : b.relations_) {
    Polynomial f;
    for (const auto& [m, c] : r) {
      Exponents e(na, 0);
      e.insert(e.end(), m.begin(), m.end());
      f[e] = c;
    }
    rels.push_back(std::move(f));
  }
  return Presentation(a.field_, a.orientation_, std::move(gens), std::move(rels));
}

bool monomial_less(const Exponents& a, const Exponents& b) { return a < b; }

namespace {

void enumerate(const Presentation& pres, std::size_t gen, int remaining, Exponents& current,
               std::vector<Exponents>& out) {
  if (gen == pres.num_generators()) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const int w = pres.weight(gen);
  const int cap = pres.exponent_cap(gen);
  for (int e = 0; e * w <= remaining && (cap < 0 || e <= cap); ++e) {
    current[gen] = e;
    enumerate(pres, gen + 1, remaining - e * w, current, out);
  }
  current[gen] = 0;
}

}  // namespace

std::vector<Exponents> free_monomials(const Presentation& pres, int weight) {
  std::vector<Exponents> out;
  if (weight < 0) return out;
  Exponents current(pres.num_generators(), 0);
  enumerate(pres, 0, weight, current, out);
  std::sort(out.begin(), out.end(), monomial_less);
  return out;
}

GradedAlgebra::GradedAlgebra(Presentation pres, int bound) : pres_(std::move(pres)), bound_(bound) {
  if (bound < 0) throw AlgebraError("WindowTooSmall", "negative degree bound");
  const PrimeField& f = pres_.field();
  pieces_.resize(static_cast<std::size_t>(bound) + 1);
  std::vector<int> rel_weights;
  for (const auto& r : pres_.relations()) rel_weights.push_back(pres_.polynomial_weight(r));

  for (int n = 0; n <= bound; ++n) {
    Piece& piece = pieces_[static_cast<std::size_t>(n)];
    std::vector<Exponents> monos = free_monomials(pres_, n);
    // Columns in descending monomial order so pivots land on the largest monomials.
    std::reverse(monos.begin(), monos.end());
    std::map<Exponents, Index> col;
    for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = static_cast<Index>(i);

    std::vector<RowVector> rows;
    for (std::size_t r = 0; r < pres_.relations().size(); ++r) {
      const int wr = rel_weights[r];
      if (wr > n) continue;
      for (const auto& m : free_monomials(pres_, n - wr)) {
        Polynomial mono{{m, 1}};
        Polynomial prod = pres_.multiply(mono, pres_.relations()[r]);
        if (prod.empty()) continue;
        RowVector row = RowVector::Zero(static_cast<Index>(monos.size()));
        for (const auto& [e, c] : prod) row(col.at(e)) = c;
        rows.push_back(std::move(row));
      }
    }
    std::vector<bool> is_pivot(monos.size(), false);
    Echelon ech;
    if (!rows.empty()) {
      Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(monos.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i];
      ech = row_reduce(std::move(m), f);
      for (Index p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    }
    for (std::size_t i = monos.size(); i-- > 0;)
      if (!is_pivot[i]) piece.basis.push_back(monos[i]);
    for (std::size_t i = 0; i < piece.basis.size(); ++i) piece.index[piece.basis[i]] = static_cast<Index>(i);
    for (Index r = 0; r < ech.rank(); ++r) {
      SparseRow nf;
      for (Index c = 0; c < ech.rows.cols(); ++c) {
        const Scalar v = ech.rows(r, c);
        if (v == 0 || is_pivot[static_cast<std::size_t>(c)]) continue;
        nf.emplace_back(piece.index.at(monos[static_cast<std::size_t>(c)]), f.neg(v));
      }
      std::sort(nf.begin(), nf.end());
      piece.reduced[monos[static_cast<std::size_t>(ech.pivots[static_cast<std::size_t>(r)])]] = std::move(nf);
    }
  }
}

void GradedAlgebra::check_weight(int weight) const {
  if (weight > bound_) throw AlgebraError("OutOfWindow", "weight " + std::to_string(weight) + " exceeds bound " + std::to_string(bound_));
}

int GradedAlgebra::dim(int weight) const {
  if (weight < 0) return 0;
  check_weight(weight);
  return static_cast<int>(pieces_[static_cast<std::size_t>(weight)].basis.size());
}

const std::vector<Exponents>& GradedAlgebra::basis(int weight) const {
  check_weight(weight);
  return pieces_.at(static_cast<std::size_t>(weight)).basis;
}

std::optional<Index> GradedAlgebra::index(int weight, const Exponents& m) const {
  check_weight(weight);
  const auto& idx = pieces_[static_cast<std::size_t>(weight)].index;
  auto it = idx.find(m);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

SparseRow GradedAlgebra::normal_form(const Exponents& m) const {
  const int w = pres_.weight(m);
  check_weight(w);
  const Piece& piece = pieces_[static_cast<std::size_t>(w)];
  if (auto it = piece.index.find(m); it != piece.index.end()) return {{it->second, 1 % field().p()}};
  if (auto it = piece.reduced.find(m); it != piece.reduced.end()) return it->second;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const int cap = pres_.exponent_cap(i);
    if (cap >= 0 && m[i] > cap) return {};
  }
  throw AlgebraError("UnknownMonomial", "monomial outside the free algebra");
}

RowVector GradedAlgebra::normal_form(const Polynomial& f, int weight) const {
  RowVector v = RowVector::Zero(dim(weight));
  const PrimeField& F = field();
  for (const auto& [m, c] : f) {
    if (pres_.weight(m) != weight) throw AlgebraError("InhomogeneousOperand", "term of the wrong weight");
    for (auto [i, x] : normal_form(m)) v(i) = F.add(v(i), F.mul(c, x));
  }
  return v;
}

RowVector GradedAlgebra::unit() const {
  RowVector v = RowVector::Zero(dim(0));
  if (v.size() > 0) v(0) = 1 % field().p();
  return v;
}

SparseRow GradedAlgebra::basis_product(int wa, Index i, int wb, Index j) const {
  const auto& a = basis(wa)[static_cast<std::size_t>(i)];
  const auto& b = basis(wb)[static_cast<std::size_t>(j)];
  check_weight(wa + wb);
  auto prod = pres_.multiply(a, b);
  if (!prod) return {};
  SparseRow nf = normal_form(prod->first);
  if (prod->second != 1)
    for (auto& [c, v] : nf) v = field().mul(v, prod->second);
  return nf;
}

RowVector GradedAlgebra::multiply(int wa, const RowVector& a, int wb, const RowVector& b) const {
  const PrimeField& F = field();
  RowVector out = RowVector::Zero(dim(wa + wb));
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) == 0) continue;
    for (Index j = 0; j < b.size(); ++j) {
      if (b(j) == 0) continue;
      const Scalar c = F.mul(a(i), b(j));
      for (auto [k, v] : basis_product(wa, i, wb, j)) out(k) = F.add(out(k), F.mul(c, v));
    }
  }
  return out;
}

std::optional<int> GradedAlgebra::top_weight() const {
  const int run = std::max(1, pres_.max_generator_weight());
  int zeros = 0;
  int top = 0;
  for (int n = 0; n <= bound_; ++n) {
    if (dim(n) == 0) {
      if (++zeros >= run) return top;
    } else {
      zeros = 0;
      top = n;
    }
  }
  return std::nullopt;
}

}  // namespace gdual
