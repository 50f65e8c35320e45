#include "gdual/koszul.hpp"

#include <bit>

namespace gdual {

KoszulComplex::KoszulComplex(Presentation base, std::vector<Polynomial> elements)
    : base_(std::move(base)), elements_(std::move(elements)) {
  if (elements_.size() > 16) throw AlgebraError("TooManyElements", "at most 16 Koszul elements");
  for (auto& e : elements_) {
    e = base_.normalize(e);
    if (e.empty()) throw AlgebraError("InhomogeneousElement", "Koszul elements must be nonzero");
    try {
      weights_.push_back(base_.polynomial_weight(e));
    } catch (const AlgebraError& err) {
      throw AlgebraError("InhomogeneousElement", err.what());
    }
  }
}

std::vector<unsigned> KoszulComplex::cells(int s) const {
  std::vector<unsigned> out;
  for (unsigned c = 0; c < (1u << elements_.size()); ++c)
    if (std::popcount(c) == s) out.push_back(c);
  return out;
}

int KoszulComplex::cell_weight(unsigned cell) const {
  int w = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (cell >> i & 1u) w += weights_[i];
  return w;
}

Index KoszulComplex::module_dim(const GradedAlgebra& alg, int s, int n) const {
  Index d = 0;
  for (unsigned c : cells(s))
    if (n >= cell_weight(c)) d += alg.dim(n - cell_weight(c));
  return d;
}

Matrix KoszulComplex::differential(const GradedAlgebra& alg, int s, int n) const {
  const PrimeField& F = alg.field();
  const auto src = cells(s);
  const auto dst = cells(s - 1);
  std::map<unsigned, Index> dst_offset;
  Index off = 0;
  for (unsigned c : dst) {
    dst_offset[c] = off;
    if (n >= cell_weight(c)) off += alg.dim(n - cell_weight(c));
  }
  Matrix m = Matrix::Zero(module_dim(alg, s, n), off);
  std::vector<RowVector> r;
  for (std::size_t i = 0; i < elements_.size(); ++i) r.push_back(alg.normal_form(elements_[i], weights_[i]));

  Index row = 0;
  for (unsigned c : src) {
    const int wc = cell_weight(c);
    if (n < wc) continue;
    const int wa = n - wc;
    // d(a e_S) = (-1)^{|a|} a * sum_k sigma_k r_{i_k} e_{S - i_k}
    for (Index b = 0; b < alg.dim(wa); ++b, ++row) {
      RowVector a = RowVector::Zero(alg.dim(wa));
      a(b) = 1;
      int before = 0;  // sum over earlier factors of (|r_j| + 1)
      for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (!(c >> k & 1u)) continue;
        const int wk = weights_[k];
        const int exponent = wa + before * (1 + wk);
        before += wk + 1;
        const unsigned face = c & ~(1u << k);
        const Index len = alg.dim(n - cell_weight(face));
        RowVector prod = alg.multiply(wa, a, wk, r[k]);
        const Scalar sign = F.sign(exponent);
        for (Index j = 0; j < len; ++j) m(row, dst_offset[face] + j) = F.mul(sign, prod(j));
      }
    }
  }
  return m;
}

KoszulComplex build_koszul(const Presentation& pres, const std::vector<Polynomial>& elements) {
  return KoszulComplex(pres, elements);
}

BigradedDimensions koszul_homology(const KoszulComplex& cx, int degree_bound) {
  GradedAlgebra alg(cx.base(), degree_bound);
  BigradedDimensions out;
  for (int n = 0; n <= degree_bound; ++n) {
    std::vector<Index> ranks(static_cast<std::size_t>(cx.length() + 2), 0);
    for (int s = 1; s <= cx.length(); ++s) ranks[static_cast<std::size_t>(s)] = rank(cx.differential(alg, s, n), alg.field());
    for (int s = 0; s <= cx.length(); ++s) {
      const Index h = cx.module_dim(alg, s, n) - ranks[static_cast<std::size_t>(s)] - ranks[static_cast<std::size_t>(s + 1)];
      out.add(s, alg.degree_of(n), static_cast<int>(h));
    }
  }
  return out;
}

bool koszul_squares_to_zero(const KoszulComplex& cx, int degree_bound) {
  GradedAlgebra alg(cx.base(), degree_bound);
  for (int n = 0; n <= degree_bound; ++n)
    for (int s = 2; s <= cx.length(); ++s) {
      Matrix a = cx.differential(alg, s, n);
      Matrix b = cx.differential(alg, s - 1, n);
      if (a.rows() == 0 || b.cols() == 0) continue;
      for (Index i = 0; i < a.rows(); ++i)
        if (!multiply_mod(a.row(i), b, alg.field()).isZero()) return false;
    }
  return true;
}

RegularityReport is_regular_sequence(const Presentation& pres, const std::vector<Polynomial>& elements,
                                     int degree_bound) {
  RegularityReport rep;
  auto h = koszul_homology(build_koszul(pres, elements), degree_bound);
  for (const auto& [k, d] : h.entries)
    if (k.first > 0 && d > 0) {
      rep.regular = false;
      rep.witness = k;
      rep.witness_dim = d;
      break;
    }
  return rep;
}

}  // namespace gdual
