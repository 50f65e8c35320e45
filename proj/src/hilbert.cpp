#include "gdual/hilbert.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gdual {

GradedVectorSpace enumerate_basis(const Presentation& pres, int degree_bound) {
  if (degree_bound < 0) throw AlgebraError("WindowTooSmall", "negative degree bound");
  GradedAlgebra alg(pres, degree_bound);
  GradedVectorSpace v;
  v.orientation = pres.orientation();
  for (int w = 0; w <= degree_bound; ++w) {
    const int deg = alg.degree_of(w);
    v.dims[deg] = alg.dim(w);
    v.labels[deg] = alg.basis(w);
  }
  return v;
}

void HilbertSeries::canonicalize() {
  std::sort(denominator.begin(), denominator.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < denominator.size(); ++i) {
      if (numerator.is_zero()) break;
      if (auto q = numerator.divide_exact(LaurentPoly::one_minus(denominator[i]))) {
        numerator = *q;
        denominator.erase(denominator.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (numerator.is_zero()) denominator.clear();
}

std::string HilbertSeries::to_string() const {
  const std::string var = orientation == Orientation::connective ? "t" : "t^-1";
  std::string num = numerator.to_string(orientation == Orientation::connective ? "t" : "u");
  if (denominator.empty()) return orientation == Orientation::connective ? num : num + "  (u = t^-1)";
  std::ostringstream os;
  os << "(" << num << ")/(";
  // Group repeated factors.
  std::map<int, int> counts;
  for (int d : denominator) ++counts[d];
  bool first = true;
  for (auto [d, k] : counts) {
    if (!first) os << "*";
    first = false;
    os << "(1-" << (orientation == Orientation::connective ? "t" : "u") << "^" << d << ")";
    if (k > 1) os << "^" << k;
  }
  os << ")";
  if (orientation == Orientation::coconnective) os << "  (u = t^-1)";
  return os.str();
}

HilbertSeries make_series(LaurentPoly numerator, std::vector<int> denominator, Orientation orientation) {
  HilbertSeries h;
  h.numerator = std::move(numerator);
  h.denominator = std::move(denominator);
  h.orientation = orientation;
  h.closed_form = true;
  h.canonicalize();
  return h;
}

namespace {

// A weight window in which a finite quotient of these generators shows its
// top. Pure powers x_i^h_i among the relations bound the top directly.
int artinian_window(const Presentation& sub) {
  int bound = 0;
  for (std::size_t i = 0; i < sub.num_generators(); ++i) bound += sub.weight(i);
  bound = std::max(bound, sub.max_relation_weight()) * 4 + sub.max_generator_weight();
  std::map<std::size_t, int> heights;
  for (const auto& r : sub.relations()) {
    if (r.size() != 1) continue;
    const Exponents& m = r.begin()->first;
    if (std::count_if(m.begin(), m.end(), [](int e) { return e > 0; }) != 1) continue;
    const auto i = static_cast<std::size_t>(std::find_if(m.begin(), m.end(), [](int e) { return e > 0; }) - m.begin());
    auto [it, fresh] = heights.emplace(i, m[i]);
    if (!fresh) it->second = std::min(it->second, m[i]);
  }
  if (heights.size() == sub.num_generators()) {
    int top = 0;
    for (const auto& [i, h] : heights)
      top += ((sub.exponent_cap(i) < 0 ? h : std::min(h, sub.exponent_cap(i) + 1)) - 1) * sub.weight(i);
    bound = std::min(bound, top + sub.max_generator_weight() + 1);
  }
  return bound;
}

}  // namespace

std::optional<TensorShape> tensor_shape(const Presentation& pres) {
  std::set<std::size_t> involved;
  for (const auto& r : pres.relations())
    for (const auto& [m, c] : r)
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) involved.insert(i);
  TensorShape shape;
  for (std::size_t i = 0; i < pres.num_generators(); ++i) {
    if (involved.count(i)) shape.artinian.push_back(i);
    else if (pres.exponent_cap(i) == 1) shape.exterior.push_back(i);
    else shape.polynomial.push_back(i);
  }
  if (!shape.artinian.empty()) {
    Presentation sub = sub_presentation(pres, shape.artinian);
    GradedAlgebra alg(sub, artinian_window(sub));
    if (!alg.top_weight()) return std::nullopt;
  }
  return shape;
}

Presentation sub_presentation(const Presentation& pres, const std::vector<std::size_t>& gens) {
  std::vector<Generator> g;
  for (std::size_t i : gens) g.push_back(pres.generators()[i]);
  std::vector<Polynomial> rels;
  for (const auto& r : pres.relations()) {
    Polynomial f;
    bool inside = true;
    for (const auto& [m, c] : r) {
      Exponents e;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (std::find(gens.begin(), gens.end(), i) != gens.end()) e.push_back(m[i]);
        else if (m[i] != 0) inside = false;
      }
      f[e] = c;
    }
    if (inside) rels.push_back(std::move(f));
  }
  return Presentation(pres.field(), pres.orientation(), std::move(g), std::move(rels));
}

HilbertSeries reconstruct_series(const std::map<int, Scalar>& dims_by_weight, int max_weight,
                                 std::vector<int> denominator, Orientation orientation) {
  std::vector<Scalar> coeffs(static_cast<std::size_t>(max_weight) + 1, 0);
  for (auto [w, d] : dims_by_weight)
    if (w >= 0 && w <= max_weight) coeffs[static_cast<std::size_t>(w)] = d;
  // Multiply by each (1 - t^d); exact in weights <= max_weight.
  for (int d : denominator)
    for (std::size_t i = coeffs.size(); i-- > static_cast<std::size_t>(d);) coeffs[i] -= coeffs[i - static_cast<std::size_t>(d)];
  int last = -1;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) last = static_cast<int>(i);
  int span = 0;
  for (int d : denominator) span += d;
  span = std::max(span, 1);
  if (max_weight - last < span)
    throw AlgebraError("ReconstructionFailed", "numerator support reaches weight " + std::to_string(last) +
                                                   "; need " + std::to_string(span) + " verified zero weights below bound " +
                                                   std::to_string(max_weight));
  HilbertSeries h;
  for (std::size_t i = 0; i < coeffs.size(); ++i) h.numerator.set(static_cast<int>(i), coeffs[i]);
  h.denominator = std::move(denominator);
  h.orientation = orientation;
  h.closed_form = false;
  h.window_low = last;
  h.window_high = max_weight;
  h.canonicalize();
  for (auto [w, c] : h.expand(max_weight))
    if (c < 0) throw AlgebraError("ReconstructionFailed", "reconstructed series has a negative coefficient");
  return h;
}

HilbertSeries hilbert_series(const Presentation& pres, int degree_bound) {
  if (auto shape = tensor_shape(pres)) {
    LaurentPoly num(1);
    std::vector<int> den;
    for (std::size_t i : shape->polynomial) den.push_back(pres.weight(i));
    for (std::size_t i : shape->exterior) num = num * (LaurentPoly(1) + LaurentPoly::monomial(pres.weight(i)));
    if (!shape->artinian.empty()) {
      Presentation sub = sub_presentation(pres, shape->artinian);
      GradedAlgebra alg(sub, artinian_window(sub));
      LaurentPoly h;
      for (int w = 0; w <= *alg.top_weight(); ++w) h.set(w, alg.dim(w));
      num = num * h;
    }
    return make_series(std::move(num), std::move(den), pres.orientation());
  }
  GradedAlgebra alg(pres, degree_bound);
  std::map<int, Scalar> dims;
  for (int w = 0; w <= degree_bound; ++w) dims[w] = alg.dim(w);
  std::vector<int> den;
  for (std::size_t i = 0; i < pres.num_generators(); ++i)
    if (pres.exponent_cap(i) < 0) den.push_back(pres.weight(i));
  return reconstruct_series(dims, degree_bound, std::move(den), pres.orientation());
}

}  // namespace gdual
