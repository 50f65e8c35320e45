#include "gdual/hochschild.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "gdual/resolution.hpp"

namespace gdual {

namespace {

struct Letter {
  int weight;
  Index index;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const auto& l : w) {
      h ^= static_cast<std::size_t>(l.weight) * 0x9E3779B97F4A7C15ull + static_cast<std::size_t>(l.index);
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Basis {
  std::vector<Word> words;
  std::unordered_map<Word, Index, WordHash> index;

  Index add(Word w) {
    auto [it, fresh] = index.emplace(w, static_cast<Index>(words.size()));
    if (fresh) words.push_back(std::move(w));
    return it->second;
  }
  std::optional<Index> find(const Word& w) const {
    auto it = index.find(w);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  Index size() const { return static_cast<Index>(words.size()); }
};

/// Words in the augmentation ideal, by (length, weight).
class BarWords {
 public:
  explicit BarWords(const GradedAlgebra& alg) : alg_(alg) {}

  const std::vector<Word>& get(int s, int m) {
    auto key = std::make_pair(s, m);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Word> out;
    if (s == 0) {
      if (m == 0) out.push_back({});
    } else {
      for (int w = 1; w <= m - (s - 1); ++w) {
        const Index d = alg_.dim(w);
        if (d == 0) continue;
        const auto& tails = get(s - 1, m - w);
        for (Index i = 0; i < d; ++i)
          for (const auto& t : tails) {
            Word word;
            word.reserve(static_cast<std::size_t>(s));
            word.push_back({w, i});
            word.insert(word.end(), t.begin(), t.end());
            out.push_back(std::move(word));
          }
      }
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

 private:
  const GradedAlgebra& alg_;
  std::map<std::pair<int, int>, std::vector<Word>> cache_;
};

int min_weight(const Presentation& pres) {
  int m = 0;
  for (std::size_t i = 0; i < pres.num_generators(); ++i) m = m == 0 ? pres.weight(i) : std::min(m, pres.weight(i));
  return m;
}

/// Chains of weight n and bar degree s: for self coefficients the first
/// letter is the coefficient in R.
Basis chain_basis(const GradedAlgebra& A, BarWords& bw, Coefficients coeff, int s, int n) {
  Basis b;
  if (coeff == Coefficients::k) {
    for (const auto& w : bw.get(s, n)) b.add(w);
    return b;
  }
  for (int w0 = 0; w0 <= n; ++w0)
    for (Index i = 0; i < A.dim(w0); ++i)
      for (const auto& w : bw.get(s, n - w0)) {
        Word word{{w0, i}};
        word.insert(word.end(), w.begin(), w.end());
        b.add(std::move(word));
      }
  return b;
}

/// Hochschild boundary of one chain, accumulated into a sparse row over the
/// target basis.
SparseRow chain_boundary(const GradedAlgebra& A, Coefficients coeff, const Word& word, const Basis& target) {
  const PrimeField& F = A.field();
  std::map<Index, Scalar> acc;
  auto deposit = [&](const Word& w, Scalar c) {
    if (c == 0) return;
    auto idx = target.find(w);
    if (!idx) throw AlgebraError("InternalError", "bar boundary left the target basis");
    Scalar& slot = acc[*idx];
    slot = F.add(slot, c);
  };
  auto merge = [&](std::size_t i, Scalar sign) {
    for (auto [k, c] : A.basis_product(word[i].weight, word[i].index, word[i + 1].weight, word[i + 1].index)) {
      Word w;
      w.reserve(word.size() - 1);
      w.insert(w.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
      w.push_back({word[i].weight + word[i + 1].weight, k});
      w.insert(w.end(), word.begin() + static_cast<std::ptrdiff_t>(i) + 2, word.end());
      deposit(w, F.mul(sign, c));
    }
  };
  if (coeff == Coefficients::k) {
    // letters a_1..a_s; faces i = 1..s-1 with sign (-1)^i
    for (std::size_t i = 0; i + 1 < word.size(); ++i) merge(i, F.sign(static_cast<int>(i) + 1));
  } else {
    const int s = static_cast<int>(word.size()) - 1;
    for (int i = 0; i < s; ++i) merge(static_cast<std::size_t>(i), F.sign(i));
    if (s >= 1) {
      int before = 0;
      for (int i = 0; i < s; ++i) before += word[static_cast<std::size_t>(i)].weight;
      const Letter last = word.back();
      const Scalar sign = F.sign(s + last.weight * before);
      for (auto [k, c] : A.basis_product(last.weight, last.index, word[0].weight, word[0].index)) {
        Word w;
        w.push_back({last.weight + word[0].weight, k});
        w.insert(w.end(), word.begin() + 1, word.end() - 1);
        deposit(w, F.mul(sign, c));
      }
    }
  }
  SparseRow row;
  for (auto [k, v] : acc)
    if (v != 0) row.emplace_back(k, v);
  return row;
}

std::vector<SparseRow> boundary_rows(const GradedAlgebra& A, Coefficients coeff, const Basis& source, const Basis& target) {
  std::vector<SparseRow> rows;
  rows.reserve(source.words.size());
  for (const auto& w : source.words) rows.push_back(chain_boundary(A, coeff, w, target));
  return rows;
}

int max_bar_degree(const Presentation& pres, Coefficients coeff, int n) {
  const int mw = min_weight(pres);
  (void)coeff;
  return mw == 0 ? 0 : n / mw;
}

}  // namespace

BigradedDimensions hh_homology(const Presentation& pres, Coefficients coeff, int weight_bound, int hom_bound) {
  if (weight_bound < 0) throw AlgebraError("WindowTooSmall", "negative weight bound");
  GradedAlgebra A(pres, weight_bound);
  BarWords bw(A);
  const PrimeField& F = A.field();
  BigradedDimensions out;
  for (int n = 0; n <= weight_bound; ++n) {
    int smax = max_bar_degree(pres, coeff, n);
    if (hom_bound >= 0) smax = std::min(smax, hom_bound + 1);
    std::vector<Basis> bases;
    for (int s = 0; s <= smax; ++s) bases.push_back(chain_basis(A, bw, coeff, s, n));
    std::vector<Index> ranks(static_cast<std::size_t>(smax) + 2, 0);
    for (int s = 1; s <= smax; ++s)
      ranks[static_cast<std::size_t>(s)] =
          sparse_rank(boundary_rows(A, coeff, bases[static_cast<std::size_t>(s)], bases[static_cast<std::size_t>(s - 1)]), F);
    const int top = hom_bound >= 0 ? std::min(smax, hom_bound) : smax;
    for (int s = 0; s <= top; ++s) {
      const Index h = bases[static_cast<std::size_t>(s)].size() - ranks[static_cast<std::size_t>(s)] -
                      ranks[static_cast<std::size_t>(s + 1)];
      out.add(s, A.degree_of(n), static_cast<int>(h));
    }
  }
  return out;
}

bool bar_squares_to_zero(const Presentation& pres, Coefficients coeff, int weight_bound) {
  GradedAlgebra A(pres, weight_bound);
  BarWords bw(A);
  const PrimeField& F = A.field();
  for (int n = 0; n <= weight_bound; ++n) {
    const int smax = max_bar_degree(pres, coeff, n);
    std::vector<Basis> bases;
    for (int s = 0; s <= smax; ++s) bases.push_back(chain_basis(A, bw, coeff, s, n));
    for (int s = 2; s <= smax; ++s) {
      const auto& src = bases[static_cast<std::size_t>(s)];
      const auto& mid = bases[static_cast<std::size_t>(s - 1)];
      const auto& dst = bases[static_cast<std::size_t>(s - 2)];
      for (const auto& w : src.words) {
        std::map<Index, Scalar> acc;
        for (auto [k, c] : chain_boundary(A, coeff, w, mid))
          for (auto [j, e] : chain_boundary(A, coeff, mid.words[static_cast<std::size_t>(k)], dst)) {
            Scalar& slot = acc[j];
            slot = F.add(slot, F.mul(c, e));
          }
        for (auto [j, v] : acc)
          if (v != 0) return false;
      }
    }
  }
  return true;
}

CohomologyWindow hh_cohomology(const Presentation& pres, Coefficients coeff, int total_bound, int hom_bound) {
  if (total_bound < 0 || hom_bound < 0) throw AlgebraError("WindowTooSmall", "negative window");
  CohomologyWindow out;
  if (coeff == Coefficients::k) {
    // The cochains are the degreewise dual of the chains.
    for (const auto& [k, d] : hh_homology(pres, coeff, total_bound, hom_bound).entries) {
      const int u = -k.second;
      if (std::abs(u - k.first) <= total_bound) out.dims.add(k.first, u, d);
    }
    return out;
  }
  if (pres.orientation() != Orientation::connective)
    throw AlgebraError("Unsupported", "cohomology with coefficients in R needs a connective presentation");
  const int maxw = std::max(1, pres.max_generator_weight());
  const int v1 = total_bound + hom_bound + 2 * maxw;
  const int v2 = v1 + maxw + 1;
  const int mw = std::max(1, min_weight(pres));

  auto compute = [&](int V) {
    BigradedDimensions dims;
    GradedAlgebra A(pres, V + total_bound + hom_bound + 1);
    BarWords bw(A);
    const PrimeField& F = A.field();

    // word -> position within bw.get(s, m)
    std::map<std::pair<int, int>, std::unordered_map<Word, Index, WordHash>> positions;
    auto position = [&](int s, int m, const Word& w) {
      auto key = std::make_pair(s, m);
      auto it = positions.find(key);
      if (it == positions.end()) {
        std::unordered_map<Word, Index, WordHash> map;
        const auto& list = bw.get(s, m);
        for (std::size_t i = 0; i < list.size(); ++i) map.emplace(list[i], static_cast<Index>(i));
        it = positions.emplace(key, std::move(map)).first;
      }
      return it->second.at(w);
    };
    struct Faces {
      Index tail = 0;  // w[1:] in words(s, m - |a_1|)
      Index head = 0;  // w[:-1] in words(s, m - |a_last|)
      std::vector<std::pair<Index, Scalar>> merges;  // signed, in words(s, m)
    };
    std::map<std::pair<int, int>, std::vector<Faces>> faces;
    auto faces_of = [&](int s1, int m) -> const std::vector<Faces>& {
      auto key = std::make_pair(s1, m);
      auto it = faces.find(key);
      if (it != faces.end()) return it->second;
      std::vector<Faces> out;
      for (const auto& w : bw.get(s1, m)) {
        Faces f;
        f.tail = position(s1 - 1, m - w.front().weight, Word(w.begin() + 1, w.end()));
        f.head = position(s1 - 1, m - w.back().weight, Word(w.begin(), w.end() - 1));
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
          for (auto [k, c] : A.basis_product(w[i].weight, w[i].index, w[i + 1].weight, w[i + 1].index)) {
            Word merged(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            merged.push_back({w[i].weight + w[i + 1].weight, k});
            merged.insert(merged.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
            f.merges.emplace_back(position(s1 - 1, m, merged), F.mul(F.sign(static_cast<int>(i) + 1), c));
          }
        out.push_back(std::move(f));
      }
      return faces.emplace(key, std::move(out)).first->second;
    };

    for (int u = -total_bound; u <= total_bound + hom_bound; ++u) {
      // cochain basis of C^s_u: (word of weight m, value basis index in R_{m+u})
      std::vector<std::map<int, Index>> offsets(static_cast<std::size_t>(hom_bound) + 2);
      std::vector<Index> sizes(static_cast<std::size_t>(hom_bound) + 2, 0);
      for (int s = 0; s <= hom_bound + 1; ++s) {
        Index off = 0;
        for (int m = s * mw; m + u <= V; ++m) {
          if (m + u < 0) continue;
          offsets[static_cast<std::size_t>(s)][m] = off;
          off += static_cast<Index>(bw.get(s, m).size()) * A.dim(m + u);
        }
        sizes[static_cast<std::size_t>(s)] = off;
      }
      auto index_of = [&](int s, int m, Index pos, Index b) {
        const auto& o = offsets[static_cast<std::size_t>(s)];
        auto it = o.find(m);
        if (it == o.end()) return Index{-1};
        return it->second + pos * A.dim(m + u) + b;
      };
      std::vector<Index> ranks(static_cast<std::size_t>(hom_bound) + 3, 0);
      for (int s = 0; s <= hom_bound; ++s) {
        std::vector<SparseRow> rows(static_cast<std::size_t>(sizes[static_cast<std::size_t>(s)]));
        auto put = [&](Index source, Index target, Scalar c) {
          if (source >= 0 && c != 0) rows[static_cast<std::size_t>(source)].emplace_back(target, c);
        };
        for (int m = (s + 1) * mw; m + u <= V; ++m) {
          if (m + u < 0) continue;
          const auto& words = bw.get(s + 1, m);
          const auto& fs = faces_of(s + 1, m);
          const Index vdim = A.dim(m + u);
          for (std::size_t wi = 0; wi < words.size(); ++wi) {
            const Word& w = words[wi];
            const Faces& f = fs[wi];
            const Letter a1 = w.front();
            const Letter al = w.back();
            const Index tbase = index_of(s + 1, m, static_cast<Index>(wi), 0);
            // (-1)^{u|a1|} a1 f(a2..)
            const int vw = m - a1.weight + u;
            if (vw >= 0)
              for (Index b = 0; b < A.dim(vw); ++b)
                for (auto [k, c] : A.basis_product(a1.weight, a1.index, vw, b))
                  put(index_of(s, m - a1.weight, f.tail, b), tbase + k, F.mul(F.sign(u * a1.weight), c));
            // (-1)^i f(.. a_i a_{i+1} ..)
            for (auto [pos, c] : f.merges)
              for (Index b = 0; b < vdim; ++b) put(index_of(s, m, pos, b), tbase + b, c);
            // (-1)^{s+1} f(a1..a_s) a_{s+1}
            const int hw = m - al.weight + u;
            if (hw >= 0)
              for (Index b = 0; b < A.dim(hw); ++b)
                for (auto [k, c] : A.basis_product(hw, b, al.weight, al.index))
                  put(index_of(s, m - al.weight, f.head, b), tbase + k, F.mul(F.sign(s + 1), c));
          }
        }
        for (auto& r : rows) {
          std::sort(r.begin(), r.end());
          SparseRow merged;
          for (auto [k, v] : r) {
            if (!merged.empty() && merged.back().first == k) merged.back().second = F.add(merged.back().second, v);
            else merged.emplace_back(k, v);
          }
          std::erase_if(merged, [](const auto& e) { return e.second == 0; });
          r = std::move(merged);
        }
        ranks[static_cast<std::size_t>(s + 1)] = sparse_rank(rows, F);
      }
      for (int s = 0; s <= hom_bound; ++s) {
        if (std::abs(u - s) > total_bound) continue;
        const Index h = sizes[static_cast<std::size_t>(s)] - ranks[static_cast<std::size_t>(s + 1)] -
                        ranks[static_cast<std::size_t>(s)];
        dims.add(s, u, static_cast<int>(h));
      }
    }
    return dims;
  };

  const BigradedDimensions a = compute(v1);
  const BigradedDimensions b = compute(v2);
  out.truncation = v2;
  std::map<std::pair<int, int>, int> all = a.entries;
  for (const auto& [k, d] : b.entries) all.emplace(k, 0);
  for (const auto& [k, d] : all) {
    if (a.get(k.first, k.second) != b.get(k.first, k.second)) out.unstable.push_back(k);
    else out.dims.add(k.first, k.second, b.get(k.first, k.second));
  }
  return out;
}

Presentation enveloping_algebra(const Presentation& pres) {
  auto rename = [&](const std::string& suffix) {
    std::vector<Generator> gens = pres.generators();
    for (auto& g : gens) g.name += suffix;
    return Presentation(pres.field(), pres.orientation(), gens, pres.relations());
  };
  return Presentation::tensor(rename("_l"), rename("_r"));
}

BigradedDimensions tor_enveloping(const Presentation& pres, int weight_bound, int hom_bound) {
  const Presentation env = enveloping_algebra(pres);
  const int needed = std::max(env.max_generator_weight(), env.max_relation_weight());
  const FreeResolution res = minimal_resolution(env, hom_bound + 1, std::max(weight_bound, needed));
  const GradedAlgebra& E = res.algebra();
  GradedAlgebra A(pres, weight_bound);
  const PrimeField& F = A.field();
  const std::size_t ng = pres.num_generators();

  // multiplication R^e -> R on basis elements, per weight
  std::vector<Matrix> mu;
  for (int w = 0; w <= weight_bound; ++w) {
    Matrix m = Matrix::Zero(E.dim(w), A.dim(w));
    const auto& basis = E.basis(w);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Exponents left(basis[i].begin(), basis[i].begin() + static_cast<std::ptrdiff_t>(ng));
      Exponents right(basis[i].begin() + static_cast<std::ptrdiff_t>(ng), basis[i].end());
      auto prod = pres.multiply(left, right);
      if (!prod) continue;
      for (auto [k, c] : A.normal_form(prod->first)) m(static_cast<Index>(i), k) = F.mul(c, prod->second);
    }
    mu.push_back(std::move(m));
  }

  const int nstages = static_cast<int>(res.stages().size());
  auto weights = [&](int s) -> std::vector<int> {
    return s < nstages ? res.stage(s).generator_weights : std::vector<int>{};
  };
  auto dim_at = [&](int s, int n) {
    Index d = 0;
    for (int g : weights(s))
      if (g <= n) d += A.dim(n - g);
    return d;
  };
  auto boundary = [&](int s, int n) {
    const auto gs = weights(s);
    const auto hs = weights(s - 1);
    Matrix m = Matrix::Zero(dim_at(s, n), dim_at(s - 1, n));
    Index row = 0;
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (gs[j] > n) continue;
      const int rw = n - gs[j];
      std::vector<RowVector> images;
      for (std::size_t i = 0; i < hs.size(); ++i) {
        RowVector c = gs[j] >= hs[i] ? res.component(s, j, i) : RowVector();
        images.push_back(c.size() > 0 ? multiply_mod(c, mu[static_cast<std::size_t>(gs[j] - hs[i])], F) : RowVector());
      }
      for (Index b = 0; b < A.dim(rw); ++b, ++row) {
        RowVector r = RowVector::Zero(A.dim(rw));
        r(b) = 1;
        Index col = 0;
        for (std::size_t i = 0; i < hs.size(); ++i) {
          if (hs[i] > n) continue;
          const Index len = A.dim(n - hs[i]);
          if (images[i].size() > 0 && !images[i].isZero() && len > 0)
            m.row(row).segment(col, len) = A.multiply(rw, r, gs[j] - hs[i], images[i]);
          col += len;
        }
      }
    }
    return m;
  };

  BigradedDimensions out;
  for (int n = 0; n <= weight_bound; ++n) {
    std::vector<Index> ranks(static_cast<std::size_t>(hom_bound) + 2, 0);
    for (int s = 1; s <= hom_bound + 1; ++s) ranks[static_cast<std::size_t>(s)] = rank(boundary(s, n), F);
    for (int s = 0; s <= hom_bound; ++s) {
      const Index h = dim_at(s, n) - ranks[static_cast<std::size_t>(s)] - ranks[static_cast<std::size_t>(s + 1)];
      out.add(s, A.degree_of(n), static_cast<int>(h));
    }
  }
  return out;
}

DwyerMillerReport dwyer_miller_check(const Presentation& pres, int a, int total_bound, int hom_bound, int deg_bound) {
  DwyerMillerReport rep;
  const GorensteinCertificate cert = gorenstein_certificate(pres, hom_bound + 2, deg_bound);
  if (cert.verdict != Verdict::gorenstein) {
    rep.reason = "no Gorenstein certificate (" + to_string(cert.verdict) + ": " + cert.evidence + ")";
    return rep;
  }
  if (*cert.shift != a) {
    rep.reason = "certified shift is " + std::to_string(*cert.shift) + ", not " + std::to_string(a);
    return rep;
  }
  const FreeResolution res = minimal_resolution(pres, hom_bound + 2, deg_bound);
  if (!res.terminated()) {
    rep.reason = "HypothesisUnverified: the resolution of k does not terminate inside the window, so smallness is unchecked";
    return rep;
  }
  rep.applicable = true;
  rep.holds = true;
  const int sign = pres.orientation_sign();
  for (Coefficients coeff : {Coefficients::self, Coefficients::k}) {
    const auto co = hh_cohomology(pres, coeff, total_bound, hom_bound);
    const auto ho = hh_homology(pres, coeff, total_bound + std::abs(a) + hom_bound, hom_bound);
    std::map<int, int> upper = co.dims.by_total(-1);
    std::map<int, int> lower = ho.by_total(sign);
    std::set<int> shaky;
    for (const auto& [s, u] : co.unstable) shaky.insert(u - s);
    for (int n = -total_bound; n <= total_bound; ++n) {
      if (shaky.count(n)) continue;
      const int want = upper.count(n) ? upper.at(n) : 0;
      const int got = lower.count(n - a) ? lower.at(n - a) : 0;
      if (want != got) {
        rep.holds = false;
        rep.first_mismatch = n;
        rep.coefficients = coeff == Coefficients::self ? "R" : "k";
        return rep;
      }
    }
  }
  return rep;
}

HilbertSeries thh_prediction(const Presentation& pres, int window) {
  if (pres.orientation() != Orientation::connective)
    throw AlgebraError("Unsupported", "the prediction needs a connective presentation");
  const int needed = std::max(pres.max_generator_weight(), pres.max_relation_weight());
  const FreeResolution res = minimal_resolution(pres, window, std::max(window, needed));
  std::map<int, Scalar> dims;
  for (const auto& [k, d] : tor_dimensions(res).entries)
    if (k.first + k.second <= window) dims[k.first + k.second] += d;
  std::vector<int> den;
  for (std::size_t i = 0; i < pres.num_generators(); ++i)
    if (pres.exponent_cap(i) == 1) den.push_back(pres.weight(i) + 1);
  for (const auto& r : pres.relations()) den.push_back(pres.polynomial_weight(r) + 2);
  std::sort(den.begin(), den.end());
  HilbertSeries tor = reconstruct_series(dims, window, den, Orientation::connective);
  tor.denominator.push_back(2);
  std::sort(tor.denominator.begin(), tor.denominator.end());
  tor.closed_form = false;
  tor.canonicalize();
  return tor;
}

}  // namespace gdual
