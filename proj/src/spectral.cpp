#include "gdual/spectral.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "gdual/presentation_io.hpp"
#include "gdual/resolution.hpp"
#include "json.hpp"

namespace gdual {

namespace {

void add_scaled(Polynomial& acc, const Polynomial& f, Scalar c, const PrimeField& F) {
  for (const auto& [m, v] : f) {
    Scalar& slot = acc[m];
    slot = F.add(slot, F.mul(c, v));
    if (slot == 0) acc.erase(m);
  }
}

Bidegree operator+(Bidegree a, Bidegree b) { return {a.first + b.first, a.second + b.second}; }

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

E2Algebra::E2Algebra(const Presentation& q, const Presentation& s, int window) : q_(q), s_(s), window_(window) {
  if (!(q.field() == s.field())) throw AlgebraError("FieldMismatch", "Q and S are over different fields");
  if (q.orientation() != s.orientation()) throw AlgebraError("OrientationMismatch", "Q and S have opposite orientations");
  if (window < 0) throw AlgebraError("WindowTooSmall", "negative window");
  const bool connective = q.orientation() == Orientation::connective;
  const Presentation& first = connective ? q : s;
  const Presentation& second = connective ? s : q;
  auto t = Presentation::tensor(first, second);
  axis_.assign(first.num_generators(), 0);
  axis_.resize(t.num_generators(), 1);
  algebra_ = std::make_shared<const GradedAlgebra>(std::move(t), window);
  for (int n = 0; n <= window; ++n) {
    const auto& basis = algebra_->basis(n);
    for (std::size_t i = 0; i < basis.size(); ++i) cells_[bidegree(basis[i])].push_back(static_cast<Index>(i));
  }
}

Bidegree E2Algebra::bidegree(const Exponents& m) const {
  Bidegree b{0, 0};
  for (std::size_t i = 0; i < m.size(); ++i) (axis_[i] == 0 ? b.first : b.second) += m[i] * presentation().weight(i);
  return b;
}

Bidegree E2Algebra::shift(int r) const {
  return orientation_sign() > 0 ? Bidegree{-r, r - 1} : Bidegree{r, 1 - r};
}

const std::vector<Index>& E2Algebra::cell(Bidegree b) const {
  static const std::vector<Index> empty;
  auto it = cells_.find(b);
  return it == cells_.end() ? empty : it->second;
}

std::vector<Bidegree> E2Algebra::bidegrees() const {
  std::vector<Bidegree> out;
  for (const auto& [b, c] : cells_) out.push_back(b);
  return out;
}

Derivation::Derivation(std::shared_ptr<const E2Algebra> e2, const DifferentialSpec& spec) : e2_(std::move(e2)), r_(spec.r) {
  const Presentation& pres = e2_->presentation();
  if (r_ < 2) throw AlgebraError("BidegreeViolation", "differentials start on page 2");
  values_.resize(pres.num_generators());
  for (const auto& [name, target] : spec.assignments) {
    auto g = pres.find(name);
    if (!g) throw AlgebraError("UnknownGenerator", "no generator '" + name + "' on the E2 page");
    const std::string t = trim(target);
    Polynomial f = t.empty() || t == "0" ? Polynomial{} : pres.normalize(parse_polynomial(pres, t));
    Exponents unit(pres.num_generators(), 0);
    unit[*g] = 1;
    const Bidegree want = e2_->bidegree(unit) + e2_->shift(r_);
    for (const auto& [m, c] : f)
      if (e2_->bidegree(m) != want)
        throw AlgebraError("BidegreeViolation", "d_" + std::to_string(r_) + "(" + name + ") = " + t + " is not in bidegree (" +
                                                    std::to_string(want.first) + "," + std::to_string(want.second) + ")");
    values_[*g] = std::move(f);
  }
}

bool Derivation::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Polynomial& f) { return f.empty(); });
}

Polynomial Derivation::apply_monomial(const Exponents& m) const {
  const Presentation& pres = e2_->presentation();
  const PrimeField& F = pres.field();
  Polynomial out;
  int prefix_weight = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!values_[i].empty() && F.reduce(m[i]) != 0) {
      // x^e with x even (or p = 2) is central: D(x^e) = e x^{e-1} D(x)
      Exponents prefix(m.size(), 0), rest(m.size(), 0);
      for (std::size_t k = 0; k < i; ++k) prefix[k] = m[k];
      rest[i] = m[i] - 1;
      for (std::size_t k = i + 1; k < m.size(); ++k) rest[k] = m[k];
      Polynomial head{{prefix, F.mul(F.sign(prefix_weight), F.reduce(m[i]))}};
      Polynomial term = pres.multiply(pres.multiply(head, values_[i]), Polynomial{{rest, 1}});
      add_scaled(out, term, 1, F);
    }
    prefix_weight += m[i] * pres.weight(i);
  }
  return out;
}

Polynomial Derivation::apply(const Polynomial& f) const {
  const PrimeField& F = e2_->presentation().field();
  Polynomial out;
  for (const auto& [m, c] : f) add_scaled(out, apply_monomial(m), c, F);
  return out;
}

Matrix Derivation::matrix(Bidegree b) const {
  const GradedAlgebra& A = e2_->algebra();
  const auto& src = e2_->cell(b);
  const Bidegree tb = b + e2_->shift(r_);
  const auto& dst = e2_->cell(tb);
  Matrix m = Matrix::Zero(static_cast<Index>(src.size()), static_cast<Index>(dst.size()));
  if (dst.empty() || is_zero()) return m;
  const int n = b.first + b.second;
  const int tn = tb.first + tb.second;
  const auto& basis = A.basis(n);
  for (std::size_t i = 0; i < src.size(); ++i) {
    Polynomial img = apply_monomial(basis[static_cast<std::size_t>(src[i])]);
    if (img.empty()) continue;
    RowVector v = A.normal_form(img, tn);
    for (std::size_t j = 0; j < dst.size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = v(dst[j]);
  }
  return m;
}

bool Derivation::respects_relations() const {
  const Presentation& pres = e2_->presentation();
  const GradedAlgebra& A = e2_->algebra();
  const int step = e2_->orientation_sign() > 0 ? -1 : 1;
  for (const auto& rel : pres.relations()) {
    const int w = pres.polynomial_weight(rel) + step;
    if (w < 0 || w > A.bound()) continue;
    Polynomial img = apply(rel);
    if (!img.empty() && !A.normal_form(img, w).isZero()) return false;
  }
  return true;
}

SpectralPage SpectralPage::e2(std::shared_ptr<const E2Algebra> e2) {
  SpectralPage page;
  page.e2_ = std::move(e2);
  for (Bidegree b : page.e2_->bidegrees()) {
    const auto& cell = page.e2_->cell(b);
    const Index k = static_cast<Index>(cell.size());
    PageCell pc;
    pc.cycles = Matrix::Identity(k, k);
    pc.boundaries = Matrix::Zero(0, k);
    const auto& basis = page.e2_->algebra().basis(b.first + b.second);
    for (Index i : cell) pc.labels.push_back(basis[static_cast<std::size_t>(i)]);
    page.cells_.emplace(b, std::move(pc));
  }
  return page;
}

int SpectralPage::dim(Bidegree b) const {
  auto it = cells_.find(b);
  return it == cells_.end() ? 0 : it->second.dim();
}

bool SpectralPage::reliable(Bidegree b) const { return b.first + b.second < e2_->window(); }

BigradedDimensions SpectralPage::dimensions(bool reliable_only) const {
  BigradedDimensions out;
  for (const auto& [b, c] : cells_)
    if (!reliable_only || reliable(b)) out.add(b.first, b.second, c.dim());
  return out;
}

std::map<int, int> SpectralPage::total_dimensions() const {
  std::map<int, int> out;
  const int sign = e2_->orientation_sign();
  for (int w = 0; w < e2_->window(); ++w) out[sign * w] = 0;
  for (const auto& [b, c] : cells_)
    if (reliable(b)) out[sign * (b.first + b.second)] += c.dim();
  return out;
}

bool SpectralPage::contains(const Polynomial& f) const {
  const Presentation& pres = e2_->presentation();
  Polynomial g = pres.normalize(f);
  if (g.empty()) return true;
  const int n = pres.polynomial_weight(g);
  if (n > e2_->window()) throw AlgebraError("WindowTooSmall", "element beyond the page window");
  const RowVector v = e2_->algebra().normal_form(g, n);
  const PrimeField& F = pres.field();
  for (const auto& [b, c] : cells_) {
    if (b.first + b.second != n) continue;
    const auto& cell = e2_->cell(b);
    RowVector local(static_cast<Index>(cell.size()));
    for (std::size_t j = 0; j < cell.size(); ++j) local(static_cast<Index>(j)) = v(cell[j]);
    if (local.isZero()) continue;
    Subspace z(local.size(), F);
    for (Index i = 0; i < c.cycles.rows(); ++i) z.insert(c.cycles.row(i));
    if (!z.contains(local)) return false;
  }
  return true;
}

SpectralPage SpectralPage::turn(const Derivation& d) const {
  if (d.page() != r_)
    throw AlgebraError("BidegreeViolation", "d_" + std::to_string(d.page()) + " applied to page " + std::to_string(r_));
  SpectralPage next;
  next.e2_ = e2_;
  next.r_ = r_ + 1;
  if (d.is_zero()) {
    next.cells_ = cells_;
    return next;
  }
  const PrimeField& F = e2_->presentation().field();
  const Bidegree shift = e2_->shift(r_);
  auto subspace = [&](const Matrix& rows, Index ambient) {
    Subspace sp(ambient, F);
    for (Index i = 0; i < rows.rows(); ++i) sp.insert(rows.row(i));
    return sp;
  };
  auto where = [](Bidegree b) {
    return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
  };

  std::map<Bidegree, Matrix> dmat;
  for (const auto& [b, c] : cells_) dmat.emplace(b, d.matrix(b));

  std::map<Bidegree, Subspace> new_boundaries;
  for (const auto& [b, c] : cells_) new_boundaries.emplace(b, subspace(c.boundaries, c.cycles.cols()));

  for (const auto& [b, c] : cells_) {
    const Bidegree tb = b + shift;
    auto tit = cells_.find(tb);
    PageCell out;
    out.cycles = c.cycles;
    if (tit != cells_.end() && dmat.at(b).cols() > 0) {
      const PageCell& tc = tit->second;
      const Matrix& M = dmat.at(b);
      const Index tdim = M.cols();
      const Subspace tz = subspace(tc.cycles, tdim);
      const Subspace tbnd = subspace(tc.boundaries, tdim);
      Matrix images(c.cycles.rows(), tdim);
      for (Index i = 0; i < c.cycles.rows(); ++i) {
        images.row(i) = multiply_mod(c.cycles.row(i), M, F);
        if (!tz.contains(images.row(i)))
          throw AlgebraError("LeibnizInconsistent", "d_" + std::to_string(r_) + " leaves the cycles at " + where(tb));
      }
      for (Index i = 0; i < c.boundaries.rows(); ++i)
        if (!tbnd.contains(multiply_mod(c.boundaries.row(i), M, F)))
          throw AlgebraError("LeibnizInconsistent", "d_" + std::to_string(r_) + " does not preserve boundaries at " + where(b));
      auto t2 = dmat.find(tb);
      auto ttc = cells_.find(tb + shift);
      if (t2 != dmat.end() && ttc != cells_.end() && t2->second.cols() > 0) {
        const Subspace ttb = subspace(ttc->second.boundaries, t2->second.cols());
        for (Index i = 0; i < images.rows(); ++i)
          if (!ttb.contains(multiply_mod(images.row(i), t2->second, F)))
            throw AlgebraError("LeibnizInconsistent", "d_" + std::to_string(r_) + " squared is nonzero on " + where(b));
      }
      // cycles: combinations whose image is a boundary
      Matrix stacked(images.rows() + tc.boundaries.rows(), tdim);
      stacked << images, tc.boundaries;
      Matrix ker = left_kernel(stacked, F);
      Matrix combos = ker.leftCols(c.cycles.rows());
      Matrix z(combos.rows(), c.cycles.cols());
      for (Index i = 0; i < combos.rows(); ++i) z.row(i) = multiply_mod(combos.row(i), c.cycles, F);
      Echelon ech = row_reduce(z, F);
      out.cycles = ech.rows.topRows(ech.rank());
      Subspace& nb = new_boundaries.at(tb);
      for (Index i = 0; i < images.rows(); ++i) nb.insert(images.row(i));
    }
    next.cells_.emplace(b, std::move(out));
  }

  for (auto& [b, pc] : next.cells_) {
    const Subspace& nb = new_boundaries.at(b);
    const Index k = pc.cycles.cols();
    pc.boundaries = Matrix(nb.dimension(), k);
    for (Index i = 0; i < nb.dimension(); ++i) pc.boundaries.row(i) = nb.basis()[static_cast<std::size_t>(i)];
    Matrix rem(pc.cycles.rows(), k);
    for (Index i = 0; i < pc.cycles.rows(); ++i) rem.row(i) = nb.reduce(pc.cycles.row(i));
    Echelon ech = row_reduce(rem, F);
    const auto& basis = e2_->algebra().basis(b.first + b.second);
    const auto& cell = e2_->cell(b);
    for (Index piv : ech.pivots) pc.labels.push_back(basis[static_cast<std::size_t>(cell[static_cast<std::size_t>(piv)])]);
  }
  return next;
}

std::string SpectralPage::chart() const {
  int smax = 0, tmax = 0;
  for (const auto& [b, c] : cells_)
    if (c.dim() > 0) {
      smax = std::max(smax, b.first);
      tmax = std::max(tmax, b.second);
    }
  std::ostringstream os;
  os << "E_" << r_ << "  (s across, t up; window " << e2_->window() << ")\n";
  for (int t = tmax; t >= 0; --t) {
    os << (t < 10 ? " " : "") << t << " |";
    for (int s = 0; s <= smax; ++s) {
      const int dm = dim({s, t});
      os << ' ' << (dm == 0 ? "." : std::to_string(dm));
    }
    os << '\n';
  }
  os << "   +";
  for (int s = 0; s <= smax; ++s) os << "--";
  os << '\n';
  return os.str();
}

std::string SpectralPage::to_json() const {
  const Presentation& pres = e2_->presentation();
  nlohmann::ordered_json j;
  j["page"] = r_;
  j["orientation"] = pres.orientation() == Orientation::connective ? "connective" : "coconnective";
  j["window"] = e2_->window();
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [b, c] : cells_) {
    if (c.dim() == 0) continue;
    nlohmann::ordered_json e;
    e["s"] = b.first;
    e["t"] = b.second;
    e["dim"] = c.dim();
    e["reliable"] = reliable(b);
    auto labels = nlohmann::ordered_json::array();
    for (const auto& m : c.labels) labels.push_back(print_monomial(pres, m));
    e["labels"] = labels;
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j.dump(2);
}

std::shared_ptr<const E2Algebra> build_e2(const Presentation& q, const Presentation& s, int window) {
  return std::make_shared<const E2Algebra>(q, s, window);
}

SpectralPage apply_and_turn(const SpectralPage& page, const DifferentialSpec& spec) {
  if (spec.r < page.r())
    throw AlgebraError("BidegreeViolation", "d_" + std::to_string(spec.r) + " given on page " + std::to_string(page.r()));
  SpectralPage cur = page;
  while (cur.r() < spec.r) cur = cur.turn(Derivation(cur.algebra_ptr(), DifferentialSpec{cur.r(), {}}));
  Derivation d(cur.algebra_ptr(), spec);
  if (!d.respects_relations())
    throw AlgebraError("LeibnizInconsistent", "d_" + std::to_string(spec.r) + " does not kill the relations");
  const Presentation& pres = cur.algebra().presentation();
  for (const auto& [name, target] : spec.assignments) {
    Exponents e(pres.num_generators(), 0);
    e[*pres.find(name)] = 1;
    if (pres.weight(e) <= cur.algebra().window() && !cur.contains(Polynomial{{e, 1}}))
      throw AlgebraError("NotOnPage", name + " does not survive to page " + std::to_string(spec.r));
  }
  return cur.turn(d);
}

ScheduleResult run_schedule(const Presentation& q, const Presentation& s, const std::vector<DifferentialSpec>& specs,
                            int window) {
  ScheduleResult res;
  res.history.push_back(SpectralPage::e2(build_e2(q, s, window)));
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i > 0 && specs[i].r <= specs[i - 1].r)
      throw AlgebraError("BidegreeViolation", "schedule pages must increase");
    res.history.push_back(apply_and_turn(res.history.back(), specs[i]));
  }
  return res;
}

std::vector<FrobeniusReport> frobenius_survival(const E2Algebra& e2) {
  const Presentation& s = e2.s();
  auto top = artinian_top(s);
  if (!top) throw AlgebraError("InfiniteRange", "pi_*(S) is not in a finite range of degrees");
  const int width = *top + 1;
  const Scalar p = s.field().p();
  std::int64_t exponent = 1;
  for (int i = 1; i < width; ++i) {
    if (exponent > (std::int64_t{1} << 50)) throw AlgebraError("Overflow", "survival exponent too large");
    exponent *= p;
  }
  std::vector<FrobeniusReport> out;
  const Presentation& q = e2.q();
  for (std::size_t i = 0; i < q.num_generators(); ++i) {
    const Generator& g = q.generators()[i];
    if (g.kind != GeneratorKind::polynomial) continue;
    FrobeniusReport rep;
    rep.generator = g.name;
    rep.width = width;
    rep.exponent = exponent;
    std::ostringstream os;
    os << "d_r(" << g.name << "^" << p << ") = " << p << "*" << g.name;
    if (p > 2) os << "^" << p - 1;
    os << "*d_r(" << g.name
       << ") = 0; S spans " << width << " degrees, so only d_2..d_" << width << " can be nonzero and " << g.name << "^"
       << exponent << " survives";
    rep.derivation = os.str();
    out.push_back(std::move(rep));
  }
  return out;
}

ConvergenceReport convergence_check(const std::map<int, int>& e_infinity, const std::map<int, int>& target) {
  std::vector<int> degrees;
  for (const auto& [n, d] : e_infinity) degrees.push_back(n);
  std::sort(degrees.begin(), degrees.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
  ConvergenceReport rep;
  for (int n : degrees) {
    auto it = target.find(n);
    const int want = it == target.end() ? 0 : it->second;
    const int got = e_infinity.at(n);
    if (want != got) {
      rep.matches = false;
      rep.first_mismatch = n;
      rep.expected = want;
      rep.found = got;
      break;
    }
  }
  return rep;
}

ConvergenceReport convergence_check(const SpectralPage& e_infinity, const HilbertSeries& target) {
  const int sign = e_infinity.algebra().orientation_sign();
  std::map<int, int> want;
  for (const auto& [w, c] : target.expand(e_infinity.algebra().window())) want[sign * w] = static_cast<int>(c);
  return convergence_check(e_infinity.total_dimensions(), want);
}

Schedule parse_schedule(std::string_view text, const std::string& base_dir) {
  std::optional<Presentation> q, s;
  Schedule out{"", Presentation(PrimeField(2), Orientation::connective, {}), Presentation(PrimeField(2), Orientation::connective, {}), 40, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto resolve = [&](const std::string& rel) { return (std::filesystem::path(base_dir) / rel).string(); };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw AlgebraError("ParseError", "schedule line " + std::to_string(lineno) + ": " + msg);
    };
    if (t.front() == '[') {
      int r = 0;
      if (std::sscanf(t.c_str(), "[page %d]", &r) != 1) fail("expected '[page r]'");
      out.specs.push_back(DifferentialSpec{r, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!out.specs.empty()) {
      out.specs.back().assignments.emplace_back(key, value);
    } else if (key == "name") {
      out.name = value;
    } else if (key == "q") {
      q = load_presentation(resolve(value));
    } else if (key == "s") {
      s = load_presentation(resolve(value));
    } else if (key == "window") {
      try {
        out.window = std::stoi(value);
      } catch (const std::exception&) {
        fail("bad window '" + value + "'");
      }
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!q || !s) throw AlgebraError("ParseError", "schedule needs both 'q' and 's'");
  out.q = *q;
  out.s = *s;
  return out;
}

Schedule load_schedule(const std::string& path) {
  return parse_schedule(read_file(path), std::filesystem::path(path).parent_path().string());
}

}  // namespace gdual
