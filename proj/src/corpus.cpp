#include "gdual/corpus.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

#include "gdual/duality.hpp"
#include "gdual/presentation_io.hpp"
#include "gdual/shift_ledger.hpp"
#include "gdual/spectral.hpp"

namespace gdual {

namespace {

constexpr int kDefaultHom = 12;
constexpr int kDefaultDeg = 48;

std::string strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

/// "1 + t^3 - 2t^5 / 2 6" -> numerator, denominator degrees
std::pair<LaurentPoly, std::vector<int>> parse_series_spec(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = strip(text.substr(0, slash));
  std::vector<int> den;
  if (slash != std::string::npos)
    for (const auto& w : split_ws(text.substr(slash + 1))) den.push_back(std::stoi(w));
  LaurentPoly p;
  std::string term;
  auto flush = [&](const std::string& raw) {
    std::string t;
    for (char c : raw)
      if (c != ' ' && c != '*') t.push_back(c);
    if (t.empty()) return;
    Scalar sign = 1;
    if (t[0] == '+' || t[0] == '-') {
      sign = t[0] == '-' ? -1 : 1;
      t = t.substr(1);
    }
    const auto tpos = t.find('t');
    Scalar c = 1;
    int e = 0;
    if (tpos == std::string::npos) {
      c = std::stoll(t);
    } else {
      if (tpos > 0) c = std::stoll(t.substr(0, tpos));
      e = 1;
      if (t.size() > tpos + 1) {
        if (t[tpos + 1] != '^') throw AlgebraError("ParseError", "bad series term '" + raw + "'");
        e = std::stoi(t.substr(tpos + 2));
      }
    }
    p += LaurentPoly::monomial(e, sign * c);
  };
  for (std::size_t i = 0; i < num.size(); ++i) {
    const char c = num[i];
    if ((c == '+' || c == '-') && i > 0 && num[i - 1] != '^') {
      flush(term);
      term.clear();
    }
    term.push_back(c);
  }
  flush(term);
  return {p, den};
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

std::string to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::theorem: return "theorem";
    case EntryStatus::conjecture: return "conjecture";
    case EntryStatus::variant: return "variant";
  }
  return "?";
}

CorpusEntry parse_entry(std::string_view text, const std::filesystem::path& file) {
  CorpusEntry e;
  e.file = file;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fail = [&](const std::string& msg) {
      throw AlgebraError("ParseError", file.string() + ":" + std::to_string(lineno) + ": " + msg);
    };
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("expected '='");
    const auto lhs = split_ws(t.substr(0, eq));
    std::string rhs = strip(t.substr(eq + 1));
    if (lhs.empty()) fail("missing key");
    const std::string& key = lhs[0];
    if (key == "expect" || key == "expect[variant]") {
      if (lhs.size() != 3) fail("expected 'expect <check> <subject> = <value> \"<citation>\"'");
      Expectation x;
      x.variant = key == "expect[variant]";
      x.check = lhs[1];
      x.subject = lhs[2];
      const auto q = rhs.find('"');
      if (q == std::string::npos || rhs.back() != '"' || rhs.size() - q < 3) fail("every expectation needs a citation");
      x.value = strip(rhs.substr(0, q));
      x.citation = rhs.substr(q + 1, rhs.size() - q - 2);
      e.expectations.push_back(std::move(x));
    } else if (key == "ring") {
      if (lhs.size() != 2) fail("expected 'ring <label> = <path>'");
      e.rings.emplace_back(lhs[1], rhs);
    } else if (key == "schedule") {
      if (lhs.size() != 2) fail("expected 'schedule <label> = <path> -> <ring>'");
      const auto arrow = rhs.find("->");
      if (arrow == std::string::npos) fail("schedule needs a target ring");
      e.schedules.push_back({lhs[1], strip(rhs.substr(0, arrow)), strip(rhs.substr(arrow + 2))});
    } else if (lhs.size() != 1) {
      fail("unexpected words before '='");
    } else if (key == "name") {
      e.name = rhs;
    } else if (key == "status") {
      if (rhs == "theorem") e.status = EntryStatus::theorem;
      else if (rhs == "conjecture") e.status = EntryStatus::conjecture;
      else if (rhs == "variant") e.status = EntryStatus::variant;
      else fail("unknown status '" + rhs + "'");
    } else if (key == "modeled") {
      if (rhs != "yes" && rhs != "no") fail("modeled is yes or no");
      e.modeled = rhs == "yes";
    } else if (key == "provenance") {
      e.provenance = rhs;
    } else if (key == "alternatives") {
      std::string cur;
      std::istringstream as(rhs);
      while (std::getline(as, cur, ','))
        if (!strip(cur).empty()) e.alternatives.push_back(strip(cur));
    } else if (key == "note") {
      e.notes.push_back(rhs);
    } else if (key == "window") {
      const auto w = split_ws(rhs);
      if (w.size() != 2) fail("window is '<hom_bound> <deg_bound>'");
      e.hom_bound = std::stoi(w[0]);
      e.deg_bound = std::stoi(w[1]);
    } else if (key == "ledger") {
      e.ledgers.push_back(rhs);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (e.name.empty()) throw AlgebraError("ParseError", file.string() + ": entry has no name");
  if (e.provenance.empty()) throw AlgebraError("ParseError", file.string() + ": entry has no provenance");
  if (e.status == EntryStatus::variant && e.alternatives.size() < 2)
    throw AlgebraError("ParseError", file.string() + ": variant entries list all alternatives");
  return e;
}

CorpusEntry load_entry(const std::filesystem::path& path) { return parse_entry(read_file(path.string()), path); }

EntryReport verify_entry(const CorpusEntry& entry, const std::filesystem::path& root, const CorpusOptions& options) {
  EntryReport rep;
  rep.name = entry.name;
  rep.status = entry.status;
  rep.modeled = entry.modeled;
  rep.provenance = entry.provenance;
  rep.alternatives = entry.alternatives;
  rep.notes = entry.notes;
  const bool theorem = entry.status == EntryStatus::theorem;
  const int hom = options.hom_bound.value_or(entry.hom_bound.value_or(kDefaultHom));
  const int deg = options.deg_bound.value_or(entry.deg_bound.value_or(kDefaultDeg));

  std::map<std::string, Presentation> rings;
  for (const auto& [label, path] : entry.rings) {
    try {
      rings.emplace(label, load_presentation((root / path).string()));
    } catch (const std::exception& ex) {
      rep.errors.push_back("ring " + label + ": " + ex.what());
      CheckResult c;
      c.check = "parse";
      c.subject = path;
      c.expected = "parses";
      c.found = ex.what();
      c.gating = theorem;
      rep.checks.push_back(std::move(c));
    }
  }
  auto ring = [&](const std::string& label) -> const Presentation& {
    auto it = rings.find(label);
    if (it == rings.end()) throw AlgebraError("UnknownRing", "no ring labelled '" + label + "'");
    return it->second;
  };

  std::map<std::string, GorensteinCertificate> certs;
  auto certificate = [&](const std::string& label) -> const GorensteinCertificate& {
    auto it = certs.find(label);
    if (it != certs.end()) return it->second;
    const Presentation& p = ring(label);
    GorensteinCertificate c = options.cache ? gorenstein_certificate(options.cache->resolve(p, hom, deg))
                                            : gorenstein_certificate(p, hom, deg);
    return certs.emplace(label, std::move(c)).first->second;
  };

  std::optional<LedgerSolution> solution;
  auto ledger = [&]() -> const LedgerSolution& {
    if (!solution) {
      std::vector<ShiftLedger> parts;
      for (const auto& path : entry.ledgers) parts.push_back(load_ledger((root / path).string()));
      solution = solve(merge_ledgers(parts));
      rep.ledger_traces.push_back(Json::parse(solution->to_json()));
    }
    return *solution;
  };

  auto add = [&](CheckResult c, bool variant_tag) {
    c.gating = theorem && entry.modeled && !variant_tag;
    rep.checks.push_back(std::move(c));
  };

  if (!entry.modeled) {
    CheckResult c;
    c.check = "not_modeled";
    c.subject = entry.name;
    c.expected = "-";
    c.found = "-";
    c.pass = true;
    c.detail = "recorded claim only; no presentation to verify";
    add(std::move(c), true);
  }

  for (const auto& x : entry.expectations) {
    CheckResult c;
    c.check = x.check;
    c.subject = x.subject;
    c.expected = x.value;
    c.citation = x.citation;
    try {
      if (x.check == "certificate") {
        const auto& cert = certificate(x.subject);
        c.found = cert.shift ? std::to_string(*cert.shift) : to_string(cert.verdict);
        c.detail = cert.method + ": " + cert.evidence + " (hom_bound " + std::to_string(cert.hom_bound) +
                   ", deg_bound " + std::to_string(cert.deg_bound) + ")";
      } else if (x.check == "structural") {
        c.found = std::to_string(structural_shift(ring(x.subject)));
        c.detail = "sum of exterior degrees - sum of (polynomial degree + 1) + socle degree";
      } else if (x.check == "socle") {
        const auto soc = socle(ring(x.subject));
        if (soc.size() == 1) {
          c.found = std::to_string(soc[0].degree);
          c.detail = "one-dimensional socle: " + print_polynomial(ring(x.subject), Polynomial(soc[0].terms.begin(), soc[0].terms.end()));
        } else {
          c.found = std::to_string(soc.size()) + "-dimensional socle";
        }
      } else if (x.check == "converges") {
        auto it = std::find_if(entry.schedules.begin(), entry.schedules.end(), [&](const auto& s) { return s.label == x.subject; });
        if (it == entry.schedules.end()) throw AlgebraError("UnknownSchedule", "no schedule labelled '" + x.subject + "'");
        const Schedule sched = load_schedule((root / it->path).string());
        const auto result = run_schedule(sched.q, sched.s, sched.specs, sched.window);
        const auto target = hilbert_series(ring(it->target), sched.window);
        const auto conv = convergence_check(result.final_page(), target);
        c.found = conv.matches ? "yes" : "no";
        std::ostringstream d;
        d << "E_" << (result.history.size() + 1) << " against " << it->target << " " << target.to_string()
          << " through total degree " << sched.window;
        if (conv.first_mismatch)
          d << "; first mismatch in degree " << *conv.first_mismatch << ": expected " << conv.expected << ", found " << conv.found;
        c.detail = d.str();
      } else if (x.check == "ledger") {
        const auto& sol = ledger();
        auto v = sol.values.find(x.subject);
        c.found = v == sol.values.end() ? "unresolved" : std::to_string(v->second);
        for (const auto& step : sol.trace)
          if (step.node == x.subject) c.detail = step.rule + ": " + step.explanation;
      } else if (x.check == "consistent") {
        const auto& sol = ledger();
        c.found = sol.consistent() ? "yes" : "no";
        std::vector<std::string> conflicts;
        for (const auto& k : sol.conflicts) conflicts.push_back(k.description);
        c.detail = std::to_string(sol.values.size()) + " shifts solved, " + std::to_string(sol.unresolved.size()) +
                   " unresolved" + (conflicts.empty() ? "" : "; " + join(conflicts, "; "));
      } else if (x.check == "series") {
        const auto [num, den] = parse_series_spec(x.value);
        const auto want = expand_rational(num, den, deg);
        const auto basis = enumerate_basis(ring(x.subject), deg);
        int mismatch = -1;
        for (int n = 0; n <= deg; ++n) {
          auto w = want.find(n);
          const Scalar a = w == want.end() ? 0 : w->second;
          if (a != basis.dim(n)) {
            mismatch = n;
            break;
          }
        }
        c.found = mismatch < 0 ? x.value : "differs in degree " + std::to_string(mismatch);
        c.detail = "dimensions compared through degree " + std::to_string(deg);
      } else if (x.check == "functional_equation") {
        const auto series = hilbert_series(ring(x.subject), deg);
        const auto fe = functional_equation(series, series.krull_dimension());
        c.found = fe ? std::to_string(fe->epsilon) + " " + std::to_string(fe->exponent) : "no solution";
        c.detail = series.to_string();
      } else {
        throw AlgebraError("UnknownCheck", "unknown check '" + x.check + "'");
      }
      c.pass = c.found == c.expected;
    } catch (const std::exception& ex) {
      c.found = std::string("error: ") + ex.what();
      c.pass = false;
    }
    add(std::move(c), x.variant);
  }

  // every modeled ring: the sign of the functional equation is (-1)^r and (epsilon, e) is window-stable
  if (entry.modeled && entry.status != EntryStatus::conjecture) {
    for (const auto& [label, pres] : rings) {
      CheckResult c;
      c.check = "functional_equation_sign";
      c.subject = label;
      c.citation = "Gorenstein Hilbert series: p(1/t) = (-1)^r t^{r-a} p(t)";
      try {
        const auto shape = tensor_shape(pres);
        const auto s1 = hilbert_series(pres, deg);
        const int r = shape ? static_cast<int>(shape->polynomial.size()) : s1.krull_dimension();
        const auto s2 = hilbert_series(pres, 2 * deg);
        const auto f1 = functional_equation(s1, r);
        const auto f2 = functional_equation(s2, r);
        c.expected = std::to_string(r % 2 ? -1 : 1);
        if (!f1 || !f2) {
          c.found = "no solution";
        } else if (f1->epsilon != f2->epsilon || f1->exponent != f2->exponent) {
          c.found = "unstable under window growth";
        } else {
          c.found = std::to_string(f1->epsilon);
          Json row;
          row["ring"] = label;
          row["series"] = s1.to_string();
          row["r"] = f1->krull_dim;
          row["epsilon"] = f1->epsilon;
          row["e"] = f1->exponent;
          row["series_a"] = f1->series_a;
          std::optional<int> shift;
          try {
            shift = certificate(label).shift;
          } catch (const std::exception&) {
          }
          row["ext_shift"] = shift ? Json(*shift) : Json(nullptr);
          row["discrepancy"] = shift ? Json(f1->series_a - *shift) : Json(nullptr);
          rep.functional_equations.push_back(row);
          c.detail = "r = " + std::to_string(r) + ", e = " + std::to_string(f1->exponent) + ", stable from deg " +
                     std::to_string(deg) + " to " + std::to_string(2 * deg);
        }
        c.pass = c.found == c.expected;
      } catch (const std::exception& ex) {
        c.found = std::string("error: ") + ex.what();
      }
      add(std::move(c), false);
    }
  }
  return rep;
}

std::filesystem::path default_corpus_dir() { return GDUAL_CORPUS_DIR; }

CorpusReport corpus_verify(const std::filesystem::path& root, const CorpusOptions& options) {
  std::vector<std::filesystem::path> files;
  const auto dir = root / "entries";
  if (!std::filesystem::is_directory(dir)) throw AlgebraError("ParseError", "no entries directory under " + root.string());
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".entry") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  auto run = [&](const std::filesystem::path& f) -> std::optional<EntryReport> {
    CorpusEntry entry;
    try {
      entry = load_entry(f);
    } catch (const std::exception& ex) {
      EntryReport bad;
      bad.name = f.stem().string();
      bad.errors.push_back(ex.what());
      CheckResult c;
      c.check = "parse";
      c.subject = f.filename().string();
      c.expected = "parses";
      c.found = ex.what();
      c.gating = true;
      bad.checks.push_back(c);
      return bad;
    }
    if (fnmatch(options.filter.c_str(), entry.name.c_str(), 0) != 0) return std::nullopt;
    return verify_entry(entry, root, options);
  };

  std::vector<std::optional<EntryReport>> results(files.size());
  if (options.parallel) {
    std::vector<std::future<std::optional<EntryReport>>> jobs;
    for (const auto& f : files) jobs.push_back(std::async(std::launch::async, run, f));
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < files.size(); ++i) results[i] = run(files[i]);
  }
  CorpusReport report;
  for (auto& r : results)
    if (r) report.entries.push_back(std::move(*r));
  std::stable_sort(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return report;
}

bool CorpusReport::theorems_pass() const {
  for (const auto& e : entries)
    for (const auto& c : e.checks)
      if (c.gating && !c.pass) return false;
  return true;
}

Json CorpusReport::to_json() const {
  Json j = report_header("corpus verify");
  j["theorems_pass"] = theorems_pass();
  auto es = Json::array();
  for (const auto& e : entries) {
    Json je;
    je["name"] = e.name;
    je["status"] = to_string(e.status);
    je["modeled"] = e.modeled;
    je["provenance"] = e.provenance;
    if (!e.alternatives.empty()) je["alternatives"] = e.alternatives;
    if (!e.notes.empty()) je["notes"] = e.notes;
    auto cs = Json::array();
    for (const auto& c : e.checks) {
      Json jc;
      jc["check"] = c.check;
      jc["subject"] = c.subject;
      jc["expected"] = c.expected;
      jc["found"] = c.found;
      jc["pass"] = c.pass;
      jc["gating"] = c.gating;
      jc["citation"] = c.citation;
      jc["detail"] = c.detail;
      cs.push_back(jc);
    }
    je["checks"] = cs;
    if (!e.functional_equations.empty()) je["functional_equations"] = e.functional_equations;
    if (!e.ledger_traces.empty()) je["ledger"] = e.ledger_traces.front();
    if (!e.errors.empty()) je["errors"] = e.errors;
    es.push_back(je);
  }
  j["entries"] = es;
  return j;
}

std::string CorpusReport::to_markdown() const {
  std::ostringstream os;
  os << "# corpus verify\n\n";
  os << "Theorem checks: " << (theorems_pass() ? "all pass" : "FAILURES") << "\n\n";
  os << "| entry | status | check | subject | expected | found | result |\n|---|---|---|---|---|---|---|\n";
  for (const auto& e : entries)
    for (const auto& c : e.checks)
      os << "| " << e.name << " | " << to_string(e.status) << (e.modeled ? "" : " (not modeled)") << " | " << c.check
         << " | " << c.subject << " | " << c.expected << " | " << c.found << " | "
         << (c.pass ? "pass" : c.gating ? "FAIL" : "fail (non-gating)") << " |\n";
  os << "\n## Functional equations\n\n| entry | series | r | epsilon | e | series_a | Ext shift | discrepancy |\n|---|---|---|---|---|---|---|---|\n";
  for (const auto& e : entries)
    for (const auto& f : e.functional_equations)
      os << "| " << e.name << "/" << f["ring"].get<std::string>() << " | " << f["series"].get<std::string>() << " | "
         << f["r"].dump() << " | " << f["epsilon"].dump() << " | " << f["e"].dump() << " | " << f["series_a"].dump()
         << " | " << f["ext_shift"].dump() << " | " << f["discrepancy"].dump() << " |\n";
  for (const auto& e : entries) {
    if (e.errors.empty()) continue;
    os << "\n## Errors in " << e.name << "\n\n";
    for (const auto& err : e.errors) os << "- " << err << "\n";
  }
  return os.str();
}

}  // namespace gdual
