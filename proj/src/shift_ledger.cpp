#include "gdual/shift_ledger.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "gdual/presentation_io.hpp"
#include "gdual/prime_field.hpp"
#include "json.hpp"

namespace gdual {

namespace {

struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d = 1) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool zero() const { return num == 0; }
  Fraction operator-(const Fraction& o) const { return {num * o.den - o.num * den, den * o.den}; }
  Fraction operator*(const Fraction& o) const { return {num * o.num, den * o.den}; }
  Fraction operator/(const Fraction& o) const { return {num * o.den, den * o.num}; }
};

struct Equation {
  std::map<std::string, int> coeffs;  // sum coeffs * shift = rhs
  int rhs = 0;
  std::size_t relation = 0;
};

Equation equation_of(const LedgerRelation& r, std::size_t index) {
  Equation e;
  e.relation = index;
  auto add = [&](const std::string& n, int c) {
    e.coeffs[n] += c;
    if (e.coeffs[n] == 0) e.coeffs.erase(n);
  };
  switch (r.kind) {
    case RelationKind::known:
      add(r.nodes[0], 1);
      e.rhs = r.value;
      break;
    case RelationKind::cofibre:  // R - S - Q = 0
      add(r.nodes[1], 1);
      add(r.nodes[0], -1);
      add(r.nodes[2], -1);
      break;
    case RelationKind::relative:  // S - R = m
      add(r.nodes[0], 1);
      add(r.nodes[1], -1);
      e.rhs = r.value;
      break;
    case RelationKind::thh:  // T + C = -3
      add(r.nodes[1], 1);
      add(r.nodes[0], 1);
      e.rhs = -3;
      break;
    case RelationKind::descent:  // T - B - A = 0
      add(r.nodes[0], 1);
      add(r.nodes[1], -1);
      add(r.nodes[2], -1);
      break;
  }
  return e;
}

std::string explain(const LedgerRelation& r, const std::string& target, const std::map<std::string, int>& v) {
  auto val = [&](const std::string& n) { return std::to_string(v.at(n)); };
  auto sh = [](const std::string& n) { return "shift(" + n + ")"; };
  std::ostringstream os;
  switch (r.kind) {
    case RelationKind::known:
      os << (r.note.empty() ? "given" : r.note);
      break;
    case RelationKind::cofibre: {
      const auto& S = r.nodes[0];
      const auto& R = r.nodes[1];
      const auto& Q = r.nodes[2];
      if (target == R) os << sh(R) << " = " << sh(S) << " + " << sh(Q) << " = " << val(S) << " + " << val(Q);
      else {
        const auto& other = target == S ? Q : S;
        os << sh(target) << " = " << sh(R) << " - " << sh(other) << " = " << val(R) << " - " << val(other);
      }
      break;
    }
    case RelationKind::relative: {
      const auto& S = r.nodes[0];
      const auto& R = r.nodes[1];
      if (target == S) os << sh(S) << " = " << sh(R) << " + " << r.value << " = " << val(R) << " + " << r.value;
      else os << sh(R) << " = " << sh(S) << " - " << r.value << " = " << val(S) << " - " << r.value;
      break;
    }
    case RelationKind::thh: {
      const auto& other = target == r.nodes[1] ? r.nodes[0] : r.nodes[1];
      os << sh(target) << " = -" << sh(other) << " - 3 = -(" << val(other) << ") - 3";
      break;
    }
    case RelationKind::descent: {
      const auto& T = r.nodes[0];
      const auto& B = r.nodes[1];
      const auto& A = r.nodes[2];
      if (target == T) os << sh(T) << " = " << sh(B) << " + " << sh(A) << " = " << val(B) << " + " << val(A);
      else {
        const auto& other = target == B ? A : B;
        os << sh(target) << " = " << sh(T) << " - " << sh(other) << " = " << val(T) << " - " << val(other);
      }
      break;
    }
  }
  return os.str();
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

int parse_int(const std::string& s, int lineno) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw AlgebraError("ParseError", "ledger line " + std::to_string(lineno) + ": expected integer, got '" + s + "'");
}

}  // namespace

void ShiftLedger::declare(const std::string& name) {
  if (std::find(nodes.begin(), nodes.end(), name) == nodes.end()) nodes.push_back(name);
}

void ShiftLedger::add(LedgerRelation rel) {
  for (const auto& n : rel.nodes) declare(n);
  relations.push_back(std::move(rel));
}

ShiftLedger parse_ledger(std::string_view text) {
  ShiftLedger ledger;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string note;
    const auto q1 = line.find('"');
    if (q1 != std::string::npos) {
      const auto q2 = line.find('"', q1 + 1);
      if (q2 == std::string::npos)
        throw AlgebraError("ParseError", "ledger line " + std::to_string(lineno) + ": unterminated note");
      note = line.substr(q1 + 1, q2 - q1 - 1);
      line = line.substr(0, q1) + line.substr(q2 + 1);
    }
    line = line.substr(0, line.find('#'));
    auto w = split_ws(line);
    if (w.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw AlgebraError("ParseError", "ledger line " + std::to_string(lineno) + ": " + msg);
    };
    LedgerRelation r;
    r.note = note;
    std::ostringstream txt;
    for (std::size_t i = 0; i < w.size(); ++i) txt << (i ? " " : "") << w[i];
    r.text = txt.str();
    const std::string& kw = w[0];
    if (kw == "node") {
      if (w.size() < 2 || w.size() > 3) fail("expected 'node <name> [shift=<int>]'");
      ledger.declare(w[1]);
      if (w.size() == 3) {
        if (w[2].rfind("shift=", 0) != 0) fail("expected shift=<int>");
        r.kind = RelationKind::known;
        r.nodes = {w[1]};
        r.value = parse_int(w[2].substr(6), lineno);
        ledger.add(r);
      }
    } else if (kw == "axiom") {
      if (w.size() != 3) fail("expected 'axiom <name> <int> \"<note>\"'");
      r.kind = RelationKind::known;
      r.nodes = {w[1]};
      r.value = parse_int(w[2], lineno);
      ledger.add(r);
    } else if (kw == "cofibre" || kw == "descent") {
      if (w.size() != 4) fail("expected '" + kw + " <a> <b> <c>'");
      r.kind = kw == "cofibre" ? RelationKind::cofibre : RelationKind::descent;
      r.nodes = {w[1], w[2], w[3]};
      ledger.add(r);
    } else if (kw == "relative") {
      if (w.size() != 4) fail("expected 'relative S R <int>'");
      r.kind = RelationKind::relative;
      r.nodes = {w[1], w[2]};
      r.value = parse_int(w[3], lineno);
      ledger.add(r);
    } else if (kw == "thh") {
      if (w.size() != 4 || w[3].rfind("p=", 0) != 0) fail("expected 'thh C <name> p=<prime>'");
      r.kind = RelationKind::thh;
      r.nodes = {w[1], w[2]};
      r.prime = parse_int(w[3].substr(2), lineno);
      if (!is_prime(r.prime)) fail("p=" + w[3].substr(2) + " is not prime");
      ledger.add(r);
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  return ledger;
}

ShiftLedger load_ledger(const std::string& path) { return parse_ledger(read_file(path)); }

ShiftLedger merge_ledgers(const std::vector<ShiftLedger>& parts) {
  ShiftLedger out;
  for (const auto& part : parts) {
    for (const auto& n : part.nodes) out.declare(n);
    for (const auto& r : part.relations) out.add(r);
  }
  return out;
}

LedgerSolution solve(const ShiftLedger& ledger) {
  LedgerSolution sol;
  std::vector<Equation> eqs;
  for (std::size_t i = 0; i < ledger.relations.size(); ++i) eqs.push_back(equation_of(ledger.relations[i], i));

  // Propagation, for the derivation trace.
  std::map<std::string, int> known;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : eqs) {
      std::vector<std::string> unknown;
      long long acc = e.rhs;
      for (const auto& [n, c] : e.coeffs) {
        auto it = known.find(n);
        if (it == known.end()) unknown.push_back(n);
        else acc -= static_cast<long long>(c) * it->second;
      }
      if (unknown.size() != 1) continue;
      const int c = e.coeffs.at(unknown[0]);
      if (acc % c != 0) continue;
      known[unknown[0]] = static_cast<int>(acc / c);
      const auto& rel = ledger.relations[e.relation];
      sol.trace.push_back({unknown[0], known[unknown[0]], rel.text, explain(rel, unknown[0], known)});
      changed = true;
    }
  }

  // Exact elimination per connected component.
  std::map<std::string, std::string> parent;
  for (const auto& n : ledger.nodes) parent[n] = n;
  std::function<std::string(const std::string&)> root = [&](const std::string& n) {
    return parent[n] == n ? n : parent[n] = root(parent[n]);
  };
  for (const auto& e : eqs)
    for (const auto& [n, c] : e.coeffs) parent[root(n)] = root(e.coeffs.begin()->first);
  std::map<std::string, std::vector<const Equation*>> components;
  for (const auto& e : eqs)
    if (!e.coeffs.empty()) components[root(e.coeffs.begin()->first)].push_back(&e);

  std::map<std::string, int> solved;
  for (const auto& [rep, ces] : components) {
    std::vector<std::string> vars;
    for (const auto* e : ces)
      for (const auto& [n, c] : e->coeffs)
        if (std::find(vars.begin(), vars.end(), n) == vars.end()) vars.push_back(n);
    std::sort(vars.begin(), vars.end());
    const std::size_t nv = vars.size();
    std::vector<std::vector<Fraction>> rows;
    for (const auto* e : ces) {
      std::vector<Fraction> row(nv + 1);
      for (const auto& [n, c] : e->coeffs)
        row[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), n) - vars.begin())] = Fraction(c);
      row[nv] = Fraction(e->rhs);
      rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < nv && rank < rows.size(); ++col) {
      std::size_t piv = rank;
      while (piv < rows.size() && rows[piv][col].zero()) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[rank], rows[piv]);
      const Fraction lead = rows[rank][col];
      for (auto& x : rows[rank]) x = x / lead;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == rank || rows[i][col].zero()) continue;
        const Fraction f = rows[i][col];
        for (std::size_t k = 0; k <= nv; ++k) rows[i][k] = rows[i][k] - f * rows[rank][k];
      }
      pivot_col.push_back(col);
      ++rank;
    }
    bool inconsistent = false;
    for (std::size_t i = rank; i < rows.size(); ++i)
      if (!rows[i][nv].zero()) inconsistent = true;
    if (inconsistent) {
      LedgerConflict c;
      std::ostringstream os;
      os << "no shift assignment satisfies the relations linking";
      for (const auto& v : vars) os << ' ' << v;
      c.description = os.str();
      for (const auto* e : ces) c.relations.push_back(ledger.relations[e->relation].text);
      std::sort(c.relations.begin(), c.relations.end());
      sol.conflicts.push_back(std::move(c));
      continue;
    }
    for (std::size_t i = 0; i < rank; ++i) {
      bool determined = true;
      for (std::size_t k = 0; k < nv; ++k)
        if (k != pivot_col[i] && !rows[i][k].zero()) determined = false;
      if (determined && rows[i][nv].den == 1) solved[vars[pivot_col[i]]] = static_cast<int>(rows[i][nv].num);
    }
  }

  if (sol.consistent()) {
    sol.values = solved;
    for (const auto& [n, v] : solved)
      if (!known.count(n)) sol.trace.push_back({n, v, "linear system", "fixed only by the relations taken together"});
  } else {
    // Keep values from consistent components only.
    std::set<std::string> bad;
    for (const auto& c : sol.conflicts)
      for (const auto& [rep, ces] : components)
        for (const auto* e : ces)
          if (std::find(c.relations.begin(), c.relations.end(), ledger.relations[e->relation].text) != c.relations.end())
            for (const auto& [n, k] : e->coeffs) bad.insert(n);
    for (const auto& [n, v] : solved)
      if (!bad.count(n)) sol.values[n] = v;
    std::erase_if(sol.trace, [&](const DerivationStep& s) { return bad.count(s.node) > 0; });
  }
  for (const auto& n : ledger.nodes)
    if (!sol.values.count(n)) sol.unresolved.push_back(n);
  return sol;
}

std::string LedgerSolution::to_markdown() const {
  std::ostringstream os;
  os << "| node | shift | rule | derivation |\n|---|---|---|---|\n";
  for (const auto& s : trace) os << "| " << s.node << " | " << s.value << " | `" << s.rule << "` | " << s.explanation << " |\n";
  if (!unresolved.empty()) {
    os << "\nUnresolved:";
    for (const auto& n : unresolved) os << ' ' << n;
    os << '\n';
  }
  for (const auto& c : conflicts) {
    os << "\nConflict: " << c.description << '\n';
    for (const auto& r : c.relations) os << "- `" << r << "`\n";
  }
  return os.str();
}

std::string LedgerSolution::to_json() const {
  nlohmann::ordered_json j;
  j["consistent"] = consistent();
  nlohmann::ordered_json vals = nlohmann::ordered_json::object();
  for (const auto& [n, v] : values) vals[n] = v;
  j["values"] = vals;
  j["unresolved"] = unresolved;
  auto tr = nlohmann::ordered_json::array();
  for (const auto& s : trace) tr.push_back({{"node", s.node}, {"shift", s.value}, {"rule", s.rule}, {"derivation", s.explanation}});
  j["trace"] = tr;
  auto cs = nlohmann::ordered_json::array();
  for (const auto& c : conflicts) cs.push_back({{"description", c.description}, {"relations", c.relations}});
  j["conflicts"] = cs;
  return j.dump(2);
}

int thh_descent_shift(int a) { return -a - 3; }

int thh_general_descent(int shift_thh_b, int shift_a) { return shift_thh_b + shift_a; }

}  // namespace gdual
