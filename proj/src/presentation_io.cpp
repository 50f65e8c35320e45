#include "gdual/presentation_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gdual {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw AlgebraError("ParseError", "expected integer for " + what + ", got '" + s + "'");
  }
}

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Product of the factors of one term, e.g. "3*x^2*y".
Polynomial parse_term(const Presentation& pres, const std::string& term) {
  const PrimeField& f = pres.field();
  Polynomial acc{{Exponents(pres.num_generators(), 0), 1 % f.p()}};
  for (const auto& factor : split(term, '*')) {
    if (factor.empty()) throw AlgebraError("ParseError", "empty factor in '" + term + "'");
    if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
      const Scalar c = f.reduce(parse_int(factor, "coefficient"));
      for (auto& [m, v] : acc) v = f.mul(v, c);
      continue;
    }
    std::string name = factor;
    int power = 1;
    if (auto caret = factor.find('^'); caret != std::string::npos) {
      name = trim(factor.substr(0, caret));
      power = parse_int(trim(factor.substr(caret + 1)), "exponent");
      if (power < 0) throw AlgebraError("ParseError", "negative exponent in '" + factor + "'");
    }
    auto gen = pres.find(name);
    if (!gen) throw AlgebraError("ParseError", "unknown generator '" + name + "'");
    for (int k = 0; k < power; ++k) acc = pres.multiply(acc, pres.generator_polynomial(*gen));
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return acc;
}

}  // namespace

Polynomial parse_polynomial(const Presentation& pres, std::string_view text) {
  const PrimeField& f = pres.field();
  Polynomial out;
  std::string s = trim(text);
  if (s == "0") return out;
  // Split on top-level + and - signs.
  std::vector<std::pair<int, std::string>> terms;
  int sign = 1;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '+' || c == '-') {
      const std::string tc = trim(cur);
      if (!tc.empty())
        terms.emplace_back(sign, tc);
      else if (!terms.empty() || !trim(s.substr(0, i)).empty())
        throw AlgebraError("ParseError", "dangling sign in '" + s + "'");
      sign = (c == '-') ? -1 : 1;
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (trim(cur).empty()) throw AlgebraError("ParseError", "empty term in '" + s + "'");
  terms.emplace_back(sign, trim(cur));
  for (const auto& [sg, t] : terms) {
    for (const auto& [m, c] : parse_term(pres, t)) {
      Scalar& slot = out[m];
      slot = f.add(slot, sg > 0 ? c : f.neg(c));
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Presentation parse_presentation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Scalar p = 0;
  Orientation orientation = Orientation::connective;
  struct RawGen {
    std::string name;
    int degree;
    std::string kind;
  };
  std::vector<RawGen> gens;
  std::vector<std::string> rels;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("[gen]", 0) == 0) {
      auto parts = split(trim(t.substr(5)), ',');
      if (parts.size() < 2 || parts.size() > 3)
        throw AlgebraError("ParseError", "line " + std::to_string(lineno) + ": expected '[gen] name, degree (, poly|ext)'");
      if (parts[0].empty() || !std::all_of(parts[0].begin(), parts[0].end(), is_name_char) ||
          std::isdigit(static_cast<unsigned char>(parts[0][0])))
        throw AlgebraError("ParseError", "line " + std::to_string(lineno) + ": bad generator name '" + parts[0] + "'");
      gens.push_back({parts[0], parse_int(parts[1], "degree"), parts.size() == 3 ? parts[2] : ""});
    } else if (t.rfind("[rel]", 0) == 0) {
      rels.push_back(trim(t.substr(5)));
    } else if (auto eq = t.find('='); eq != std::string::npos) {
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      if (key == "char") {
        p = parse_int(value, "char");
      } else if (key == "orientation") {
        if (value == "connective") orientation = Orientation::connective;
        else if (value == "coconnective") orientation = Orientation::coconnective;
        else throw AlgebraError("ParseError", "unknown orientation '" + value + "'");
      } else {
        throw AlgebraError("ParseError", "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } else {
      throw AlgebraError("ParseError", "line " + std::to_string(lineno) + ": cannot parse '" + t + "'");
    }
  }
  if (p == 0) throw AlgebraError("ParseError", "missing 'char = <p>'");
  PrimeField field(p);
  std::vector<Generator> generators;
  for (const auto& g : gens) {
    GeneratorKind kind;
    if (g.kind.empty()) kind = (p != 2 && g.degree % 2 != 0) ? GeneratorKind::exterior : GeneratorKind::polynomial;
    else if (g.kind == "poly") kind = GeneratorKind::polynomial;
    else if (g.kind == "ext") kind = GeneratorKind::exterior;
    else throw AlgebraError("ParseError", "unknown generator kind '" + g.kind + "'");
    generators.push_back({g.name, g.degree, kind});
  }
  Presentation free(field, orientation, generators);
  std::vector<Polynomial> relations;
  for (const auto& r : rels) relations.push_back(parse_polynomial(free, r));
  return Presentation(field, orientation, std::move(generators), std::move(relations));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("IOError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation load_presentation(const std::string& path) { return parse_presentation(read_file(path)); }

std::string print_monomial(const Presentation& pres, const Exponents& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += pres.generators()[i].name;
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string print_polynomial(const Presentation& pres, const Polynomial& f) {
  if (f.empty()) return "0";
  std::string out;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    if (!out.empty()) out += " + ";
    const bool constant = std::all_of(it->first.begin(), it->first.end(), [](int e) { return e == 0; });
    if (it->second != 1 || constant) {
      out += std::to_string(it->second);
      if (!constant) out += "*";
    }
    if (!constant) out += print_monomial(pres, it->first);
  }
  return out;
}

std::string print_presentation(const Presentation& pres) {
  std::ostringstream os;
  os << "char = " << pres.field().p() << "\n";
  os << "orientation = " << (pres.orientation() == Orientation::connective ? "connective" : "coconnective") << "\n";
  for (const auto& g : pres.generators())
    os << "[gen] " << g.name << ", " << g.degree << ", " << (g.kind == GeneratorKind::exterior ? "ext" : "poly") << "\n";
  for (const auto& r : pres.relations()) os << "[rel] " << print_polynomial(pres, r) << "\n";
  return os.str();
}

}  // namespace gdual
