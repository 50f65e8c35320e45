#include "gdual/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gdual/cache.hpp"

namespace gdual {

Format parse_format(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "md" || s == "markdown") return Format::md;
  if (s == "chart") return Format::chart;
  throw AlgebraError("ParseError", "unknown format '" + std::string(s) + "'");
}

Json report_header(const std::string& command) {
  Json j;
  j["schema"] = kReportSchema;
  j["version"] = kAlgorithmVersion;
  j["command"] = command;
  return j;
}

Json bigraded_json(const BigradedDimensions& dims, const std::string& row, const std::string& col) {
  Json j;
  j["kind"] = "bigraded";
  j["row"] = row;
  j["col"] = col;
  auto entries = Json::array();
  for (const auto& [k, d] : dims.entries) {
    if (d == 0) continue;
    Json e;
    e[row] = k.first;
    e[col] = k.second;
    e["dim"] = d;
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

BigradedDimensions bigraded_from_json(const Json& j) {
  BigradedDimensions out;
  const auto row = j.at("row").get<std::string>();
  const auto col = j.at("col").get<std::string>();
  for (const auto& e : j.at("entries")) out.add(e.at(row).get<int>(), e.at(col).get<int>(), e.at("dim").get<int>());
  return out;
}

std::string bigraded_markdown(const Json& table) {
  const auto dims = bigraded_from_json(table);
  const auto row = table.at("row").get<std::string>();
  const auto col = table.at("col").get<std::string>();
  std::set<int> rows, cols;
  for (const auto& [k, d] : dims.entries) {
    rows.insert(k.first);
    cols.insert(k.second);
  }
  std::ostringstream os;
  if (rows.empty()) return "(all zero)\n";
  os << "| " << row << " \\ " << col << " |";
  for (int c : cols) os << " " << c << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
  os << "\n";
  for (int r : rows) {
    os << "| " << r << " |";
    for (int c : cols) {
      const int d = dims.get(r, c);
      os << " " << (d ? std::to_string(d) : "") << " |";
    }
    os << "\n";
  }
  return os.str();
}

std::string bigraded_chart(const Json& table) {
  const auto dims = bigraded_from_json(table);
  if (dims.entries.empty()) return "(all zero)\n";
  int rmin = 0, rmax = 0, cmin = 0, cmax = 0;
  bool first = true;
  for (const auto& [k, d] : dims.entries) {
    if (first) {
      rmin = rmax = k.first;
      cmin = cmax = k.second;
      first = false;
    }
    rmin = std::min(rmin, k.first);
    rmax = std::max(rmax, k.first);
    cmin = std::min(cmin, k.second);
    cmax = std::max(cmax, k.second);
  }
  // col on the vertical axis, row horizontal, the usual spectral sequence picture
  std::ostringstream os;
  for (int c = cmax; c >= cmin; --c) {
    os << (c < 0 ? "" : " ") << (std::abs(c) < 10 ? " " : "") << c << " |";
    for (int r = rmin; r <= rmax; ++r) {
      const int d = dims.get(r, c);
      os << "  " << (d == 0 ? "." : d < 10 ? std::to_string(d) : "*");
    }
    os << "\n";
  }
  os << "    +";
  for (int r = rmin; r <= rmax; ++r) os << "---";
  os << "\n     ";
  for (int r = rmin; r <= rmax; ++r) {
    std::string s = std::to_string(r);
    os << std::string(3 - std::min<std::size_t>(3, s.size()), ' ') << s;
  }
  os << "   (" << table.at("row").get<std::string>() << " across, " << table.at("col").get<std::string>() << " up)\n";
  return os.str();
}

Json series_json(const HilbertSeries& series) {
  Json j;
  j["closed_form"] = series.to_string();
  auto num = Json::array();
  for (const auto& [e, c] : series.numerator.terms()) num.push_back({{"exponent", e}, {"coeff", c}});
  j["numerator"] = num;
  j["denominator"] = series.denominator;
  j["orientation"] = series.orientation == Orientation::connective ? "connective" : "coconnective";
  j["exact"] = series.closed_form;
  j["window"] = {series.window_low, series.window_high};
  return j;
}

Json certificate_json(const GorensteinCertificate& cert) {
  Json j;
  j["verdict"] = to_string(cert.verdict);
  j["shift"] = cert.shift ? Json(*cert.shift) : Json(nullptr);
  j["method"] = cert.method;
  j["evidence"] = cert.evidence;
  if (cert.ext_s) j["ext_s"] = *cert.ext_s;
  if (cert.ext_t) j["ext_t"] = *cert.ext_t;
  j["hom_bound"] = cert.hom_bound;
  j["deg_bound"] = cert.deg_bound;
  j["margin"] = cert.margin;
  return j;
}

Json functional_equation_json(const FunctionalEquationReport& fe) {
  Json j;
  j["r"] = fe.krull_dim;
  j["epsilon"] = fe.epsilon;
  j["e"] = fe.exponent;
  j["series_a"] = fe.series_a;
  j["sign_is_(-1)^r"] = fe.sign_is_standard;
  return j;
}

namespace {

bool is_table(const Json& j) { return j.is_object() && j.contains("kind") && j["kind"] == "bigraded"; }

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

bool flat_object(const Json& j) {
  if (!j.is_object()) return false;
  return std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive() || (v.is_array() && v.size() <= 8 && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })); });
}

void markdown(std::ostringstream& os, const Json& j, const std::string& key, int depth, bool charts) {
  const std::string heading(static_cast<std::size_t>(std::min(depth, 5)), '#');
  if (is_table(j)) {
    os << heading << " " << key << "\n\n" << (charts ? "```\n" + bigraded_chart(j) + "```\n" : bigraded_markdown(j)) << "\n";
    return;
  }
  if (j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), flat_object)) {
    std::vector<std::string> cols;
    for (const auto& row : j)
      for (auto it = row.begin(); it != row.end(); ++it)
        if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
    os << heading << " " << key << "\n\n|";
    for (const auto& c : cols) os << " " << c << " |";
    os << "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& row : j) {
      os << "|";
      for (const auto& c : cols) os << " " << (row.contains(c) ? scalar(row[c]) : "") << " |";
      os << "\n";
    }
    os << "\n";
    return;
  }
  if (j.is_object()) {
    os << heading << " " << key << "\n\n";
    std::vector<std::pair<std::string, const Json*>> nested;
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos)
        nested.emplace_back(it.key(), &v);
      else if (v.is_primitive() || (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })))
        os << "- **" << it.key() << "**: " << (v.is_array() ? v.dump() : scalar(v)) << "\n";
      else
        nested.emplace_back(it.key(), &v);
    }
    os << "\n";
    for (const auto& [k, v] : nested) markdown(os, *v, k, depth + 1, charts);
    return;
  }
  os << heading << " " << key << "\n\n```\n" << (j.is_string() ? j.get<std::string>() : j.dump(2) + "\n") << "```\n\n";
}

}  // namespace

std::string render(const Json& report, Format format) {
  if (format == Format::json) return report.dump(2) + "\n";
  std::ostringstream os;
  const std::string title = report.contains("command") ? report["command"].get<std::string>() : "report";
  markdown(os, report, title, 1, format == Format::chart);
  return os.str();
}

}  // namespace gdual
