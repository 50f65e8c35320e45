#pragma once

// Shared report schema. Every command produces an ordered JSON object;
// markdown and chart renderings are derived from it.

#include <string>
#include <string_view>

#include "gdual/bigraded.hpp"
#include "gdual/duality.hpp"
#include "gdual/hilbert.hpp"
#include "gdual/resolution.hpp"
#include "json.hpp"

namespace gdual {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "gdual-report/1";

enum class Format { json, md, chart };
Format parse_format(std::string_view s);

/// {"schema", "version", "command"}.
Json report_header(const std::string& command);

/// Tables are tagged {"kind": "bigraded", "row": .., "col": .., "entries": [..]}.
Json bigraded_json(const BigradedDimensions& dims, const std::string& row = "s", const std::string& col = "t");
BigradedDimensions bigraded_from_json(const Json& j);
std::string bigraded_markdown(const Json& table);
std::string bigraded_chart(const Json& table);

Json series_json(const HilbertSeries& series);
Json certificate_json(const GorensteinCertificate& cert);
Json functional_equation_json(const FunctionalEquationReport& fe);

std::string render(const Json& report, Format format);

}  // namespace gdual
