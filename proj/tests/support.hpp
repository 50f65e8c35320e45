#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "gdual/presentation_io.hpp"

namespace gdual::testing {

inline const nlohmann::json& oracles() {
  static const nlohmann::json data = [] {
    std::ifstream in(std::string(GDUAL_TEST_DATA) + "/oracles.json");
    return nlohmann::json::parse(in);
  }();
  return data;
}

inline std::string corpus_path(const std::string& rel) { return std::string(GDUAL_CORPUS_DIR) + "/" + rel; }

inline Presentation ring(const std::string& name) { return load_presentation(corpus_path("rings/" + name + ".pres")); }

}  // namespace gdual::testing

#include "doctest.h"

namespace gdual::testing {

template <class F>
std::string error_kind(F&& f) {
  try {
    f();
  } catch (const AlgebraError& e) {
    return e.kind();
  }
  return "none";
}

}  // namespace gdual::testing
