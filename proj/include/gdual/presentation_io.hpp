#pragma once

#include <string>
#include <string_view>

#include "gdual/algebra.hpp"

namespace gdual {

/// Parses the text presentation format:
///
///   char = 3
///   orientation = connective
///   [gen] mu, 2
///   [gen] lambda, 5, ext
///   [rel] mu^3 - 2*mu*lambda
///
/// Lines starting with '#' are comments.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);

/// Canonical text; parse_presentation(print_presentation(p)) == p.
std::string print_presentation(const Presentation& pres);

/// Parses "2*x^2*y - z" over the generators of pres. Factors are multiplied
/// in the order written, so "y*x" carries the graded sign.
Polynomial parse_polynomial(const Presentation& pres, std::string_view text);
std::string print_polynomial(const Presentation& pres, const Polynomial& f);
std::string print_monomial(const Presentation& pres, const Exponents& m);

std::string read_file(const std::string& path);

}  // namespace gdual
