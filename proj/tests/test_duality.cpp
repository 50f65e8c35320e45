#include "doctest.h"
#include "gdual/duality.hpp"
#include "support.hpp"

using namespace gdual;
using gdual::testing::error_kind;
using gdual::testing::oracles;

namespace {

LaurentPoly poly_from(const nlohmann::json& terms) {
  LaurentPoly p;
  for (const auto& t : terms) p += LaurentPoly::monomial(t[0].get<int>(), t[1].get<Scalar>());
  return p;
}

// Series named in the oracle file, built from presentations.
HilbertSeries named_series(const std::string& name) {
  if (name == "k[x1]") return make_series(LaurentPoly(1), {1});
  if (name == "thh-ko") return hilbert_series(gdual::testing::ring("thh-ko"), 48);
  if (name == "veen") return hilbert_series(gdual::testing::ring("veen-p3"), 48);
  if (name == "thh-z-p3") return hilbert_series(gdual::testing::ring("thh-z-p3"), 48);
  if (name == "truncated-v4") return hilbert_series(parse_presentation("char = 5\n[gen] v, 2\n[rel] v^4\n"), 24);
  throw std::runtime_error("unknown series " + name);
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("functional equations agree with sympy") {
    for (const auto& [name, want] : oracles()["functional_equations"].items()) {
      CAPTURE(name);
      const HilbertSeries h = named_series(name);
      const auto fe = functional_equation(h, want["r"].get<int>());
      REQUIRE(fe);
      CHECK(fe->epsilon == want["epsilon"].get<int>());
      CHECK(fe->exponent == want["e"].get<int>());
      CHECK(fe->series_a == want["r"].get<int>() - want["e"].get<int>());
      CHECK(fe->sign_is_standard == (fe->epsilon == (want["r"].get<int>() % 2 ? -1 : 1)));
    }
  }

  TEST_CASE("no functional equation when the ratio is not a monomial") {
    const HilbertSeries h = make_series(LaurentPoly(1) + LaurentPoly::monomial(2) + LaurentPoly::monomial(3), {4});
    CHECK_FALSE(functional_equation(h, 1).has_value());
  }

  TEST_CASE("reciprocal is an involution") {
    const HilbertSeries h = hilbert_series(gdual::testing::ring("thh-lu-p3"), 60);
    const HilbertSeries back = reciprocal(reciprocal(h));
    CHECK(back.expand(60) == h.expand(60));
  }

  TEST_CASE("almost Gorenstein defect") {
    const auto& ag = oracles()["almost_gorenstein"];
    std::vector<int> den = ag["denominator"].get<std::vector<int>>();
    const HilbertSeries h = make_series(poly_from(ag["numerator"]), den);
    const DefectReport rep = almost_gorenstein_defect(h, ag["r"], ag["a"]);
    CHECK(rep.q_equation_holds);
    CHECK(rep.q.denominator == den);
    CHECK(rep.q.numerator == poly_from(ag["q_numerator"]));

    // (1+t) does not divide the defect at even a
    CHECK(error_kind([&] { almost_gorenstein_defect(h, 1, 0); }) == "NotDivisible");
  }

  TEST_CASE("Gorenstein series have zero defect") {
    const HilbertSeries h = hilbert_series(gdual::testing::ring("thh-z-p3"), 48);
    const auto fe = functional_equation(h, 1);
    REQUIRE(fe);
    const DefectReport rep = almost_gorenstein_defect(h, 1, fe->series_a);
    CHECK(rep.q.numerator.is_zero());
    CHECK(rep.q_equation_holds);
  }

  TEST_CASE("coconnective series are rejected by the defect") {
    const HilbertSeries h =
        hilbert_series(parse_presentation("char = 3\norientation = coconnective\n[gen] x, -2\n"), 24);
    CHECK(error_kind([&] { almost_gorenstein_defect(h, 1, 0); }) == "BadArgument");
  }
}
