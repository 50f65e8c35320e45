#include "doctest.h"
#include "gdual/hochschild.hpp"
#include "gdual/resolution.hpp"
#include "support.hpp"

using namespace gdual;
using gdual::testing::oracles;

TEST_SUITE("hochschild") {
  TEST_CASE("bar complex agrees with an independent implementation") {
    for (const auto& c : oracles()["hochschild"]) {
      CAPTURE(c["name"].get<std::string>());
      CAPTURE(c["coefficients"].get<std::string>());
      const Presentation p = parse_presentation(c["presentation"].get<std::string>());
      const Coefficients coeff = c["coefficients"] == "self" ? Coefficients::self : Coefficients::k;
      const int wb = c["weight_bound"], hb = c["hom_bound"];
      BigradedDimensions want;
      for (const auto& e : c["entries"]) want.add(e[0], e[1], e[2]);
      CHECK(hh_homology(p, coeff, wb, hb) == want);
      CHECK(bar_squares_to_zero(p, coeff, wb));
    }
  }

  TEST_CASE("coefficients in k give Tor over R and over the enveloping algebra") {
    const Presentation p = parse_presentation("char = 3\n[gen] x, 2\n[gen] e, 3, ext\n[rel] x^3\n");
    const BigradedDimensions bar = hh_homology(p, Coefficients::k, 14, 4);
    const BigradedDimensions env = tor_enveloping(p, 14, 4);
    const BigradedDimensions tor = tor_dimensions(p, 4, 14);
    CHECK(bar == env);
    CHECK(bar == tor);
  }

  TEST_CASE("Dwyer-Miller duality for a polynomial ring") {
    // k[x_4] is Gorenstein of shift -5
    const Presentation p = parse_presentation("char = 3\n[gen] x, 4\n");
    const DwyerMillerReport rep = dwyer_miller_check(p, -5, 30, 3);
    CHECK(rep.applicable);
    CHECK(rep.holds);
    const DwyerMillerReport wrong = dwyer_miller_check(p, -4, 30, 3);
    CHECK_FALSE(wrong.holds);
  }

  TEST_CASE("Dwyer-Miller needs a polynomial ring") {
    const Presentation p = parse_presentation("char = 3\n[gen] x, 2\n[rel] x^3\n");
    CHECK_FALSE(dwyer_miller_check(p, 4, 12).applicable);
  }

  TEST_CASE("cohomology with k coefficients is dual to homology") {
    const Presentation p = parse_presentation("char = 5\n[gen] x, 2\n[rel] x^2\n");
    const CohomologyWindow co = hh_cohomology(p, Coefficients::k, 10, 4);
    const BigradedDimensions ho = hh_homology(p, Coefficients::k, 12, 4);
    for (const auto& [k, d] : ho.entries) {
      if (k.second + k.first > 10) continue;
      CHECK(co.dims.get(k.first, -k.second) == d);
    }
  }

  TEST_CASE("THH prediction from Tor") {
    const HilbertSeries z = thh_prediction(parse_presentation("char = 3\n[gen] x, 4\n"), 40);
    const auto c = z.expand(20);
    // k[mu_2] (x) Lambda(sigma x) with sigma x in degree 5
    for (int n = 0; n <= 20; ++n) {
      const int want = (n % 2 == 0 ? 1 : 0) + (n >= 5 && n % 2 == 1 ? 1 : 0);
      auto it = c.find(n);
      CHECK((it == c.end() ? 0 : it->second) == want);
    }
  }
}
