#include "doctest.h"
#include "gdual/resolution.hpp"
#include "support.hpp"

using namespace gdual;
using gdual::testing::error_kind;
using gdual::testing::oracles;
using gdual::testing::ring;

TEST_SUITE("resolution") {
  TEST_CASE("Tor agrees with the closed form for monogenic tensor factors") {
    for (const auto& c : oracles()["tor"]) {
      const Presentation p = parse_presentation(c["presentation"].get<std::string>());
      CAPTURE(c["presentation"].get<std::string>());
      const int hb = c["hom_bound"], db = c["deg_bound"];
      const FreeResolution res = minimal_resolution(p, hb, db);
      CHECK(res.is_minimal());
      CHECK(res.composites_vanish());
      BigradedDimensions want;
      for (const auto& e : c["entries"]) want.add(e[0], e[1], e[2]);
      CHECK(tor_dimensions(res) == want);
    }
  }

  TEST_CASE("certificates on THH rings") {
    struct Case {
      const char* ring;
      int shift;
    };
    // shifts: -3 for THH(F_p), -2 for THH(Z), 1 for THH(ku), 2p-3 for THH(lu), 3 for THH(ko)
    for (Case c : {Case{"thh-fp-p2", -3}, Case{"thh-fp-p5", -3}, Case{"thh-z-p3", -2}, Case{"thh-ku-p3", 1},
                   Case{"thh-ko", 3}, Case{"veen-p3", -3}}) {
      CAPTURE(c.ring);
      const Presentation p = ring(c.ring);
      const auto cert = gorenstein_certificate(p, 12, 48);
      CHECK(cert.verdict == Verdict::gorenstein);
      REQUIRE(cert.shift);
      CHECK(*cert.shift == c.shift);
      CHECK(structural_shift(p) == c.shift);
    }
  }

  TEST_CASE("socle of truncated polynomial rings") {
    for (int p : {3, 5}) {
      const Presentation pres = ring("kupv1-p" + std::to_string(p));
      const auto soc = socle(pres);
      REQUIRE(soc.size() == 1);
      CHECK(soc[0].degree == 2 * (p - 2));
      CHECK(artinian_top(pres) == 2 * (p - 2));
    }
  }

  TEST_CASE("non-Gorenstein Artinian ring") {
    const Presentation p = parse_presentation("char = 3\n[gen] x, 2\n[gen] y, 2\n[rel] x^2\n[rel] x*y\n[rel] y^2\n");
    CHECK(socle(p).size() == 2);
    const auto cert = gorenstein_certificate(p, 6, 24);
    CHECK(cert.verdict == Verdict::not_gorenstein);
  }

  TEST_CASE("Ext of a polynomial ring sits in one bidegree") {
    const Presentation p = parse_presentation("char = 5\n[gen] x, 4\n");
    const FreeResolution res = minimal_resolution(p, 4, 40);
    const ExtWindow ext = ext_dimensions(res);
    int total = 0;
    for (const auto& [k, d] : ext.dims.entries) total += d;
    CHECK(total == 1);
    const auto cert = gorenstein_certificate(res);
    REQUIRE(cert.shift);
    CHECK(*cert.shift == -5);
  }

  TEST_CASE("coconnective certificate") {
    // cochains on S^3
    const Presentation p = parse_presentation("char = 3\norientation = coconnective\n[gen] x, -3, ext\n");
    const auto cert = gorenstein_certificate(p, 6, 24);
    CHECK(cert.verdict == Verdict::gorenstein);
    REQUIRE(cert.shift);
    CHECK(*cert.shift == structural_shift(p));
  }

  TEST_CASE("errors") {
    CHECK(error_kind([] { socle(parse_presentation("char = 3\n[gen] x, 2\n")); }) == "NotArtinian");
    CHECK(error_kind([] {
            structural_shift(parse_presentation("char = 3\n[gen] x, 2\n[gen] y, 2\n[rel] x*y\n"));
          }) == "NotTensorForm");
  }
}
