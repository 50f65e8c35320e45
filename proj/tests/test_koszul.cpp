#include "doctest.h"
#include "gdual/hilbert.hpp"
#include "gdual/koszul.hpp"
#include "support.hpp"

using namespace gdual;

namespace {

std::vector<Polynomial> elems(const Presentation& p, std::initializer_list<const char*> texts) {
  std::vector<Polynomial> out;
  for (const char* t : texts) out.push_back(parse_polynomial(p, t));
  return out;
}

}  // namespace

TEST_SUITE("koszul") {
  TEST_CASE("H_0 is the quotient ring") {
    const Presentation p = parse_presentation("char = 3\n[gen] x, 2\n[gen] y, 4\n[gen] e, 3, ext\n");
    for (auto texts : {std::initializer_list<const char*>{"x^2"}, {"x^2 - y", "y^2"}, {"x*e"}}) {
      const auto es = elems(p, texts);
      const KoszulComplex cx = build_koszul(p, es);
      CHECK(koszul_squares_to_zero(cx, 24));
      const BigradedDimensions h = koszul_homology(cx, 24);
      const auto quotient = enumerate_basis(p.with_relations(es), 24);
      for (int n = 0; n <= 24; ++n) CHECK(h.get(0, n) == quotient.dim(n));
    }
  }

  TEST_CASE("regular and non-regular sequences") {
    const Presentation p = parse_presentation("char = 5\n[gen] x, 2\n[gen] y, 2\n");
    CHECK(is_regular_sequence(p, elems(p, {"x", "y"}), 20).regular);
    CHECK(is_regular_sequence(p, elems(p, {"x^2 + y^2", "x*y"}), 20).regular);
    const auto bad = is_regular_sequence(p, elems(p, {"x*y", "x^2"}), 20);
    CHECK_FALSE(bad.regular);
    REQUIRE(bad.witness);
    CHECK(bad.witness->first == 1);
  }

  TEST_CASE("Euler characteristic of a regular sequence") {
    // dims of H_0 equal prod (1 - t^{d_i}) times the Hilbert series of R
    const Presentation p = parse_presentation("char = 3\n[gen] x, 2\n[gen] y, 6\n");
    const auto es = elems(p, {"x^3 + y", "y^2"});
    const BigradedDimensions h = koszul_homology(build_koszul(p, es), 30);
    const auto expect = expand_rational(LaurentPoly::one_minus(6) * LaurentPoly::one_minus(12), {2, 6}, 30);
    for (int n = 0; n <= 30; ++n) {
      auto it = expect.find(n);
      CHECK(h.get(0, n) == (it == expect.end() ? 0 : it->second));
      CHECK(h.get(1, n) == 0);
    }
  }

  TEST_CASE("inhomogeneous element rejected") {
    const Presentation p = parse_presentation("char = 3\n[gen] x, 2\n");
    CHECK(gdual::testing::error_kind([&] { build_koszul(p, {parse_polynomial(p, "x + x^2")}); }) != "none");
  }
}
