#include <random>

#include "doctest.h"
#include "gdual/laurent.hpp"
#include "gdual/linalg.hpp"

using namespace gdual;

TEST_SUITE("field") {
  TEST_CASE("inverses and powers") {
    for (Scalar p : {2, 3, 5, 7, 101}) {
      PrimeField f(p);
      for (Scalar a = 1; a < p; ++a) {
        CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.pow(a, static_cast<std::uint64_t>(p - 1)) == 1);  // Fermat
      }
      CHECK(f.reduce(-1) == p - 1);
      CHECK(f.sign(3) == f.reduce(-1));
    }
    CHECK_THROWS_AS(PrimeField(4), AlgebraError);
    CHECK_THROWS_AS(PrimeField(5).inv(0), AlgebraError);
  }

  TEST_CASE("rank of products of random factors") {
    std::mt19937 rng(7);
    PrimeField f(5);
    for (int trial = 0; trial < 20; ++trial) {
      const int k = trial % 4 + 1;
      Matrix a(6, k), b(k, 7);
      for (Index i = 0; i < a.size(); ++i) a.data()[i] = rng() % 5;
      for (Index i = 0; i < b.size(); ++i) b.data()[i] = rng() % 5;
      Matrix m = Matrix::Zero(6, 7);
      for (Index i = 0; i < 6; ++i) m.row(i) = multiply_mod(a.row(i), b, f);
      const Index r = rank(m, f);
      CHECK(r <= k);
      CHECK(r >= rank(a, f) + rank(b, f) - k);

      Subspace span(7, f);
      std::vector<SparseRow> sparse;
      for (Index i = 0; i < 6; ++i) {
        span.insert(m.row(i));
        SparseRow row;
        for (Index j = 0; j < 7; ++j)
          if (m(i, j)) row.emplace_back(j, m(i, j));
        sparse.push_back(row);
      }
      CHECK(span.dimension() == r);
      CHECK(sparse_rank(sparse, f) == r);

      const Matrix ker = left_kernel(m, f);
      CHECK(ker.rows() == 6 - r);
      for (Index i = 0; i < ker.rows(); ++i) CHECK(multiply_mod(ker.row(i), m, f).isZero());
    }
  }

  TEST_CASE("identity has full rank, nilpotent Jordan block rank n-1") {
    PrimeField f(3);
    CHECK(rank(Matrix::Identity(5, 5), f) == 5);
    Matrix j = Matrix::Zero(5, 5);
    for (Index i = 0; i + 1 < 5; ++i) j(i, i + 1) = 1;
    CHECK(rank(j, f) == 4);
    CHECK(rank(Matrix::Constant(4, 4, 3), f) == 0);  // 3 = 0 in F_3
  }

  TEST_CASE("laurent arithmetic") {
    LaurentPoly a = LaurentPoly::one_minus(4);
    LaurentPoly b = LaurentPoly::one_minus(2);
    auto q = a.divide_exact(b);
    REQUIRE(q);
    CHECK(q->to_string() == (LaurentPoly(1) + LaurentPoly::monomial(2)).to_string());
    CHECK_FALSE(b.divide_exact(a));
    CHECK(a.inverted().low() == -4);
    CHECK(a.shifted(3).high() == 7);

    // 1/(1-t)^2 has coefficients n+1
    auto e = expand_rational(LaurentPoly(1), {1, 1}, 10);
    for (int n = 0; n <= 10; ++n) CHECK(e[n] == n + 1);
  }
}
