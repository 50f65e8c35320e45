#pragma once

// Finitely presented graded-commutative algebras over F_p and their
// degreewise quotient bases.
//
// Internally every computation runs on "weights": the absolute value of the
// grading. Coconnective presentations (all generators in negative degrees)
// are reflected to positive weights and reflected back on output.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdual/linalg.hpp"
#include "gdual/prime_field.hpp"

namespace gdual {

enum class Orientation { connective, coconnective };
enum class GeneratorKind { polynomial, exterior };

struct Generator {
  std::string name;
  int degree = 0;
  GeneratorKind kind = GeneratorKind::polynomial;

  friend bool operator==(const Generator&, const Generator&) = default;
};

using Exponents = std::vector<int>;
/// Element of the free graded-commutative algebra: monomial -> coefficient.
using Polynomial = std::map<Exponents, Scalar>;

class Presentation {
 public:
  Presentation(PrimeField field, Orientation orientation, std::vector<Generator> generators,
               std::vector<Polynomial> relations = {});

  const PrimeField& field() const noexcept { return field_; }
  Orientation orientation() const noexcept { return orientation_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const std::vector<Polynomial>& relations() const noexcept { return relations_; }
  std::size_t num_generators() const noexcept { return generators_.size(); }

  /// +1 for connective, -1 for coconnective.
  int orientation_sign() const noexcept { return orientation_ == Orientation::connective ? 1 : -1; }
  int weight(std::size_t gen) const noexcept;
  int weight(const Exponents& m) const noexcept;
  bool is_odd(std::size_t gen) const noexcept { return generators_[gen].degree % 2 != 0; }
  /// Largest exponent a generator can carry in the free algebra.
  int exponent_cap(std::size_t gen) const noexcept;
  std::optional<std::size_t> find(const std::string& name) const;

  /// Product of two monomials in the free algebra, with the graded sign;
  /// nullopt when the product vanishes (an exterior square).
  std::optional<std::pair<Exponents, Scalar>> multiply(const Exponents& a, const Exponents& b) const;
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;
  Polynomial generator_polynomial(std::size_t gen, int power = 1) const;
  /// Weight of a homogeneous polynomial; throws if inhomogeneous or zero.
  int polynomial_weight(const Polynomial& f) const;
  /// Drops vanishing monomials and reduces coefficients mod p.
  Polynomial normalize(Polynomial f) const;

  int max_generator_weight() const noexcept;
  int max_relation_weight() const;
  bool monomial_relations() const noexcept;

  Presentation with_relations(const std::vector<Polynomial>& extra) const;
  /// Generators of a followed by generators of b; relations of both.
  static Presentation tensor(const Presentation& a, const Presentation& b);

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  PrimeField field_;
  Orientation orientation_;
  std::vector<Generator> generators_;
  std::vector<Polynomial> relations_;
};

/// A presented algebra made explicit in weights 0..bound: quotient monomial
/// bases and normal forms. Immutable after construction.
class GradedAlgebra {
 public:
  GradedAlgebra(Presentation pres, int bound);

  const Presentation& presentation() const noexcept { return pres_; }
  const PrimeField& field() const noexcept { return pres_.field(); }
  int bound() const noexcept { return bound_; }

  int dim(int weight) const;
  const std::vector<Exponents>& basis(int weight) const;
  std::optional<Index> index(int weight, const Exponents& m) const;
  /// Signed degree of a weight (negative for coconnective presentations).
  int degree_of(int weight) const noexcept { return pres_.orientation_sign() * weight; }

  /// Coordinates of a free monomial in the quotient basis.
  SparseRow normal_form(const Exponents& m) const;
  RowVector normal_form(const Polynomial& f, int weight) const;
  RowVector unit() const;

  /// Product of basis elements i (weight wa) and j (weight wb).
  SparseRow basis_product(int wa, Index i, int wb, Index j) const;
  RowVector multiply(int wa, const RowVector& a, int wb, const RowVector& b) const;

  /// Top weight if the algebra is visibly finite inside the window.
  std::optional<int> top_weight() const;

 private:
  struct Piece {
    std::vector<Exponents> basis;
    std::map<Exponents, Index> index;
    std::map<Exponents, SparseRow> reduced;  // leading monomials of the relation span
  };

  void check_weight(int weight) const;

  Presentation pres_;
  int bound_;
  std::vector<Piece> pieces_;
};

/// All free monomials of the given weight, ascending in monomial order.
std::vector<Exponents> free_monomials(const Presentation& pres, int weight);

/// Monomial order: lexicographic on exponent vectors (generator list order).
bool monomial_less(const Exponents& a, const Exponents& b);

}  // namespace gdual
