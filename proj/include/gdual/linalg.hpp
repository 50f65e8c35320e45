#pragma once

// Exact linear algebra over F_p on Eigen storage. Linear maps act on row
// vectors from the right: a matrix with rows indexed by a source basis and
// columns by a target basis sends v to v * M.

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "gdual/prime_field.hpp"

namespace gdual {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// Reduced row echelon form with zero rows dropped.
struct Echelon {
  Matrix rows;
  std::vector<Index> pivots;

  Index rank() const noexcept { return static_cast<Index>(pivots.size()); }
};

Echelon row_reduce(Matrix m, const PrimeField& field);
Index rank(const Matrix& m, const PrimeField& field);

/// Basis (as rows) of { v : v * m = 0 }.
Matrix left_kernel(const Matrix& m, const PrimeField& field);

/// Reduce v modulo the row space of an echelon form; the result is zero
/// at every pivot column.
RowVector reduce_by(const Echelon& e, RowVector v, const PrimeField& field);

/// A subspace of F_p^n grown one vector at a time, kept in reduced form.
class Subspace {
 public:
  Subspace(Index ambient, const PrimeField& field) : ambient_(ambient), field_(field) {}

  Index ambient() const noexcept { return ambient_; }
  Index dimension() const noexcept { return static_cast<Index>(rows_.size()); }
  const std::vector<RowVector>& basis() const noexcept { return rows_; }
  const std::vector<Index>& pivots() const noexcept { return pivots_; }

  RowVector reduce(RowVector v) const;
  bool contains(const RowVector& v) const { return reduce(v).isZero(); }
  /// Adds v if independent; returns whether the dimension grew.
  bool insert(const RowVector& v);

 private:
  Index ambient_;
  PrimeField field_;
  std::vector<RowVector> rows_;  // each normalized to 1 at its pivot
  std::vector<Index> pivots_;
};

using SparseRow = std::vector<std::pair<Index, Scalar>>;  // sorted by column

/// Rank of a sparse matrix. Pivots prefer the sparsest columns, which keeps
/// fill-in low on bar and cochain complexes.
Index sparse_rank(const std::vector<SparseRow>& rows, const PrimeField& field);

}  // namespace gdual

namespace gdual {

/// v * m over F_p without intermediate overflow.
RowVector multiply_mod(const RowVector& v, const Matrix& m, const PrimeField& field);

}  // namespace gdual
