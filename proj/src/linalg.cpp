#include "gdual/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace gdual {

namespace {

void axpy_row(Matrix& m, Index target, Index source, Scalar factor, const PrimeField& f) {
  if (factor == 0) return;
  const Scalar p = f.p();
  Scalar* dst = m.row(target).data();
  const Scalar* src = m.row(source).data();
  for (Index c = 0; c < m.cols(); ++c) {
    if (src[c] == 0) continue;
    dst[c] = (dst[c] + (p - factor) * src[c]) % p;
  }
}

}  // namespace

Echelon row_reduce(Matrix m, const PrimeField& field) {
  Echelon e;
  m = m.unaryExpr([&](Scalar x) { return field.reduce(x); });
  Index lead = 0;
  for (Index col = 0; col < m.cols() && lead < m.rows(); ++col) {
    Index pivot = -1;
    for (Index r = lead; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(lead));
    const Scalar inv = field.inv(m(lead, col));
    for (Index c = col; c < m.cols(); ++c) m(lead, c) = field.mul(m(lead, c), inv);
    for (Index r = 0; r < m.rows(); ++r)
      if (r != lead && m(r, col) != 0) axpy_row(m, r, lead, m(r, col), field);
    e.pivots.push_back(col);
    ++lead;
  }
  e.rows = m.topRows(lead);
  return e;
}

Index rank(const Matrix& m, const PrimeField& field) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return row_reduce(m, field).rank();
}

Matrix left_kernel(const Matrix& m, const PrimeField& field) {
  const Index n = m.rows();
  Matrix aug(n, m.cols() + n);
  aug.leftCols(m.cols()) = m;
  aug.rightCols(n).setIdentity();
  Echelon e = row_reduce(aug, field);
  std::vector<Index> kernel_rows;
  for (Index i = 0; i < e.rank(); ++i)
    if (e.pivots[static_cast<std::size_t>(i)] >= m.cols()) kernel_rows.push_back(i);
  Matrix k(static_cast<Index>(kernel_rows.size()), n);
  for (std::size_t i = 0; i < kernel_rows.size(); ++i) k.row(static_cast<Index>(i)) = e.rows.row(kernel_rows[i]).rightCols(n);
  return k;
}

RowVector reduce_by(const Echelon& e, RowVector v, const PrimeField& field) {
  const Scalar p = field.p();
  for (Index i = 0; i < e.rank(); ++i) {
    const Scalar c = v(e.pivots[static_cast<std::size_t>(i)]);
    if (c == 0) continue;
    for (Index j = 0; j < v.size(); ++j)
      if (e.rows(i, j) != 0) v(j) = (v(j) + (p - c) * e.rows(i, j)) % p;
  }
  return v;
}

RowVector Subspace::reduce(RowVector v) const {
  const Scalar p = field_.p();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = v(pivots_[i]);
    if (c == 0) continue;
    const RowVector& r = rows_[i];
    for (Index j = 0; j < v.size(); ++j)
      if (r(j) != 0) v(j) = (v(j) + (p - c) * r(j)) % p;
  }
  return v;
}

bool Subspace::insert(const RowVector& v) {
  RowVector r = reduce(v);
  Index pivot = -1;
  for (Index j = 0; j < r.size(); ++j)
    if (r(j) != 0) {
      pivot = j;
      break;
    }
  if (pivot < 0) return false;
  const Scalar inv = field_.inv(r(pivot));
  for (Index j = 0; j < r.size(); ++j) r(j) = field_.mul(r(j), inv);
  const Scalar p = field_.p();
  for (auto& row : rows_) {
    const Scalar c = row(pivot);
    if (c == 0) continue;
    for (Index j = 0; j < r.size(); ++j)
      if (r(j) != 0) row(j) = (row(j) + (p - c) * r(j)) % p;
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(pivot);
  return true;
}

Index sparse_rank(const std::vector<SparseRow>& rows, const PrimeField& field) {
  const Scalar p = field.p();
  Index ncols = 0;
  for (const auto& r : rows)
    for (auto [c, v] : r) ncols = std::max(ncols, c + 1);
  std::vector<Index> count(static_cast<std::size_t>(ncols), 0);
  for (const auto& r : rows)
    for (auto [c, v] : r) ++count[static_cast<std::size_t>(c)];

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });

  // Pivot rows are normalized to 1 at their pivot column; a pivot row never
  // meets a pivot column created before it, so eliminating by creation order
  // terminates.
  std::vector<std::int64_t> stamp(static_cast<std::size_t>(ncols), -1);
  std::vector<SparseRow> pivot_rows;
  for (std::size_t idx : order) {
    SparseRow row = rows[idx];
    std::erase_if(row, [&](const auto& e) { return field.reduce(e.second) == 0; });
    for (auto& e : row) e.second = field.reduce(e.second);
    while (true) {
      std::int64_t best = -1;
      Index col = -1;
      Scalar val = 0;
      for (auto [c, v] : row) {
        const std::int64_t st = stamp[static_cast<std::size_t>(c)];
        if (st >= 0 && (best < 0 || st < best)) {
          best = st;
          col = c;
          val = v;
        }
      }
      if (best < 0) break;
      const SparseRow& pr = pivot_rows[static_cast<std::size_t>(best)];
      SparseRow merged;
      merged.reserve(row.size() + pr.size());
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < pr.size()) {
        if (b == pr.size() || (a < row.size() && row[a].first < pr[b].first)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || pr[b].first < row[a].first) {
          merged.emplace_back(pr[b].first, (p - val) * pr[b].second % p);
          ++b;
        } else {
          const Scalar v = (row[a].second + (p - val) * pr[b].second) % p;
          if (v != 0) merged.emplace_back(row[a].first, v);
          ++a;
          ++b;
        }
      }
      (void)col;
      row = std::move(merged);
    }
    if (row.empty()) continue;
    std::size_t choice = 0;
    for (std::size_t k = 1; k < row.size(); ++k)
      if (count[static_cast<std::size_t>(row[k].first)] < count[static_cast<std::size_t>(row[choice].first)]) choice = k;
    const Scalar inv = field.inv(row[choice].second);
    for (auto& e : row) e.second = field.mul(e.second, inv);
    stamp[static_cast<std::size_t>(row[choice].first)] = static_cast<std::int64_t>(pivot_rows.size());
    pivot_rows.push_back(std::move(row));
  }
  return static_cast<Index>(pivot_rows.size());
}

}  // namespace gdual

namespace gdual {

RowVector multiply_mod(const RowVector& v, const Matrix& m, const PrimeField& field) {
  RowVector out = RowVector::Zero(m.cols());
  const Scalar p = field.p();
  for (Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out(j) = (out(j) + v(i) * m(i, j)) % p;
  }
  return out;
}

}  // namespace gdual
