#include "exactsdp/polymatrix.hpp"

#include <map>

#include "exactsdp/errors.hpp"

namespace exactsdp {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, SpacePtr space,
                       MonomialOrder order)
    : rows_(rows), cols_(cols), space_(std::move(space)),
      order_(std::move(order)),
      data_(rows * cols, MultiPoly::zero(space_, order_)) {}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorKind::size, "poly matrix product shape");
  PolyMatrix out(rows_, other.cols_, space_, order_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < other.cols_; ++c) {
      MultiPoly acc = MultiPoly::zero(space_, order_);
      for (std::size_t k = 0; k < cols_; ++k)
        acc = acc + at(r, k) * other.at(k, c);
      out.at(r, c) = std::move(acc);
    }
  return out;
}

namespace {

// det of the submatrix using rows [row..n) and the columns in `cols_mask`
// (bitmask over the full column set), memoized per mask. Expansion along the
// first remaining row.
MultiPoly det_rec(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                  const std::vector<std::size_t>& cols, std::size_t row,
                  uint64_t mask, std::map<uint64_t, MultiPoly>& memo) {
  if (row == rows.size())
    return MultiPoly::constant(m.space(), m.order(), Rational(1));
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  MultiPoly acc = MultiPoly::zero(m.space(), m.order());
  int sign = 1;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (!(mask & (uint64_t(1) << j))) continue;
    const MultiPoly& entry = m.at(rows[row], cols[j]);
    if (!entry.is_zero()) {
      MultiPoly sub =
          det_rec(m, rows, cols, row + 1, mask & ~(uint64_t(1) << j), memo);
      MultiPoly contrib = entry * sub;
      acc = (sign > 0) ? acc + contrib : acc - contrib;
    }
    sign = -sign;
  }
  memo.emplace(mask, acc);
  return acc;
}

MultiPoly submatrix_det(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
  if (rows.size() > 63) fail(ErrorKind::size, "determinant too large");
  std::map<uint64_t, MultiPoly> memo;
  uint64_t full = (cols.size() == 64) ? ~uint64_t(0)
                                      : ((uint64_t(1) << cols.size()) - 1);
  return det_rec(m, rows, cols, 0, full, memo);
}

} // namespace

MultiPoly PolyMatrix::determinant() const {
  if (rows_ != cols_) fail(ErrorKind::size, "determinant of non-square matrix");
  std::vector<std::size_t> idx(rows_);
  for (std::size_t i = 0; i < rows_; ++i) idx[i] = i;
  return submatrix_det(*this, idx, idx);
}

PolyMatrix jacobian(const PolySystem& system,
                    const std::vector<std::size_t>& vars) {
  if (system.empty()) fail(ErrorKind::size, "jacobian of empty system");
  PolyMatrix out(system.size(), vars.size(), system[0].space(),
                 system[0].order());
  for (std::size_t i = 0; i < system.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j)
      out.at(i, j) = system[i].derivative(vars[j]);
  return out;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n,
                                                      std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    // Advance to the next k-subset in lexicographic order.
    std::size_t i = k;
    while (i-- > 0) {
      if (cur[i] != i + n - k) {
        ++cur[i];
        for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

std::vector<MultiPoly> minors(const PolyMatrix& matrix, std::size_t k) {
  if (k == 0 || k > matrix.rows() || k > matrix.cols())
    fail(ErrorKind::size, "minor size out of range");
  std::vector<MultiPoly> out;
  auto row_sets = subsets_of_size(matrix.rows(), k);
  auto col_sets = subsets_of_size(matrix.cols(), k);
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets) out.push_back(submatrix_det(matrix, rs, cs));
  return out;
}

QMatrix evaluate(const PolyMatrix& matrix, const std::vector<Rational>& point) {
  QMatrix out(matrix.rows(), matrix.cols());
  for (std::size_t r = 0; r < matrix.rows(); ++r)
    for (std::size_t c = 0; c < matrix.cols(); ++c)
      out.at(r, c) = matrix.at(r, c).evaluate(point);
  return out;
}

} // namespace exactsdp
