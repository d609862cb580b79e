#pragma once

#include "exactsdp/poly.hpp"
#include "exactsdp/qmatrix.hpp"

namespace exactsdp {

/// Dense matrix of polynomials sharing one ring and term order.
class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, SpacePtr space,
             MonomialOrder order);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SpacePtr& space() const { return space_; }
  const MonomialOrder& order() const { return order_; }

  MultiPoly& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const MultiPoly& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  PolyMatrix operator*(const PolyMatrix& other) const;

  /// Symbolic determinant by Laplace expansion with column-subset caching.
  MultiPoly determinant() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  SpacePtr space_;
  MonomialOrder order_ = MonomialOrder::grevlex();
  std::vector<MultiPoly> data_;
};

/// Jacobian of `system` w.r.t. the listed variables: entry (i, j) =
/// d system[i] / d vars[j].
PolyMatrix jacobian(const PolySystem& system,
                    const std::vector<std::size_t>& vars);

/// All k-by-k minors, rows and columns each enumerated in lexicographic
/// subset order (rows outer). Throws Error(size) for k = 0 or k exceeding
/// either dimension.
std::vector<MultiPoly> minors(const PolyMatrix& matrix, std::size_t k);

/// Entry-wise evaluation at a rational point.
QMatrix evaluate(const PolyMatrix& matrix, const std::vector<Rational>& point);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n,
                                                      std::size_t k);

} // namespace exactsdp
