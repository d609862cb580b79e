#pragma once

#include <optional>
#include <vector>

#include "exactsdp/rational.hpp"

namespace exactsdp {

struct LDLT;

/// Dense matrix over Q with the exact kernels the solver needs: rank, RREF,
/// nullspace, linear solve, LDL^T with symmetric pivoting, characteristic
/// polynomial. Pivoting is first-nonzero (exact arithmetic needs no magnitude
/// heuristics), which keeps every routine deterministic.
class QMatrix {
public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& other) const;
  QMatrix operator+(const QMatrix& other) const;
  QMatrix operator-(const QMatrix& other) const;
  QMatrix operator*(const Rational& c) const;
  bool operator==(const QMatrix& other) const;

  bool is_symmetric() const;
  Rational trace() const;

  std::size_t rank() const;
  /// Reduced row echelon form; returns pivot column indices.
  std::vector<std::size_t> rref_in_place();
  /// Basis of the right nullspace (columns of the returned matrices are
  /// returned as vectors). Deterministic free-variable ordering.
  std::vector<std::vector<Rational>> nullspace() const;
  /// One solution of A x = b, or nullopt when inconsistent.
  std::optional<std::vector<Rational>> solve(
      const std::vector<Rational>& b) const;
  /// Inverse; nullopt when singular.
  std::optional<QMatrix> inverse() const;

  /// Characteristic polynomial coefficients c with
  /// det(tI - A) = t^n + c[n-1] t^(n-1) + ... + c[0].
  /// Computed from power-sum traces via Newton's identities.
  std::vector<Rational> char_poly() const;

  /// P A P' = L D L' for symmetric PSD input; fails (success = false) when
  /// the matrix is not PSD. Pivots on the first nonzero diagonal entry.
  LDLT ldlt_psd() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

struct LDLT {
  bool success = false;           // false: matrix is not PSD
  std::vector<std::size_t> perm;  // row/col permutation applied
  QMatrix unit_lower;             // L, unit diagonal
  std::vector<Rational> diag;     // D entries (>= 0 on success)
  std::size_t rank = 0;           // number of nonzero pivots
};

} // namespace exactsdp
