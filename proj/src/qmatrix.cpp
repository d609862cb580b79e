#include "exactsdp/qmatrix.hpp"

#include "exactsdp/errors.hpp"

namespace exactsdp {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorKind::size, "matrix product shape");
  QMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        if (other.at(k, c) == 0) continue;
        out.at(r, c) += a * other.at(k, c);
      }
    }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    fail(ErrorKind::size, "matrix sum shape");
  QMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    fail(ErrorKind::size, "matrix difference shape");
  QMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

QMatrix QMatrix::operator*(const Rational& c) const {
  QMatrix out(*this);
  for (auto& v : out.data_) v *= c;
  return out;
}

bool QMatrix::operator==(const QMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool QMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

Rational QMatrix::trace() const {
  Rational t(0);
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
  return t;
}

std::vector<std::size_t> QMatrix::rref_in_place() {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols_ && lead < rows_; ++col) {
    std::size_t piv = lead;
    while (piv < rows_ && at(piv, col) == 0) ++piv;
    if (piv == rows_) continue;
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap(at(piv, c), at(lead, c));
    Rational inv = Rational(1) / at(lead, col);
    for (std::size_t c = col; c < cols_; ++c) at(lead, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead || at(r, col) == 0) continue;
      Rational f = at(r, col);
      for (std::size_t c = col; c < cols_; ++c) at(r, c) -= f * at(lead, c);
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

std::size_t QMatrix::rank() const {
  QMatrix copy(*this);
  return copy.rref_in_place().size();
}

std::vector<std::vector<Rational>> QMatrix::nullspace() const {
  QMatrix r(*this);
  std::vector<std::size_t> pivots = r.rref_in_place();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -r.at(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> QMatrix::solve(
    const std::vector<Rational>& b) const {
  if (b.size() != rows_) fail(ErrorKind::size, "solve rhs shape");
  QMatrix aug(rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_) = b[r];
  }
  std::vector<std::size_t> pivots = aug.rref_in_place();
  for (std::size_t p : pivots)
    if (p == cols_) return std::nullopt; // pivot in rhs: inconsistent
  std::vector<Rational> x(cols_, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = aug.at(i, cols_);
  return x;
}

std::optional<QMatrix> QMatrix::inverse() const {
  if (rows_ != cols_) fail(ErrorKind::size, "inverse of non-square matrix");
  QMatrix aug(rows_, 2 * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_ + r) = 1;
  }
  std::vector<std::size_t> pivots = aug.rref_in_place();
  if (pivots.size() != rows_) return std::nullopt;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] != i) return std::nullopt;
  QMatrix inv(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) inv.at(r, c) = aug.at(r, cols_ + c);
  return inv;
}

std::vector<Rational> QMatrix::char_poly() const {
  if (rows_ != cols_) fail(ErrorKind::size, "char poly of non-square matrix");
  std::size_t n = rows_;
  // Power sums p_k = tr(A^k), then Newton's identities for the elementary
  // symmetric functions e_k of the eigenvalues.
  std::vector<Rational> p(n + 1, Rational(0));
  QMatrix power = identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * (*this);
    p[k] = power.trace();
  }
  std::vector<Rational> e(n + 1, Rational(0));
  e[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational acc(0);
    for (std::size_t i = 1; i <= k; ++i) {
      Rational t = e[k - i] * p[i];
      if (i % 2 == 0) acc -= t; else acc += t;
    }
    e[k] = acc / Rational(static_cast<long>(k));
  }
  // det(tI - A) = sum_k (-1)^k e_k t^(n-k); coefficients low..high minus the
  // leading 1: coeff of t^j is (-1)^(n-j) e_{n-j}.
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rational v = e[n - j];
    if ((n - j) % 2 == 1) v = -v;
    c[j] = v;
  }
  return c;
}

LDLT QMatrix::ldlt_psd() const {
  LDLT out;
  if (rows_ != cols_ || !is_symmetric())
    fail(ErrorKind::size, "ldlt requires a symmetric matrix");
  std::size_t n = rows_;
  QMatrix a(*this);
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  out.unit_lower = identity(n);
  out.diag.assign(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    // First nonzero diagonal pivot at or after k.
    std::size_t piv = k;
    while (piv < n && a.at(piv, piv) == 0) ++piv;
    if (piv == n) {
      // All remaining diagonal entries vanish; PSD forces the whole
      // remaining block to vanish.
      for (std::size_t r = k; r < n; ++r)
        for (std::size_t c = k; c < n; ++c)
          if (a.at(r, c) != 0) return out; // indefinite
      out.rank = k;
      out.success = true;
      return out;
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a.at(piv, c), a.at(k, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(a.at(r, piv), a.at(r, k));
      std::swap(out.perm[piv], out.perm[k]);
      for (std::size_t c = 0; c < k; ++c)
        std::swap(out.unit_lower.at(piv, c), out.unit_lower.at(k, c));
    }
    Rational d = a.at(k, k);
    if (d < 0) return out; // negative pivot: not PSD
    out.diag[k] = d;
    for (std::size_t r = k + 1; r < n; ++r) {
      Rational l = a.at(r, k) / d;
      out.unit_lower.at(r, k) = l;
      for (std::size_t c = k + 1; c <= r; ++c) {
        a.at(r, c) -= l * a.at(k, c);
        a.at(c, r) = a.at(r, c);
      }
      a.at(r, k) = 0;
      a.at(k, r) = 0;
    }
  }
  out.rank = 0;
  for (const auto& d : out.diag)
    if (d != 0) ++out.rank;
  out.success = true;
  return out;
}

} // namespace exactsdp
