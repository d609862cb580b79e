#include "exactsdp/classify.hpp"

#include <string>

#include "exactsdp/errors.hpp"

namespace exactsdp {

namespace {

// Classification from the signs of the elementary symmetric functions e_k of
// the eigenvalues, k = 1..m: PSD iff no sign is negative, rank = largest k
// with e_k != 0. Valid because the matrix is symmetric (real spectrum).
Classification from_signs(const std::vector<int>& signs) {
  Classification out;
  out.is_psd = true;
  out.rank = 0;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] < 0) out.is_psd = false;
    if (signs[k] != 0) out.rank = k + 1;
  }
  return out;
}

int sign_of(const Rational& v) { return sgn(v); }

} // namespace

Classification classify_qmatrix(const QMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::usage, "matrix must be square");
  if (!a.is_symmetric())
    fail(ErrorKind::usage, "classification needs a symmetric matrix");
  const std::size_t m = a.rows();
  const std::vector<Rational> c = a.char_poly();
  // det(tI - A) = t^m + c[m-1] t^(m-1) + ... + c[0]; e_k = (-1)^k c[m-k].
  std::vector<int> signs(m);
  for (std::size_t k = 1; k <= m; ++k) {
    int s = sign_of(c[m - k]);
    if (k % 2 == 1) s = -s;
    signs[k - 1] = s;
  }
  return from_signs(signs);
}

Classification classify_matrix(const Pencil& pencil,
                               const std::vector<Rational>& x) {
  return classify_qmatrix(evaluate_pencil(pencil, x));
}

Classification classify_matrix(const Pencil& pencil, const RatPar& par,
                               const AlgebraicNumber& root) {
  validate_pencil(pencil);
  if (par.dimension() != pencil.n)
    fail(ErrorKind::usage, "parametrization dimension does not match pencil");
  if (sign_at(par.q, root) != 0)
    fail(ErrorKind::field,
         "point does not lie on the parametrization's defining polynomial");

  if (root.is_rational()) {
    const Rational t = root.rational_value();
    const Rational d = par.q0.evaluate(t);
    if (d == 0)
      fail(ErrorKind::field, "denominator vanishes at the given root");
    std::vector<Rational> x(pencil.n);
    for (std::size_t i = 0; i < pencil.n; ++i)
      x[i] = par.qi[i].evaluate(t) / d;
    return classify_matrix(pencil, x);
  }

  const UPoly& qbar = par.q;
  const std::size_t m = pencil.m;

  // B(t) = q0(t) A(x(t)) entrywise, reduced modulo the defining polynomial.
  std::vector<UPoly> b(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      UPoly entry = par.q0 * UPoly::constant(pencil.mats[0].at(r, c));
      for (std::size_t i = 0; i < pencil.n; ++i)
        entry = entry + par.qi[i] * UPoly::constant(pencil.mats[i + 1].at(r, c));
      b[r * m + c] = entry.mod(qbar);
    }

  // Power sums s_j = trace(B^j) in Q[t]/(qbar), then Newton's identities for
  // the elementary symmetric functions E_k of the eigenvalues of B.
  auto mat_mul = [&](const std::vector<UPoly>& u, const std::vector<UPoly>& v) {
    std::vector<UPoly> w(m * m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        UPoly acc;
        for (std::size_t l = 0; l < m; ++l)
          acc = acc + u[r * m + l] * v[l * m + c];
        w[r * m + c] = acc.mod(qbar);
      }
    return w;
  };
  auto trace_of = [&](const std::vector<UPoly>& u) {
    UPoly acc;
    for (std::size_t r = 0; r < m; ++r) acc = acc + u[r * m + r];
    return acc.mod(qbar);
  };

  std::vector<UPoly> s(m + 1); // s[j] = trace(B^j), s[0] unused
  std::vector<UPoly> power = b;
  for (std::size_t j = 1; j <= m; ++j) {
    s[j] = trace_of(power);
    if (j < m) power = mat_mul(power, b);
  }
  std::vector<UPoly> e(m + 1);
  e[0] = UPoly::constant(Rational(1));
  for (std::size_t k = 1; k <= m; ++k) {
    UPoly acc;
    for (std::size_t i = 1; i <= k; ++i) {
      UPoly term = e[k - i] * s[i];
      if (i % 2 == 0) term = -term;
      acc = acc + term;
    }
    e[k] = (acc * Rational(Rational(1) / Rational(static_cast<long>(k))))
               .mod(qbar);
  }

  // e_k(A) = E_k / q0^k, so sign e_k(A) = sign E_k * sign(q0)^k.
  const int s0 = sign_at(par.q0, root);
  if (s0 == 0) fail(ErrorKind::field, "denominator vanishes at the given root");
  std::vector<int> signs(m);
  for (std::size_t k = 1; k <= m; ++k) {
    int sk = sign_at(e[k], root);
    if (s0 < 0 && k % 2 == 1) sk = -sk;
    signs[k - 1] = sk;
  }
  return from_signs(signs);
}

Classification classify_matrix(const Pencil& pencil,
                               const std::vector<AlgebraicNumber>& x) {
  validate_pencil(pencil);
  if (x.size() != pencil.n)
    fail(ErrorKind::usage, "point dimension does not match pencil");
  std::vector<Rational> rat;
  rat.reserve(x.size());
  for (const AlgebraicNumber& xi : x) {
    if (!xi.is_rational())
      fail(ErrorKind::field,
           "coordinates must share one parametrized field; pass the "
           "parametrization and root instead of independent algebraic values");
    rat.push_back(xi.rational_value());
  }
  return classify_matrix(pencil, rat);
}

} // namespace exactsdp
