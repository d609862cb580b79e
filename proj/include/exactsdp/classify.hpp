#pragma once

#include <vector>

#include "exactsdp/algebraic.hpp"
#include "exactsdp/pencil.hpp"
#include "exactsdp/rur.hpp"

namespace exactsdp {

struct Classification {
  bool is_psd = false;
  std::size_t rank = 0;
};

/// Positive semidefiniteness and rank of a symmetric rational matrix, read
/// off the signs of the elementary symmetric functions of the eigenvalues
/// (the signed characteristic-polynomial coefficients): PSD iff all are
/// nonnegative, rank = largest index with a nonzero one.
Classification classify_qmatrix(const QMatrix& a);

Classification classify_matrix(const Pencil& pencil,
                               const std::vector<Rational>& x);

/// Classification of A(x(root)) for a parametrized point x_i = q_i/q0 at a
/// root of par.q. Works with q0(t) A(x(t)) modulo the defining polynomial,
/// correcting each sign by the sign of q0 at the root, so every test is an
/// exact sign evaluation at the algebraic number. The root must satisfy
/// par.q (else a field error).
Classification classify_matrix(const Pencil& pencil, const RatPar& par,
                               const AlgebraicNumber& root);

/// Convenience overload for a vector of coordinates: all must be rational
/// (independent algebraic coordinates carry no root correlation, which a
/// sound classification needs — pass the parametrized form instead; a mixed
/// or truly algebraic vector raises a field error).
Classification classify_matrix(const Pencil& pencil,
                               const std::vector<AlgebraicNumber>& x);

} // namespace exactsdp
