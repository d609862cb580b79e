#pragma once

#include <vector>

#include "exactsdp/pencil.hpp"

namespace exactsdp {

/// Exact binomial coefficient (0 when k > n).
Integer binomial(unsigned long n, unsigned long k);

/// Invertible linear change of coordinates sending the cost functional
/// c^T x to the first new coordinate: x' = forward * x, with forward's first
/// row equal to c and the remaining rows unit vectors (the row of c's first
/// nonzero entry is the one omitted). Identity when c = e_1.
struct CoordinateChange {
  QMatrix forward;
  QMatrix backward; // inverse of forward
  bool is_identity = true;
};

CoordinateChange cost_coordinate_change(const std::vector<Rational>& cost);

/// Critical-point system for the cost on one incidence stratum, in the
/// compressed form: the reduced incidence equations together with the
/// multiplier equations for every coordinate except the (transformed) cost
/// coordinate, the last multiplier normalized to 1.
/// Equation count: c_p + (n - 1) + p(m-p) with c_p = (m-p)(m+p+1)/2;
/// variables: x' (n), free kernel entries (p(m-p)), multipliers (c_p - 1).
struct LagrangeSystem {
  std::size_t p = 0;
  KernelSupport support;
  SpacePtr space;          // blocks "x", "y" (p > 0), "z" (c_p > 1)
  PolySystem equations;
  CoordinateChange change; // the x-block holds transformed coordinates
};

LagrangeSystem build_lagrange_compressed(const Pencil& pencil,
                                         const std::vector<Rational>& cost,
                                         std::size_t p,
                                         const std::vector<std::size_t>& rows);

/// Uncompressed critical-point system kept for cross-validation: all kernel
/// entries stay variables constrained to the pinned identity, one multiplier
/// per incidence equation, the cost multiplier normalized to 1, and gradient
/// equations for every coordinate (no change of coordinates). For p = 0 the
/// kernel block is empty and the incidence equations are the lower entries
/// of A(x).
struct LagrangeFullSystem {
  std::size_t p = 0;
  KernelSupport support;
  SpacePtr space; // blocks "x", "y" (p > 0), "z"
  PolySystem equations;
};

LagrangeFullSystem build_lagrange_full(const Pencil& pencil,
                                       const std::vector<Rational>& cost,
                                       std::size_t p,
                                       const std::vector<std::size_t>& rows);

/// Bound on the number of critical points contributed by one support of the
/// rank-p stratum, as the multilinear Bezout number of the compressed
/// system: the coefficient of s_x^n s_y^(p(m-p)) s_z^(c_p - 1) in
/// (s_x + s_y)^(c_p) (s_y + s_z)^(n-1) (s_x + s_z)^(p(m-p)).
Integer theta_bound(std::size_t m, std::size_t n, std::size_t p);

/// Same bound evaluated by expanding the product (independent check).
Integer theta_bound_by_expansion(std::size_t m, std::size_t n, std::size_t p);

/// Sum over strata p = 0..min(r, m-1) of C(m, p) * theta(m, n, p): a bound
/// on the total number of candidate points the solver can emit.
Integer total_theta_bound(std::size_t m, std::size_t n, std::size_t r);

} // namespace exactsdp
