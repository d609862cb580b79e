#pragma once

#include <optional>
#include <vector>

#include "exactsdp/groebner.hpp"
#include "exactsdp/polymatrix.hpp"
#include "exactsdp/qmatrix.hpp"

namespace exactsdp {

/// Symmetric linear matrix pencil A(x) = A_0 + x_1 A_1 + ... + x_n A_n.
struct Pencil {
  std::size_t m = 0;          // matrix size
  std::size_t n = 0;          // number of variables
  std::vector<QMatrix> mats;  // n+1 symmetric m x m matrices, A_0 first
};

/// Shape/symmetry validation; throws a usage error on malformed input.
void validate_pencil(const Pencil& pencil);

QMatrix evaluate_pencil(const Pencil& pencil, const std::vector<Rational>& x);

/// A(x) as an m x m matrix of degree-<=1 polynomials over `space`, whose
/// first n variables are the pencil coordinates.
PolyMatrix pencil_poly(const Pencil& pencil, const SpacePtr& space,
                       const MonomialOrder& order);

/// Kernel support: the rows of Y pinned to the identity (0-based, sorted).
struct KernelSupport {
  std::size_t p = 0;               // target rank
  std::vector<std::size_t> rows;   // size m - p
};

/// All supports for a stratum, in lexicographic order.
std::vector<KernelSupport> all_supports(std::size_t m, std::size_t p);

/// The reduced incidence system for (A, p, iota): entries of A(x).Y(y) after
/// pinning the iota-rows of Y to the identity, keeping one of each
/// symmetric pair inside the pinned block. Variables are (x, ybar) where
/// ybar holds the p(m-p) free entries of Y.
struct IncidenceSystem {
  std::size_t p = 0;
  KernelSupport support;
  SpacePtr space;          // blocks: x (n), y (p(m-p); absent when p = 0)
  PolySystem f_red;        // (m-p)(m+p+1)/2 generators, bidegree <= (1,1)
  std::size_t full_count = 0; // generator count before the identity
                              // substitution: m(m-p) + C(m-p+1, 2)
};

IncidenceSystem build_incidence_reduced(const Pencil& pencil, std::size_t p,
                                        const std::vector<std::size_t>& rows);

/// The discarded upper entries of the pinned block (for ideal-equivalence
/// checks: each must reduce to zero modulo the kept generators).
PolySystem incidence_discarded_entries(const Pencil& pencil,
                                       const IncidenceSystem& inc);

/// Expected substituted generator count (m-p)(m+p+1)/2.
std::size_t incidence_generator_count(std::size_t m, std::size_t p);
/// Generator count before substitution: m(m-p) + C(m-p+1, 2).
std::size_t incidence_full_count(std::size_t m, std::size_t p);

/// Certifies that the incidence variety is smooth of the expected
/// codimension c = #f_red: the Jacobian must keep full row rank c at every
/// complex point of the variety. Rank deficiency is expressed through a
/// nonzero left-kernel vector rather than through determinantal minors: for
/// each affine chart w_k = 1 of the kernel direction, the system
/// {f_red, w^T jac f_red, w_k = 1} must be infeasible (unit ideal). This is
/// equivalent to the minors of jac f_red cutting the variety down to the
/// empty set, but every generator stays at degree <= 2.
bool incidence_smooth(const IncidenceSystem& inc,
                      const GroebnerOptions& opt = {});

struct RegularityReport {
  bool regular = true;
  std::size_t p = 0;
  std::optional<KernelSupport> failing; // set when regular is false
};

/// Smoothness/equidimensionality gate for the rank-p stratum: every support
/// must yield a variety that is empty, finite, or smooth of the expected
/// codimension (empty singular locus by the Jacobian criterion).
RegularityReport check_regularity_report(const Pencil& pencil, std::size_t p,
                                         const GroebnerOptions& opt = {});

bool check_regularity(const Pencil& pencil, std::size_t p,
                      const GroebnerOptions& opt = {});

} // namespace exactsdp
