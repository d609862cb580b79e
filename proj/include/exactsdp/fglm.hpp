#pragma once

#include <optional>
#include <vector>

#include "exactsdp/groebner.hpp"
#include "exactsdp/qmatrix.hpp"

namespace exactsdp {

/// True when the quotient by the ideal is a finite-dimensional Q-vector
/// space (the variety has finitely many points). The unit ideal counts as
/// zero-dimensional (empty variety).
bool is_zero_dimensional(const Ideal& ideal, const GroebnerOptions& opt = {});

/// Monomials under the staircase of the reduced basis, sorted increasingly
/// by `order`. Empty for the unit ideal. Fails with a resource error if the
/// staircase is not finite.
std::vector<Monomial> quotient_basis(const std::vector<MultiPoly>& basis,
                                     const MonomialOrder& order,
                                     const SpacePtr& space);

/// Matrix of multiplication by variable `var` on the quotient, in the
/// coordinates of `qbasis` (column j holds the coordinates of
/// NF(x_var * qbasis[j])).
QMatrix multiplication_matrix(const std::vector<MultiPoly>& basis,
                              const std::vector<Monomial>& qbasis,
                              std::size_t var, long* budget = nullptr);

/// All multiplication matrices, one per variable of the space.
std::vector<QMatrix> multiplication_matrices(
    const std::vector<MultiPoly>& basis, const std::vector<Monomial>& qbasis,
    const SpacePtr& space, long* budget = nullptr);

/// Change of order for a zero-dimensional ideal: converts the reduced basis
/// `source` (any order) into the reduced basis for `target`.
std::vector<MultiPoly> fglm_convert(const std::vector<MultiPoly>& source,
                                    const SpacePtr& space,
                                    const MonomialOrder& target,
                                    const GroebnerOptions& opt = {});

/// Elimination ideal: drops the variables flagged in `drop`, returning an
/// ideal over `target` (kept variables renumbered through `var_map`, indexed
/// by source variable; dropped entries must be nullopt). Uses FGLM through a
/// block order when the ideal is zero-dimensional, otherwise a direct
/// block-order basis computation. The returned ideal arrives with its
/// grevlex basis already cached.
Ideal eliminate(const Ideal& ideal, const std::vector<bool>& drop,
                SpacePtr target,
                const std::vector<std::optional<std::size_t>>& var_map,
                const GroebnerOptions& opt = {});

} // namespace exactsdp
