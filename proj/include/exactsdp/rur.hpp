#pragma once

#include <random>
#include <vector>

#include "exactsdp/fglm.hpp"
#include "exactsdp/upoly.hpp"

namespace exactsdp {

/// Rational univariate parametrization of a finite point set:
///   { (q1(t)/q0(t), ..., qn(t)/q0(t)) : q(t) = 0 }.
/// q is squarefree, integer-primitive, with positive leading coefficient;
/// q0 does not vanish at any root of q. The empty set is encoded as q = 1,
/// q0 = 1 and all qi = 0.
struct RatPar {
  UPoly q;
  UPoly q0;
  std::vector<UPoly> qi;
  std::vector<long> lambda; // separating form sum(lambda_i x_i); empty when
                            // the set is empty

  std::size_t dimension() const { return qi.size(); }
  bool is_empty() const { return q.degree() <= 0; }
};

/// The encoding of the empty set in n coordinates.
RatPar ratpar_empty(std::size_t n);

/// Restores the normalization invariants in place: q integer-primitive with
/// positive leading coefficient, (q0, q1..qn) jointly integer-primitive
/// with q0's leading coefficient positive. Encoded values are unchanged.
void ratpar_normalize(RatPar& par);

/// Parametrization of the (finite) variety of a zero-dimensional ideal.
/// Separating linear forms are tried starting from x_1 and then drawn from
/// `rng`; each candidate is accepted or rejected by an exact criterion
/// (degree of the squarefree eliminating polynomial versus the rank of the
/// trace form). Fails with a dimension error on non-finite ideals and a
/// randomness error when no separating form is found within the retry cap.
RatPar ratpar_of_ideal(const Ideal& ideal, std::mt19937_64& rng,
                       const GroebnerOptions& opt = {});

/// Reconstructs the defining ideal of the parametrized set over `space`
/// (one variable per coordinate).
Ideal ideal_of_ratpar(const RatPar& par, const SpacePtr& space,
                      const GroebnerOptions& opt = {});

/// One member of a union: the defining ideal of a finite set, optionally
/// with an already-computed parametrization of the same set.
struct UnionPart {
  const Ideal* ideal = nullptr;
  const RatPar* par = nullptr;
};

/// Parametrization of the union of the parts' (finite) varieties. Parts
/// with an empty variety are dropped, as are parts whose reduced basis
/// duplicates an earlier one. A single separating linear form for the whole
/// union is searched (x_1 first, then draws from `rng`); each surviving
/// part is parametrized in that form and the parts are merged by Chinese
/// remaindering, with exact agreement checks on overlapping roots. The
/// merged parametrization has constant denominator q0.
RatPar ratpar_union_merged(const std::vector<UnionPart>& parts,
                           const SpacePtr& space, std::mt19937_64& rng,
                           const GroebnerOptions& opt = {});

/// Union of parametrized sets given without their ideals: each part's
/// defining ideal is reconstructed first, then the parts are merged as in
/// ratpar_union_merged.
RatPar ratpar_union(const std::vector<RatPar>& parts, const SpacePtr& space,
                    std::mt19937_64& rng, const GroebnerOptions& opt = {});

/// Number of points of the parametrized set (degree of q).
long ratpar_point_count(const RatPar& par);

} // namespace exactsdp
