#pragma once

#include <map>
#include <string>
#include <vector>

#include "exactsdp/poly.hpp"

namespace exactsdp {

/// Knobs shared by every Groebner-basis computation. The step budget counts
/// elementary reduction steps (one polynomial merge each) across a single
/// top-level call; exceeding it raises a resource error. The default comes
/// from EXACTSDP_STEP_BUDGET when set.
struct GroebnerOptions {
  long step_budget;

  GroebnerOptions();
};

long default_step_budget();

/// Reduced monic Groebner basis of the given generators with respect to
/// `order`, sorted by increasing leading monomial. The zero ideal yields an
/// empty basis; the unit ideal yields {1}.
std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens,
                                      const MonomialOrder& order,
                                      const GroebnerOptions& opt = {});

/// Remainder of f under full division by `basis` (need not be a Groebner
/// basis, but results are only canonical when it is).
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                      long* budget = nullptr);

/// True when the (reduced) basis generates the unit ideal.
bool is_unit_basis(const std::vector<MultiPoly>& basis);

/// Polynomial ideal with memoized reduced Groebner bases, keyed by monomial
/// order. Bases can be seeded when a computation elsewhere already produced
/// one (e.g. the kept block of an elimination-order basis).
class Ideal {
public:
  Ideal(SpacePtr space, std::vector<MultiPoly> gens);

  const SpacePtr& space() const { return space_; }
  const std::vector<MultiPoly>& generators() const { return gens_; }

  const std::vector<MultiPoly>& basis(const MonomialOrder& order,
                                      const GroebnerOptions& opt = {}) const;
  void seed_basis(const MonomialOrder& order, std::vector<MultiPoly> basis);

  bool is_unit(const GroebnerOptions& opt = {}) const;

private:
  SpacePtr space_;
  std::vector<MultiPoly> gens_;
  mutable std::map<std::string, std::vector<MultiPoly>> cache_;
};

} // namespace exactsdp
