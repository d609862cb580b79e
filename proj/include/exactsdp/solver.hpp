#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactsdp/classify.hpp"
#include "exactsdp/lagrange.hpp"
#include "exactsdp/pencil.hpp"
#include "exactsdp/rur.hpp"

namespace exactsdp {

struct SolverConfig {
  std::size_t r = 0;           // rank bound, 0..m
  std::vector<Rational> cost;  // empty or all-zero: feasibility-witness mode
                               // with a seed-derived generic cost
  unsigned long seed = 0;
  int digits = 20;             // significant digits in decimal renderings
  std::size_t jobs = 1;        // worker threads across (p, support) tasks
  GroebnerOptions groebner;
  bool use_full_lagrange = false; // cross-validation route
};

/// One isolated real candidate point of the critical-point parametrization.
struct Candidate {
  IsolatingInterval interval; // canonical isolating interval of the root t
  bool root_is_rational = false;
  std::vector<Rational> rational_coords;        // exact, when root rational
  std::vector<std::string> coords_decimal;      // always present
  std::vector<IsolatingInterval> coords_enclosure;
  bool is_psd = false;
  std::size_t rank = 0;
  bool feasible = false; // is_psd and rank <= r
  std::optional<Rational> objective_rational;
  std::optional<IsolatingInterval> objective_enclosure;
  std::string objective_decimal; // empty in feasibility-witness mode
  // Provenance: first stratum (p ascending, support lexicographic) whose
  // projected ideal contains the point. Absent for standalone filtering.
  std::optional<std::size_t> stratum_p;
  std::vector<std::size_t> stratum_rows;
};

struct SolutionReport {
  std::size_t m = 0, n = 0, r = 0;
  std::vector<Rational> cost_used;
  bool degenerate_cost = false; // cost was absent/zero; generic substituted
  std::vector<std::string> notes;
  RatPar parametrization;                      // union over all strata
  std::vector<RatPar> stratum_parametrizations; // index = p, 0..min(r, m-1)
  std::vector<Candidate> candidates;           // sorted (see below)
  std::vector<std::size_t> feasible;           // indices into candidates
  std::vector<std::size_t> minimizers;         // feasible attaining the min
  std::vector<std::size_t> rank_profile;       // feasible counts by rank 0..m
  int digits = 20;
};

/// Deterministic generic integer cost derived from the seed (never zero).
std::vector<Rational> generic_cost(std::size_t n, unsigned long seed);

/// Elimination of the kernel and multiplier blocks from a critical-point
/// system, with the cost coordinate change undone: the result lives in
/// Q[x1..xn] and cuts out the projection of the critical locus.
Ideal project_to_x(const LagrangeSystem& sys, const GroebnerOptions& opt = {});

/// Candidate parametrization of one rank stratum: union over all kernel
/// supports of the projected critical points (or of the whole incidence
/// variety when it is finite, every point of which is critical). Raises a
/// regularity error when some support fails the smoothness gate.
RatPar solve_stratum(const Pencil& pencil, const std::vector<Rational>& cost,
                     std::size_t p, const SolverConfig& config);

/// Full pipeline: strata p = 0..min(r, m-1), per-support critical-point
/// systems, union parametrization, root isolation, classification,
/// feasibility filtering and exact objective sort.
SolutionReport solve_sdp(const Pencil& pencil, const SolverConfig& config);

/// Post-processing alone: isolate the real roots of a given parametrization,
/// classify each point, filter by feasibility for rank bound r, sort by the
/// exact objective. `cost` may be empty (feasibility-witness mode: no
/// objective fields, minimizers = all feasible points).
SolutionReport filter_and_sort(const Pencil& pencil, const RatPar& par,
                               std::size_t r,
                               const std::vector<Rational>& cost,
                               int digits = 20);

} // namespace exactsdp
