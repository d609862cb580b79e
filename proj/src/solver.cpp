#include "exactsdp/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "exactsdp/errors.hpp"
#include "exactsdp/fglm.hpp"

namespace exactsdp {

namespace {

std::mt19937_64 derive_rng(unsigned long master, unsigned long a,
                           unsigned long b) {
  std::seed_seq seq{static_cast<unsigned int>(master & 0xffffffffUL),
                    static_cast<unsigned int>(master >> 32),
                    static_cast<unsigned int>(a),
                    static_cast<unsigned int>(b)};
  return std::mt19937_64(seq);
}

constexpr unsigned long kUnionTag = 0x756e696fUL;   // per-stratum unions
constexpr unsigned long kGlobalTag = 0xffffffffUL;  // final union
constexpr unsigned long kCostTag = 0x636f7374UL;    // generic cost draw

bool trace_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("EXACTSDP_TRACE");
    return v && *v && std::string(v) != "0";
  }();
  return on;
}

struct StageClock {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  void lap(const char* what, std::size_t p, const std::string& rows) {
    if (!trace_enabled()) return;
    const auto now = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(now - start).count();
    std::fprintf(stderr, "[solve] p=%zu rows=%s %s: %.1f ms\n", p,
                 rows.c_str(), what, ms);
    start = now;
  }
};

std::string support_text(const std::vector<std::size_t>& rows) {
  std::string out = "{";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(rows[i] + 1);
  }
  return out + "}";
}

// q0^deg(g) * g(q1/q0, ..., qn/q0), reduced modulo the defining polynomial.
UPoly substitute_par(const MultiPoly& g, const RatPar& par) {
  const uint32_t d = g.total_degree();
  UPoly acc;
  for (const Term& t : g.terms()) {
    UPoly term = UPoly::constant(t.coeff);
    uint32_t used = 0;
    for (std::size_t v = 0; v < t.mono.nvars(); ++v)
      for (uint16_t e = 0; e < t.mono[v]; ++e) {
        term = (term * par.qi[v]).mod(par.q);
        ++used;
      }
    for (uint32_t e = used; e < d; ++e) term = (term * par.q0).mod(par.q);
    acc = acc + term;
  }
  return acc.mod(par.q);
}

// Drops the roots of par.q at which every p x p minor of the pencil
// vanishes, i.e. the parametrized points where rank A(x) < p; the kept
// parametrization describes exactly the rank-p members of the stratum.
RatPar keep_exact_rank(const Pencil& pencil, RatPar par, std::size_t p) {
  if (p == 0 || par.is_empty()) return par;
  const SpacePtr xspace = make_x_space(pencil.n);
  PolyMatrix ax = pencil_poly(pencil, xspace, MonomialOrder::grevlex());
  UPoly drop = par.q.monic();
  for (const MultiPoly& minor : minors(ax, p)) {
    if (drop.degree() == 0) break;
    drop = upoly_gcd(drop, substitute_par(minor, par));
  }
  if (drop.degree() == 0) return par;
  UPoly keep = par.q.divmod(drop).first;
  if (keep.degree() == 0) return ratpar_empty(pencil.n);
  RatPar out;
  out.q = keep.primitive();
  out.q0 = out.q.derivative();
  const UPoly inv0 = upoly_inverse_mod(par.q0, out.q.monic());
  out.qi.resize(par.qi.size());
  for (std::size_t i = 0; i < par.qi.size(); ++i)
    out.qi[i] = (par.qi[i] * inv0 * out.q0).mod(out.q);
  out.lambda = par.lambda;
  ratpar_normalize(out);
  return out;
}

struct Task {
  std::size_t p = 0;
  std::vector<std::size_t> rows;
  std::size_t index_in_stratum = 0;
};

struct TaskResult {
  bool regular = true;
  RatPar par;
  std::optional<Ideal> xideal; // projected ideal; absent when empty
};

// Elimination of every non-x variable of `ideal` into a fresh Q[x1..xn].
Ideal eliminate_to_x(const Ideal& ideal, std::size_t n,
                     const GroebnerOptions& opt) {
  const std::size_t total = ideal.space()->size();
  std::vector<bool> drop(total, true);
  std::vector<std::optional<std::size_t>> var_map(total);
  for (std::size_t v = 0; v < n; ++v) {
    drop[v] = false;
    var_map[v] = v;
  }
  return eliminate(ideal, drop, make_x_space(n), var_map, opt);
}

TaskResult solve_support(const Pencil& pencil,
                         const std::vector<Rational>& cost, std::size_t p,
                         const std::vector<std::size_t>& rows,
                         std::mt19937_64 rng, const GroebnerOptions& opt,
                         bool use_full) {
  const std::size_t n = pencil.n;
  TaskResult result;
  StageClock clock;
  const std::string rows_text = support_text(rows);

  IncidenceSystem inc = build_incidence_reduced(pencil, p, rows);
  Ideal incidence(inc.space, inc.f_red);
  if (incidence.is_unit(opt)) {
    result.par = ratpar_empty(n);
    clock.lap("incidence empty", p, rows_text);
    return result;
  }

  if (is_zero_dimensional(incidence, opt)) {
    // Finite incidence variety: every point is critical for any cost, so
    // the multiplier stage is unnecessary; project directly.
    clock.lap("incidence finite", p, rows_text);
    Ideal xideal = eliminate_to_x(incidence, n, opt);
    clock.lap("projection", p, rows_text);
    result.par = ratpar_of_ideal(xideal, rng, opt);
    result.xideal = std::move(xideal);
    clock.lap("parametrization", p, rows_text);
    return result;
  }

  // Positive-dimensional: smoothness gate via the Jacobian criterion before
  // introducing multipliers.
  {
    const bool regular = incidence_smooth(inc, opt);
    clock.lap("smoothness gate", p, rows_text);
    if (!regular) {
      result.regular = false;
      return result;
    }
  }

  Ideal xideal = [&] {
    if (use_full) {
      LagrangeFullSystem sys = build_lagrange_full(pencil, cost, p, rows);
      Ideal lag(sys.space, sys.equations);
      return eliminate_to_x(lag, n, opt);
    }
    LagrangeSystem sys = build_lagrange_compressed(pencil, cost, p, rows);
    return project_to_x(sys, opt);
  }();
  clock.lap("projection", p, rows_text);
  result.par = ratpar_of_ideal(xideal, rng, opt);
  result.xideal = std::move(xideal);
  clock.lap("parametrization", p, rows_text);
  return result;
}

std::vector<Task> stratum_tasks(std::size_t m, std::size_t p) {
  std::vector<Task> tasks;
  std::size_t idx = 0;
  for (KernelSupport& s : all_supports(m, p))
    tasks.push_back(Task{p, std::move(s.rows), idx++});
  return tasks;
}

std::vector<TaskResult> run_tasks(const Pencil& pencil,
                                  const std::vector<Rational>& cost,
                                  const std::vector<Task>& tasks,
                                  const SolverConfig& config) {
  std::vector<std::optional<TaskResult>> slots(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());

  auto run_one = [&](std::size_t i) {
    try {
      slots[i] = solve_support(
          pencil, cost, tasks[i].p, tasks[i].rows,
          derive_rng(config.seed, tasks[i].p, tasks[i].index_in_stratum),
          config.groebner, config.use_full_lagrange);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const std::size_t jobs =
      std::max<std::size_t>(1, std::min(config.jobs, tasks.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          run_one(i);
        }
      });
    for (std::thread& t : workers) t.join();
  }

  // Deterministic error selection: the first task (p ascending, support
  // lexicographic) that failed wins, independent of scheduling.
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  std::vector<TaskResult> out;
  out.reserve(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!slots[i]->regular)
      fail(ErrorKind::regularity,
           "stratum p = " + std::to_string(tasks[i].p) + ", support " +
               support_text(tasks[i].rows) +
               ": incidence variety fails the smoothness gate");
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

Rational pow10(int e) {
  Rational ten(10);
  Rational out(1);
  for (int i = 0; i < std::abs(e); ++i) out *= ten;
  if (e < 0) out = Rational(1) / out;
  return out;
}

// Objective numerator sum(c_i q_i); the objective value is L / q0.
UPoly objective_numerator(const std::vector<Rational>& cost,
                          const RatPar& par) {
  UPoly l;
  for (std::size_t i = 0; i < cost.size(); ++i)
    l = l + par.qi[i] * cost[i];
  return l;
}

struct ProvenanceEntry {
  std::size_t p;
  std::vector<std::size_t> rows;
  const Ideal* xideal; // may be null (empty contribution)
};

void populate_candidates(SolutionReport& report, const Pencil& pencil,
                         const RatPar& par,
                         const std::vector<Rational>& cost,
                         std::size_t rank_bound, int digits,
                         const std::vector<ProvenanceEntry>* provenance) {
  report.candidates.clear();
  report.feasible.clear();
  report.minimizers.clear();
  report.rank_profile.assign(pencil.m + 1, 0);

  if (par.is_empty()) return;
  const bool with_objective = !cost.empty();
  const UPoly lnum =
      with_objective ? objective_numerator(cost, par) : UPoly();
  const Rational bound = pow10(-(digits + 2));

  std::vector<AlgebraicNumber> objective_values; // parallel to candidates
  for (const IsolatingInterval& iv : isolate_real_roots(par.q)) {
    Candidate cand;
    cand.interval = iv;
    AlgebraicNumber root(par.q, iv);
    cand.root_is_rational = root.is_rational();

    if (cand.root_is_rational) {
      const Rational t = root.rational_value();
      const Rational den = par.q0.evaluate(t);
      if (den == 0)
        fail(ErrorKind::field,
             "parametrization denominator vanishes at a root");
      for (std::size_t i = 0; i < par.dimension(); ++i) {
        Rational xi = par.qi[i].evaluate(t) / den;
        cand.coords_decimal.push_back(decimal_string(xi, digits));
        cand.coords_enclosure.push_back(IsolatingInterval{xi, xi});
        cand.rational_coords.push_back(std::move(xi));
      }
      Classification cls = classify_matrix(pencil, cand.rational_coords);
      cand.is_psd = cls.is_psd;
      cand.rank = cls.rank;
      if (with_objective) {
        Rational value(0);
        for (std::size_t i = 0; i < cost.size(); ++i)
          value += cost[i] * cand.rational_coords[i];
        cand.objective_decimal = decimal_string(value, digits);
        cand.objective_enclosure = IsolatingInterval{value, value};
        objective_values.push_back(AlgebraicNumber::from_rational(value));
        cand.objective_rational = std::move(value);
      }
    } else {
      for (std::size_t i = 0; i < par.dimension(); ++i) {
        cand.coords_decimal.push_back(
            rational_function_decimal(par.qi[i], par.q0, root, digits));
        AlgebraicNumber working = root;
        cand.coords_enclosure.push_back(
            rational_function_enclosure(par.qi[i], par.q0, working, bound));
      }
      Classification cls = classify_matrix(pencil, par, root);
      cand.is_psd = cls.is_psd;
      cand.rank = cls.rank;
      if (with_objective) {
        cand.objective_decimal =
            rational_function_decimal(lnum, par.q0, root, digits);
        AlgebraicNumber working = root;
        cand.objective_enclosure =
            rational_function_enclosure(lnum, par.q0, working, bound);
        objective_values.push_back(
            evaluate_rational_function(lnum, par.q0, root));
      }
    }
    cand.feasible = cand.is_psd && cand.rank <= rank_bound;

    if (provenance) {
      for (const ProvenanceEntry& entry : *provenance) {
        if (!entry.xideal) continue;
        bool member = true;
        for (const MultiPoly& g : entry.xideal->generators()) {
          if (cand.root_is_rational) {
            if (g.evaluate(cand.rational_coords) != 0) {
              member = false;
              break;
            }
          } else if (sign_at(substitute_par(g, par), root) != 0) {
            member = false;
            break;
          }
        }
        if (member) {
          cand.stratum_p = entry.p;
          cand.stratum_rows = entry.rows;
          break;
        }
      }
    }
    report.candidates.push_back(std::move(cand));
  }

  // Order: by exact objective ascending (root order breaking ties); root
  // order alone in feasibility-witness mode.
  std::vector<std::size_t> order(report.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  if (with_objective) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return compare(objective_values[a],
                                      objective_values[b]) < 0;
                     });
    std::vector<Candidate> sorted;
    std::vector<AlgebraicNumber> sorted_values;
    sorted.reserve(order.size());
    for (std::size_t idx : order) {
      sorted.push_back(std::move(report.candidates[idx]));
      sorted_values.push_back(std::move(objective_values[idx]));
    }
    report.candidates = std::move(sorted);
    objective_values = std::move(sorted_values);
  }

  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    const Candidate& cand = report.candidates[i];
    if (!cand.feasible) continue;
    report.feasible.push_back(i);
    report.rank_profile[cand.rank] += 1;
  }
  if (!with_objective) {
    report.minimizers = report.feasible; // feasibility witnesses
  } else if (!report.feasible.empty()) {
    const std::size_t first = report.feasible.front();
    report.minimizers.push_back(first);
    for (std::size_t k = 1; k < report.feasible.size(); ++k) {
      const std::size_t idx = report.feasible[k];
      if (compare(objective_values[idx], objective_values[first]) == 0)
        report.minimizers.push_back(idx);
    }
  }
}

} // namespace

std::vector<Rational> generic_cost(std::size_t n, unsigned long seed) {
  std::mt19937_64 rng = derive_rng(seed, kCostTag, 0);
  while (true) {
    std::vector<Rational> cost(n);
    bool nonzero = false;
    for (Rational& ci : cost) {
      const long v = static_cast<long>(rng() % 199UL) - 99;
      ci = v;
      if (v != 0) nonzero = true;
    }
    if (nonzero) return cost;
  }
}

Ideal project_to_x(const LagrangeSystem& sys, const GroebnerOptions& opt) {
  const std::size_t n = sys.space->block_named("x").size();
  Ideal lag(sys.space, sys.equations);
  Ideal elim = eliminate_to_x(lag, n, opt);
  if (sys.change.is_identity) return elim;

  // The eliminated ideal lives in the transformed coordinates x' = U x;
  // substitute x'_i -> (U x)_i to return to the original ones.
  const SpacePtr& xspace = elim.space();
  const MonomialOrder order = MonomialOrder::grevlex();
  std::map<std::size_t, MultiPoly> assignment;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& w = sys.change.forward.at(i, j);
      if (w == 0) continue;
      Monomial mono(n);
      mono[j] = 1;
      terms.push_back({mono, w});
    }
    assignment.emplace(i, MultiPoly::from_terms(xspace, order, terms));
  }
  PolySystem gens;
  for (const MultiPoly& g : elim.generators())
    gens.push_back(g.substitute_polys(assignment));
  return Ideal(xspace, std::move(gens));
}

RatPar solve_stratum(const Pencil& pencil, const std::vector<Rational>& cost,
                     std::size_t p, const SolverConfig& config) {
  validate_pencil(pencil);
  std::vector<Task> tasks = stratum_tasks(pencil.m, p);
  std::vector<TaskResult> results = run_tasks(pencil, cost, tasks, config);
  std::vector<UnionPart> parts;
  for (const TaskResult& res : results)
    if (res.xideal) parts.push_back(UnionPart{&*res.xideal, &res.par});
  std::mt19937_64 rng = derive_rng(config.seed, p, kUnionTag);
  RatPar joined =
      ratpar_union_merged(parts, make_x_space(pencil.n), rng, config.groebner);
  return keep_exact_rank(pencil, std::move(joined), p);
}

SolutionReport solve_sdp(const Pencil& pencil, const SolverConfig& config) {
  validate_pencil(pencil);
  if (config.r > pencil.m)
    fail(ErrorKind::usage, "rank bound exceeds the matrix size");

  SolutionReport report;
  report.m = pencil.m;
  report.n = pencil.n;
  report.r = config.r;
  report.digits = config.digits;

  bool zero_cost = config.cost.empty();
  if (!zero_cost) {
    if (config.cost.size() != pencil.n)
      fail(ErrorKind::usage, "cost dimension does not match pencil");
    zero_cost = std::all_of(config.cost.begin(), config.cost.end(),
                            [](const Rational& c) { return c == 0; });
  }
  report.degenerate_cost = zero_cost;
  report.cost_used =
      zero_cost ? generic_cost(pencil.n, config.seed) : config.cost;
  if (zero_cost)
    report.notes.push_back(
        "cost absent or identically zero: substituted a seed-derived generic "
        "cost; candidates are feasibility witnesses, objectives omitted");
  if (config.r == pencil.m)
    report.notes.push_back(
        "rank bound r = m: the full-rank stratum needs no rank constraint, "
        "strata are enumerated up to p = m - 1");

  const std::size_t pmax = std::min(config.r, pencil.m - 1);
  std::vector<Task> tasks;
  for (std::size_t p = 0; p <= pmax; ++p)
    for (Task& t : stratum_tasks(pencil.m, p)) tasks.push_back(std::move(t));

  std::vector<TaskResult> results =
      run_tasks(pencil, report.cost_used, tasks, config);

  const SpacePtr xspace = make_x_space(pencil.n);
  for (std::size_t p = 0; p <= pmax; ++p) {
    std::vector<UnionPart> parts;
    for (std::size_t i = 0; i < tasks.size(); ++i)
      if (tasks[i].p == p && results[i].xideal)
        parts.push_back(UnionPart{&*results[i].xideal, &results[i].par});
    std::mt19937_64 rng = derive_rng(config.seed, p, kUnionTag);
    report.stratum_parametrizations.push_back(keep_exact_rank(
        pencil, ratpar_union_merged(parts, xspace, rng, config.groebner), p));
  }
  // The global set is joined directly from the per-task ideals; candidates
  // of every rank are kept here and filtered by rank bound downstream.
  std::vector<UnionPart> all_parts;
  for (std::size_t i = 0; i < tasks.size(); ++i)
    if (results[i].xideal)
      all_parts.push_back(UnionPart{&*results[i].xideal, &results[i].par});
  std::mt19937_64 rng = derive_rng(config.seed, kGlobalTag, kUnionTag);
  report.parametrization =
      ratpar_union_merged(all_parts, xspace, rng, config.groebner);

  std::vector<ProvenanceEntry> provenance;
  for (std::size_t i = 0; i < tasks.size(); ++i)
    provenance.push_back(ProvenanceEntry{
        tasks[i].p, tasks[i].rows,
        results[i].xideal ? &*results[i].xideal : nullptr});

  populate_candidates(report, pencil, report.parametrization,
                      zero_cost ? std::vector<Rational>{} : report.cost_used,
                      config.r, config.digits, &provenance);
  return report;
}

SolutionReport filter_and_sort(const Pencil& pencil, const RatPar& par,
                               std::size_t r,
                               const std::vector<Rational>& cost,
                               int digits) {
  validate_pencil(pencil);
  if (r > pencil.m)
    fail(ErrorKind::usage, "rank bound exceeds the matrix size");
  if (par.dimension() != pencil.n)
    fail(ErrorKind::usage, "parametrization dimension does not match pencil");
  if (!cost.empty() && cost.size() != pencil.n)
    fail(ErrorKind::usage, "cost dimension does not match pencil");

  SolutionReport report;
  report.m = pencil.m;
  report.n = pencil.n;
  report.r = r;
  report.digits = digits;
  report.cost_used = cost;
  report.degenerate_cost = cost.empty();
  report.parametrization = par;
  populate_candidates(report, pencil, par, cost, r, digits, nullptr);
  return report;
}

} // namespace exactsdp
