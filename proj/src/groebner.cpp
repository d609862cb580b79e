#include "exactsdp/groebner.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <set>

#include "exactsdp/errors.hpp"

namespace exactsdp {

long default_step_budget() {
  if (const char* env = std::getenv("EXACTSDP_STEP_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    fail(ErrorKind::usage, "EXACTSDP_STEP_BUDGET must be a positive integer");
  }
  return 10000000L;
}

GroebnerOptions::GroebnerOptions() : step_budget(default_step_budget()) {}

namespace {

void charge(long* budget, long amount) {
  if (!budget) return;
  *budget -= amount;
  if (*budget < 0)
    fail(ErrorKind::resource,
         "computation exceeded the step budget (raise EXACTSDP_STEP_BUDGET)");
}

struct BasisElem {
  MultiPoly poly;
  long sugar = 0;
  bool alive = true; // participates in new pairs / reductions

  const Monomial& lead() const { return poly.leading_monomial(); }
};

struct Pair {
  std::size_t i, j; // i < j
  Monomial lcm;
  uint32_t lcm_deg = 0;
  long sugar = 0;
};

struct PairLess {
  const MonomialOrder* order;
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    if (a.lcm_deg != b.lcm_deg) return a.lcm_deg < b.lcm_deg;
    int c = order->compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

// A basis element whose leading monomial is properly dominated by the new
// element's stops producing pairs and reducing.
template <class Elem>
void retire_dominated(std::vector<Elem>& g, std::size_t t) {
  const Monomial& lmt = g[t].lead();
  for (std::size_t i = 0; i < t; ++i) {
    if (g[i].alive && lmt != g[i].lead() && lmt.divides(g[i].lead()))
      g[i].alive = false;
  }
}

// Reduce the leading term of f against the basis until it is irreducible.
// Fraction-free: basis elements are integer-primitive, and each step forms
// lc_e * f - lc_f * quot * e, so coefficients stay integral; the content is
// stripped every few steps to contain growth. Only f's ideal class matters
// to the callers, never its scaling. Tracks the sugar degree.
MultiPoly top_reduce(MultiPoly f, long& sugar, const std::vector<BasisElem>& g,
                     long* budget) {
  int since_strip = 0;
  while (!f.is_zero()) {
    const Monomial& lm = f.leading_monomial();
    const BasisElem* red = nullptr;
    for (const auto& e : g) {
      if (e.alive && e.poly.leading_monomial().divides(lm)) {
        red = &e;
        break;
      }
    }
    if (!red) break;
    const Monomial quot = lm / red->poly.leading_monomial();
    charge(budget, static_cast<long>(red->poly.term_count()));
    sugar = std::max(sugar, red->sugar + static_cast<long>(quot.degree()));
    // Cross-scale by the smallest factors that keep the step integral.
    const Rational ce = red->poly.leading_coeff();
    const Rational cf = f.leading_coeff();
    Integer num_g;
    mpz_gcd(num_g.get_mpz_t(), ce.get_num().get_mpz_t(),
            cf.get_num().get_mpz_t());
    const Rational scale_f(Rational(ce / num_g));
    const Rational scale_e(Rational(cf / num_g));
    if (scale_f != 1) f = f * scale_f;
    f = f.sub_mul(scale_e, quot, red->poly);
    if (++since_strip >= 2) {
      f = f.primitive_part();
      since_strip = 0;
    }
  }
  return f;
}

// S-polynomial of g[i], g[j] for the given lcm of their leading monomials,
// cross-scaled by leading coefficients to stay fraction-free.
MultiPoly s_polynomial(const BasisElem& a, const BasisElem& b,
                       const Monomial& lcm, long* budget) {
  const MultiPoly& f = a.poly;
  const MultiPoly& g = b.poly;
  MultiPoly z = MultiPoly::zero(f.space(), f.order());
  charge(budget, static_cast<long>(f.term_count() + g.term_count()));
  MultiPoly s = z.sub_mul(-g.leading_coeff(), lcm / f.leading_monomial(), f);
  return s.sub_mul(f.leading_coeff(), lcm / g.leading_monomial(), g);
}

// Gebauer-Moeller update: add element t to the pair set, pruning with the
// B/M/F criteria and Buchberger's coprimality criterion.
template <class Elem>
void update_pairs(std::vector<Elem>& g, std::set<Pair, PairLess>& pairs,
                  std::size_t t) {
  const Monomial& lmt = g[t].lead();
  struct Cand {
    std::size_t i;
    Monomial lcm;
    bool coprime;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < t; ++i) {
    if (!g[i].alive) continue;
    const Monomial& lmi = g[i].lead();
    cands.push_back({i, Monomial::lcm(lmi, lmt), Monomial::coprime(lmi, lmt)});
  }
  // Criterion M: drop (i,t) when some other new lcm properly divides it.
  std::vector<bool> keep(cands.size(), true);
  for (std::size_t a = 0; a < cands.size(); ++a) {
    for (std::size_t b = 0; b < cands.size() && keep[a]; ++b) {
      if (a == b || !keep[b]) continue;
      if (cands[b].lcm != cands[a].lcm && cands[b].lcm.divides(cands[a].lcm))
        keep[a] = false;
    }
  }
  // Criterion F: one representative per lcm value; a coprime member kills
  // its whole class.
  for (std::size_t a = 0; a < cands.size(); ++a) {
    if (!keep[a]) continue;
    bool class_coprime = cands[a].coprime;
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      if (keep[b] && cands[b].lcm == cands[a].lcm) {
        class_coprime = class_coprime || cands[b].coprime;
        keep[b] = false;
      }
    }
    if (class_coprime) keep[a] = false;
  }
  // Criterion B on the surviving old pairs.
  for (auto it = pairs.begin(); it != pairs.end();) {
    const Pair& p = *it;
    if (lmt.divides(p.lcm) &&
        Monomial::lcm(g[p.i].lead(), lmt) != p.lcm &&
        Monomial::lcm(g[p.j].lead(), lmt) != p.lcm) {
      it = pairs.erase(it);
    } else {
      ++it;
    }
  }
  for (std::size_t a = 0; a < cands.size(); ++a) {
    if (!keep[a]) continue;
    const std::size_t i = cands[a].i;
    Pair p;
    p.i = i;
    p.j = t;
    p.lcm = cands[a].lcm;
    p.lcm_deg = p.lcm.degree();
    p.sugar = std::max(
        g[i].sugar +
            static_cast<long>((p.lcm / g[i].lead()).degree()),
        g[t].sugar + static_cast<long>((p.lcm / lmt).degree()));
    pairs.insert(p);
  }
  retire_dominated(g, t);
}

std::vector<MultiPoly> unit_basis(const SpacePtr& space,
                                  const MonomialOrder& order) {
  return {MultiPoly::constant(space, order, Rational(1))};
}

// Full reduction of f against the given reducers, returned monic. Works
// fraction-free on the dividend: each division step cross-scales by the
// reducer's leading coefficient instead of dividing, and the collected
// remainder carries a lazy scalar so it never has to be rescaled term by
// term. Only the remainder's ray matters to the caller.
MultiPoly reduce_tail_scaled(const MultiPoly& f,
                             const std::vector<const MultiPoly*>& reducers,
                             long* budget) {
  MultiPoly work = f;
  std::vector<Term> rem;
  Rational mu(1);
  int since_strip = 0;
  while (!work.is_zero()) {
    const Monomial& lm = work.leading_monomial();
    const MultiPoly* divisor = nullptr;
    for (const MultiPoly* b : reducers) {
      if (!b->is_zero() && b->leading_monomial().divides(lm)) {
        divisor = b;
        break;
      }
    }
    if (divisor) {
      charge(budget, static_cast<long>(divisor->term_count()));
      const Monomial quot = lm / divisor->leading_monomial();
      const Rational ce = divisor->leading_coeff();
      const Rational cf = work.leading_coeff();
      Integer num_g;
      mpz_gcd(num_g.get_mpz_t(), ce.get_num().get_mpz_t(),
              cf.get_num().get_mpz_t());
      const Rational scale_f(Rational(ce / num_g));
      const Rational scale_e(Rational(cf / num_g));
      if (scale_f != 1) {
        work = work * scale_f;
        mu *= scale_f;
      }
      work = work.sub_mul(scale_e, quot, *divisor);
      if (++since_strip >= 2 && !work.is_zero()) {
        const Rational before = work.leading_coeff();
        work = work.primitive_part();
        mu *= Rational(work.leading_coeff() / before);
        since_strip = 0;
      }
    } else {
      charge(budget, static_cast<long>(work.term_count()));
      Term lt = work.leading_term();
      MultiPoly ltp = MultiPoly::from_terms(f.space(), f.order(), {lt});
      work -= ltp;
      lt.coeff = Rational(lt.coeff / mu);
      rem.push_back(std::move(lt));
    }
  }
  MultiPoly out = MultiPoly::from_terms(f.space(), f.order(), std::move(rem));
  return out.is_zero() ? out : out.monic();
}

// Minimalization (drop elements with dominated leading monomials) followed
// by full inter-reduction of tails and monic normalization.
std::vector<MultiPoly> finalize_basis(const std::vector<BasisElem>& g,
                                      const MonomialOrder& order,
                                      long* budget) {
  std::vector<std::size_t> idx(g.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    int c = order.compare(g[a].poly.leading_monomial(),
                          g[b].poly.leading_monomial());
    if (c != 0) return c < 0;
    return a < b;
  });
  std::vector<MultiPoly> minimal;
  for (std::size_t i : idx) {
    const Monomial& lm = g[i].poly.leading_monomial();
    bool dominated = false;
    for (const auto& kept : minimal) {
      if (kept.leading_monomial().divides(lm)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(g[i].poly);
  }
  std::vector<MultiPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const MultiPoly*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    reduced.push_back(reduce_tail_scaled(minimal[i], others, budget));
  }
  return reduced;
}

// ---------------------------------------------------------------------------
// Prime-field mirror of the computation. A first pass over F_p (machine-word
// arithmetic, no coefficient growth) records which S-pairs matter; the exact
// pass replays only those, and the result is certified over Q from scratch
// (Buchberger criterion plus generator membership), so no statement ever
// rests on the prime being lucky.
// ---------------------------------------------------------------------------

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  a += b;
  if (a >= p) a -= p;
  return a;
}
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) { return a * b % p; }
uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}
uint64_t inv_mod(uint64_t a, uint64_t p) { return pow_mod(a, p - 2, p); }

struct PTerm {
  Monomial mono;
  uint64_t c = 0;
};

struct PPoly {
  std::vector<PTerm> t; // sorted strictly decreasing in the ambient order

  bool zero() const { return t.empty(); }
  const Monomial& lm() const { return t.front().mono; }
  uint64_t lc() const { return t.front().c; }
  bool constant() const { return t.size() == 1 && t.front().mono.is_one(); }
};

// Reduction of each coefficient; empty when the prime divides a denominator.
std::optional<PPoly> reduce_poly_mod(const MultiPoly& f, uint64_t p) {
  PPoly out;
  out.t.reserve(f.term_count());
  for (const Term& term : f.terms()) {
    const Integer den = term.coeff.get_den();
    const uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
    if (d == 0) return std::nullopt;
    const Integer num = term.coeff.get_num();
    const uint64_t n = mpz_fdiv_ui(num.get_mpz_t(), p);
    if (n == 0) continue;
    out.t.push_back({term.mono, mul_mod(n, inv_mod(d, p), p)});
  }
  return out;
}

// a - c * x^mono * b as one sorted merge.
PPoly pp_sub_mul(const PPoly& a, uint64_t c, const Monomial& mono,
                 const PPoly& b, const MonomialOrder& order, uint64_t p,
                 long* budget) {
  charge(budget, static_cast<long>(a.t.size() + b.t.size()));
  PPoly out;
  out.t.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size()) {
      out.t.push_back(a.t[i++]);
      continue;
    }
    Monomial bm = b.t[j].mono * mono;
    const uint64_t bc = mul_mod(c, b.t[j].c, p);
    if (i == a.t.size()) {
      if (bc) out.t.push_back({std::move(bm), sub_mod(0, bc, p)});
      ++j;
      continue;
    }
    const int cmp = order.compare(a.t[i].mono, bm);
    if (cmp > 0) {
      out.t.push_back(a.t[i++]);
    } else if (cmp < 0) {
      if (bc) out.t.push_back({std::move(bm), sub_mod(0, bc, p)});
      ++j;
    } else {
      const uint64_t v = sub_mod(a.t[i].c, bc, p);
      if (v) out.t.push_back({a.t[i].mono, v});
      ++i;
      ++j;
    }
  }
  return out;
}

PPoly pp_monic(PPoly f, uint64_t p) {
  if (!f.zero() && f.lc() != 1) {
    const uint64_t s = inv_mod(f.lc(), p);
    for (auto& term : f.t) term.c = mul_mod(term.c, s, p);
  }
  return f;
}

struct PElem {
  PPoly poly;
  long sugar = 0;
  bool alive = true;

  const Monomial& lead() const { return poly.lm(); }
};

// Stored elements are monic, so one subtraction per step clears the lead.
PPoly pp_top_reduce(PPoly f, long& sugar, const std::vector<PElem>& g,
                    const MonomialOrder& order, uint64_t p, long* budget) {
  while (!f.zero()) {
    const Monomial& lm = f.lm();
    const PElem* red = nullptr;
    for (const auto& e : g) {
      if (e.alive && e.poly.lm().divides(lm)) {
        red = &e;
        break;
      }
    }
    if (!red) break;
    const Monomial quot = lm / red->poly.lm();
    sugar = std::max(sugar, red->sugar + static_cast<long>(quot.degree()));
    f = pp_sub_mul(f, f.lc(), quot, red->poly, order, p, budget);
  }
  return f;
}

// Full normal form (the lead of f is assumed irreducible already).
PPoly pp_full_reduce(PPoly f, const std::vector<PElem>& g,
                     const MonomialOrder& order, uint64_t p, long* budget) {
  PPoly out;
  std::size_t done = 0; // prefix of f known irreducible
  while (done < f.t.size()) {
    const Monomial& lm = f.t[done].mono;
    const PElem* red = nullptr;
    for (const auto& e : g) {
      if (e.alive && e.poly.lm().divides(lm)) {
        red = &e;
        break;
      }
    }
    if (!red) {
      out.t.push_back(f.t[done]);
      ++done;
      charge(budget, 1);
      continue;
    }
    PPoly rest;
    rest.t.assign(f.t.begin() + static_cast<long>(done), f.t.end());
    rest = pp_sub_mul(rest, rest.lc(), lm / red->poly.lm(), red->poly, order,
                      p, budget);
    f.t.resize(done);
    f.t.insert(f.t.end(), rest.t.begin(), rest.t.end());
  }
  return out;
}

PPoly pp_s_polynomial(const PElem& a, const PElem& b, const Monomial& lcm,
                      const MonomialOrder& order, uint64_t p, long* budget) {
  PPoly z;
  PPoly s = pp_sub_mul(z, sub_mod(0, 1, p), lcm / a.poly.lm(), a.poly, order,
                       p, budget);
  return pp_sub_mul(s, 1, lcm / b.poly.lm(), b.poly, order, p, budget);
}

// One recorded step of the prime-field run: the element source (initial
// generator or S-pair) together with what became of it.
struct TraceEvent {
  bool from_pair = false;
  std::size_t i = 0, j = 0; // basis slots when from_pair; generator index else
  bool added = false;       // survived reduction and joined the basis
  bool constant = false;    // reduced to a nonzero constant (unit ideal)
  Monomial lead;            // leading monomial of the added element
};

struct ModRun {
  bool usable = false; // prime did not divide any input denominator
  bool unit = false;
  std::vector<TraceEvent> events;
};

ModRun modular_probe(const std::vector<MultiPoly>& gens,
                     const MonomialOrder& order, uint64_t p, long* budget) {
  ModRun run;
  std::vector<PPoly> pgens;
  pgens.reserve(gens.size());
  for (const auto& gen : gens) {
    auto conv =
        reduce_poly_mod(gen.order() == order ? gen : gen.reordered(order), p);
    if (!conv) return run;
    pgens.push_back(std::move(*conv));
  }
  run.usable = true;

  std::vector<PElem> g;
  PairLess pl{&order};
  std::set<Pair, PairLess> pairs(pl);

  // Returns 1 when a nonzero constant appeared (unit ideal), 0 otherwise.
  auto feed = [&](PPoly poly, long sugar, TraceEvent ev) -> int {
    poly = pp_top_reduce(std::move(poly), sugar, g, order, p, budget);
    if (poly.zero()) {
      run.events.push_back(std::move(ev));
      return 0;
    }
    if (poly.constant()) {
      ev.added = true;
      ev.constant = true;
      run.events.push_back(std::move(ev));
      return 1;
    }
    poly = pp_full_reduce(pp_monic(std::move(poly), p), g, order, p, budget);
    ev.added = true;
    ev.lead = poly.lm();
    run.events.push_back(std::move(ev));
    g.push_back({std::move(poly), sugar, true});
    update_pairs(g, pairs, g.size() - 1);
    return 0;
  };

  for (std::size_t j = 0; j < pgens.size(); ++j) {
    if (gens[j].is_zero()) continue; // mirrors the exact pass exactly
    TraceEvent ev;
    ev.from_pair = false;
    ev.j = j;
    const long sugar = static_cast<long>(gens[j].total_degree());
    if (feed(std::move(pgens[j]), sugar, std::move(ev))) {
      run.unit = true;
      return run;
    }
  }
  while (!pairs.empty()) {
    Pair pr = *pairs.begin();
    pairs.erase(pairs.begin());
    PPoly s = pp_s_polynomial(g[pr.i], g[pr.j], pr.lcm, order, p, budget);
    TraceEvent ev;
    ev.from_pair = true;
    ev.i = pr.i;
    ev.j = pr.j;
    if (feed(std::move(s), pr.sugar, std::move(ev))) {
      run.unit = true;
      return run;
    }
  }
  return run;
}

// Exact replay of the recorded run: pairs that died over F_p are skipped
// outright; every processed element is built from the generators by
// S-polynomials and reductions, so anything produced here lies in the ideal
// regardless of the prime. Returns the finalized candidate basis, nullopt on
// divergence from the trace, or sets *unit when a nonzero constant appears
// (an unconditional certificate that the ideal is the whole ring).
std::optional<std::vector<MultiPoly>> replay_trace(
    const std::vector<MultiPoly>& gens, const MonomialOrder& order,
    const ModRun& run, long* budget, bool* unit) {
  std::vector<BasisElem> g;

  // Returns -1 on divergence, 0 to continue, 1 on a constant.
  auto feed = [&](MultiPoly poly, long sugar, const TraceEvent& ev) -> int {
    poly = top_reduce(std::move(poly), sugar, g, budget);
    if (poly.is_zero()) return -1;      // the trace promised an element
    if (poly.is_constant()) return 1;   // sound regardless of the trace
    if (ev.constant) return -1;
    {
      std::vector<const MultiPoly*> reducers;
      reducers.reserve(g.size());
      for (const auto& e : g)
        if (e.alive) reducers.push_back(&e.poly);
      poly = reduce_tail_scaled(poly, reducers, budget);
    }
    poly = poly.primitive_part();
    if (poly.leading_monomial() != ev.lead) return -1;
    g.push_back({std::move(poly), sugar, true});
    retire_dominated(g, g.size() - 1);
    return 0;
  };

  for (const TraceEvent& ev : run.events) {
    if (!ev.added) continue; // died over F_p: skip the exact reduction
    int r = 0;
    if (!ev.from_pair) {
      const MultiPoly& gen = gens[ev.j];
      if (gen.is_zero()) return std::nullopt;
      MultiPoly p0 = gen.order() == order ? gen : gen.reordered(order);
      const long sugar = static_cast<long>(p0.total_degree());
      r = feed(std::move(p0), sugar, ev);
    } else {
      if (ev.i >= g.size() || ev.j >= g.size()) return std::nullopt;
      const Monomial lcm =
          Monomial::lcm(g[ev.i].lead(), g[ev.j].lead());
      const long sugar = std::max(
          g[ev.i].sugar +
              static_cast<long>((lcm / g[ev.i].lead()).degree()),
          g[ev.j].sugar +
              static_cast<long>((lcm / g[ev.j].lead()).degree()));
      MultiPoly s = s_polynomial(g[ev.i], g[ev.j], lcm, budget);
      r = feed(std::move(s), sugar, ev);
    }
    if (r < 0) return std::nullopt;
    if (r > 0) {
      *unit = true;
      return std::nullopt;
    }
  }
  return finalize_basis(g, order, budget);
}

// Unconditional certificate that `basis` is a Groebner basis of the ideal of
// `gens`: every generator must reduce to zero (containment one way; the other
// way holds because every replayed element is an ideal combination), and
// every S-pair must reduce to zero unless dismissed by the coprimality
// criterion or delegated through the chain criterion to strictly smaller
// pairs.
bool certify_basis(const std::vector<MultiPoly>& basis,
                   const std::vector<MultiPoly>& gens,
                   const MonomialOrder& order, long* budget) {
  for (const auto& gen : gens) {
    if (gen.is_zero()) continue;
    MultiPoly f = gen.order() == order ? gen : gen.reordered(order);
    if (!normal_form(f, basis, budget).is_zero()) return false;
  }
  const std::size_t s = basis.size();
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const Monomial& a = basis[i].leading_monomial();
      const Monomial& b = basis[j].leading_monomial();
      if (Monomial::coprime(a, b)) continue;
      const Monomial lcm = Monomial::lcm(a, b);
      bool delegated = false;
      for (std::size_t k = 0; k < s && !delegated; ++k) {
        if (k == i || k == j) continue;
        const Monomial& c = basis[k].leading_monomial();
        if (!c.divides(lcm)) continue;
        delegated = Monomial::lcm(a, c) != lcm && Monomial::lcm(c, b) != lcm;
      }
      if (delegated) continue;
      MultiPoly z = MultiPoly::zero(basis[i].space(), order);
      charge(budget,
             static_cast<long>(basis[i].term_count() + basis[j].term_count()));
      MultiPoly sp = z.sub_mul(Rational(-1), lcm / a, basis[i]);
      sp = sp.sub_mul(Rational(1), lcm / b, basis[j]);
      if (!normal_form(sp, basis, budget).is_zero()) return false;
    }
  }
  return true;
}

// The direct exact computation, used when the prime-field guide is
// unavailable or its candidate fails certification.
std::vector<MultiPoly> buchberger_rational(const std::vector<MultiPoly>& gens,
                                           const MonomialOrder& order,
                                           const SpacePtr& space,
                                           long* budget) {
  std::vector<BasisElem> g;
  PairLess pl{&order};
  std::set<Pair, PairLess> pairs(pl);

  auto add_element = [&](MultiPoly p, long sugar) -> bool {
    // Returns true when the ideal turned out to be the whole ring.
    p = top_reduce(std::move(p), sugar, g, budget);
    if (p.is_zero()) return false;
    if (p.is_constant()) return true;
    // Finish the tail: a fully normalized element keeps the cascade's
    // coefficient growth out of the stored basis.
    {
      std::vector<const MultiPoly*> reducers;
      reducers.reserve(g.size());
      for (const auto& e : g)
        if (e.alive) reducers.push_back(&e.poly);
      p = reduce_tail_scaled(p, reducers, budget);
    }
    p = p.primitive_part();
    g.push_back({std::move(p), sugar, true});
    update_pairs(g, pairs, g.size() - 1);
    return false;
  };

  for (const auto& gen : gens) {
    if (gen.is_zero()) continue;
    MultiPoly p = gen.order() == order ? gen : gen.reordered(order);
    long sugar = static_cast<long>(p.total_degree());
    if (add_element(std::move(p), sugar)) return unit_basis(space, order);
  }

  while (!pairs.empty()) {
    Pair p = *pairs.begin();
    pairs.erase(pairs.begin());
    MultiPoly s = s_polynomial(g[p.i], g[p.j], p.lcm, budget);
    if (add_element(std::move(s), p.sugar)) return unit_basis(space, order);
  }

  return finalize_basis(g, order, budget);
}

} // namespace

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                      long* budget) {
  MultiPoly work = f;
  MultiPoly rem = MultiPoly::zero(f.space(), f.order());
  while (!work.is_zero()) {
    const Monomial& lm = work.leading_monomial();
    const MultiPoly* divisor = nullptr;
    for (const auto& b : basis) {
      if (!b.is_zero() && b.leading_monomial().divides(lm)) {
        divisor = &b;
        break;
      }
    }
    if (divisor) {
      charge(budget, static_cast<long>(divisor->term_count()));
      work = work.sub_mul(work.leading_coeff() / divisor->leading_coeff(),
                          lm / divisor->leading_monomial(), *divisor);
    } else {
      MultiPoly lt = MultiPoly::from_terms(f.space(), f.order(),
                                           {work.leading_term()});
      charge(budget, static_cast<long>(work.term_count()));
      rem += lt;
      work -= lt;
    }
  }
  return rem;
}

std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens,
                                      const MonomialOrder& order,
                                      const GroebnerOptions& opt) {
  long budget = opt.step_budget;
  SpacePtr space;
  for (const auto& g : gens) {
    if (g.space()) {
      space = g.space();
      break;
    }
  }
  if (!space) return {};

  // Prime-field guided passes first: same algorithm, with the reductions
  // that die over F_p skipped over Q and the outcome certified exactly.
  static const uint64_t kGuidePrimes[] = {2147483629ULL, 2147483587ULL};
  for (const uint64_t p : kGuidePrimes) {
    ModRun run = modular_probe(gens, order, p, &budget);
    if (!run.usable) continue;
    bool unit = false;
    auto lifted = replay_trace(gens, order, run, &budget, &unit);
    if (unit) return unit_basis(space, order);
    if (!lifted) continue;
    if (run.unit) continue; // the trace promised a constant that never came
    if (certify_basis(*lifted, gens, order, &budget)) return *lifted;
  }

  return buchberger_rational(gens, order, space, &budget);
}

bool is_unit_basis(const std::vector<MultiPoly>& basis) {
  for (const auto& b : basis)
    if (!b.is_zero() && b.is_constant()) return true;
  return false;
}

Ideal::Ideal(SpacePtr space, std::vector<MultiPoly> gens)
    : space_(std::move(space)), gens_(std::move(gens)) {}

const std::vector<MultiPoly>& Ideal::basis(const MonomialOrder& order,
                                           const GroebnerOptions& opt) const {
  auto it = cache_.find(order.cache_key());
  if (it != cache_.end()) return it->second;
  std::vector<MultiPoly> gb = groebner_basis(gens_, order, opt);
  return cache_.emplace(order.cache_key(), std::move(gb)).first->second;
}

void Ideal::seed_basis(const MonomialOrder& order,
                       std::vector<MultiPoly> basis) {
  cache_[order.cache_key()] = std::move(basis);
}

bool Ideal::is_unit(const GroebnerOptions& opt) const {
  return is_unit_basis(basis(MonomialOrder::grevlex(), opt));
}

} // namespace exactsdp
