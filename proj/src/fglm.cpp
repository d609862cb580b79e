#include "exactsdp/fglm.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "exactsdp/errors.hpp"

namespace exactsdp {

namespace {

bool zero_dim_basis(const std::vector<MultiPoly>& basis,
                    const SpacePtr& space) {
  if (is_unit_basis(basis)) return true;
  const std::size_t n = space->size();
  std::vector<bool> covered(n, false);
  for (const auto& b : basis) {
    const Monomial& lm = b.leading_monomial();
    std::size_t nonzero = 0, which = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (lm[v] > 0) {
        ++nonzero;
        which = v;
      }
    }
    if (nonzero == 1) covered[which] = true;
  }
  for (bool c : covered)
    if (!c) return false;
  return true;
}

struct MonoLess {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return order->less(a, b);
  }
};

} // namespace

bool is_zero_dimensional(const Ideal& ideal, const GroebnerOptions& opt) {
  return zero_dim_basis(ideal.basis(MonomialOrder::grevlex(), opt),
                        ideal.space());
}

std::vector<Monomial> quotient_basis(const std::vector<MultiPoly>& basis,
                                     const MonomialOrder& order,
                                     const SpacePtr& space) {
  std::vector<Monomial> out;
  if (is_unit_basis(basis)) return out;
  const std::size_t n = space->size();
  std::vector<Monomial> lms;
  for (const auto& b : basis)
    if (!b.is_zero()) lms.push_back(b.leading_monomial());
  auto under_staircase = [&](const Monomial& m) {
    for (const auto& lm : lms)
      if (lm.divides(m)) return false;
    return true;
  };
  MonoLess less{&order};
  std::set<Monomial, MonoLess> pending(less);
  std::set<Monomial, MonoLess> seen(less);
  Monomial one(n);
  pending.insert(one);
  seen.insert(one);
  constexpr std::size_t kStaircaseLimit = 200000;
  while (!pending.empty()) {
    Monomial m = *pending.begin();
    pending.erase(pending.begin());
    if (!under_staircase(m)) continue;
    out.push_back(m);
    if (out.size() > kStaircaseLimit)
      fail(ErrorKind::resource, "quotient basis is not finite");
    for (std::size_t v = 0; v < n; ++v) {
      Monomial child = m;
      child[v] = static_cast<uint16_t>(child[v] + 1);
      if (seen.insert(child).second) pending.insert(child);
    }
  }
  return out;
}

QMatrix multiplication_matrix(const std::vector<MultiPoly>& basis,
                              const std::vector<Monomial>& qbasis,
                              std::size_t var, long* budget) {
  const std::size_t d = qbasis.size();
  if (d == 0 || basis.empty())
    fail(ErrorKind::size, "empty quotient basis");
  const SpacePtr& space = basis.front().space();
  const MonomialOrder& order = basis.front().order();
  std::map<std::vector<uint16_t>, std::size_t> index;
  for (std::size_t i = 0; i < d; ++i) index[qbasis[i].exps()] = i;
  QMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Monomial shifted = qbasis[j];
    shifted[var] = static_cast<uint16_t>(shifted[var] + 1);
    MultiPoly f = MultiPoly::from_terms(space, order,
                                        {Term{shifted, Rational(1)}});
    MultiPoly nf = normal_form(f, basis, budget);
    for (const auto& t : nf.terms()) {
      auto it = index.find(t.mono.exps());
      if (it == index.end())
        fail(ErrorKind::size, "normal form escaped the quotient basis");
      m.at(it->second, j) = t.coeff;
    }
  }
  return m;
}

std::vector<QMatrix> multiplication_matrices(
    const std::vector<MultiPoly>& basis, const std::vector<Monomial>& qbasis,
    const SpacePtr& space, long* budget) {
  std::vector<QMatrix> out;
  out.reserve(space->size());
  for (std::size_t v = 0; v < space->size(); ++v)
    out.push_back(multiplication_matrix(basis, qbasis, v, budget));
  return out;
}

namespace {

// Incremental Gaussian elimination used by the order change: rows are stored
// reduced, together with the combination of inserted vectors they equal.
struct Echelon {
  struct Row {
    std::vector<Rational> w;     // reduced vector
    std::vector<Rational> combo; // w = sum combo[k] * inserted[k]
    std::size_t pivot = 0;
  };
  std::vector<Row> rows;
  std::size_t inserted_count = 0;

  // Reduces v against the rows. Returns the residual and the combination of
  // inserted vectors that realizes v - residual.
  std::pair<std::vector<Rational>, std::vector<Rational>> reduce(
      const std::vector<Rational>& v) const {
    std::vector<Rational> w = v;
    std::vector<Rational> combo(inserted_count, Rational(0));
    for (const auto& r : rows) {
      if (w[r.pivot] == 0) continue;
      Rational f = w[r.pivot] / r.w[r.pivot];
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= f * r.w[k];
      for (std::size_t k = 0; k < r.combo.size(); ++k)
        combo[k] += f * r.combo[k];
    }
    return {std::move(w), std::move(combo)};
  }

  // Inserts v (assumed independent); `residual` and `combo` come from
  // reduce(v). Existing rows are re-reduced against the new pivot so rows
  // stay mutually reduced and a single reduce() pass is complete.
  void insert(std::vector<Rational> residual, std::vector<Rational> combo) {
    Row r;
    r.w = std::move(residual);
    combo.resize(inserted_count + 1, Rational(0));
    for (auto& c : combo) c = -c;
    combo[inserted_count] = 1;
    r.combo = std::move(combo);
    std::size_t p = 0;
    while (p < r.w.size() && r.w[p] == 0) ++p;
    r.pivot = p;
    for (auto& old : rows) {
      if (old.w[p] == 0) continue;
      Rational f = old.w[p] / r.w[p];
      for (std::size_t k = 0; k < old.w.size(); ++k) old.w[k] -= f * r.w[k];
      old.combo.resize(r.combo.size(), Rational(0));
      for (std::size_t k = 0; k < r.combo.size(); ++k)
        old.combo[k] -= f * r.combo[k];
    }
    rows.push_back(std::move(r));
    ++inserted_count;
  }
};

std::vector<Rational> mat_vec(const QMatrix& m, const std::vector<Rational>& v,
                              long* budget) {
  const std::size_t d = v.size();
  std::vector<Rational> out(d, Rational(0));
  if (budget) {
    *budget -= static_cast<long>(d);
    if (*budget < 0)
      fail(ErrorKind::resource,
           "computation exceeded the step budget (raise EXACTSDP_STEP_BUDGET)");
  }
  for (std::size_t i = 0; i < d; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < d; ++j) {
      if (m.at(i, j) != 0 && v[j] != 0) acc += m.at(i, j) * v[j];
    }
    out[i] = acc;
  }
  return out;
}

} // namespace

std::vector<MultiPoly> fglm_convert(const std::vector<MultiPoly>& source,
                                    const SpacePtr& space,
                                    const MonomialOrder& target,
                                    const GroebnerOptions& opt) {
  long budget = opt.step_budget;
  if (is_unit_basis(source))
    return {MultiPoly::constant(space, target, Rational(1))};
  if (source.empty())
    fail(ErrorKind::size, "order change needs a nonzero ideal");
  if (!zero_dim_basis(source, space))
    fail(ErrorKind::dimension, "order change requires a finite quotient");
  const MonomialOrder& src_order = source.front().order();
  std::vector<Monomial> B = quotient_basis(source, src_order, space);
  const std::size_t n = space->size();
  std::vector<QMatrix> mult =
      multiplication_matrices(source, B, space, &budget);
  std::map<std::vector<uint16_t>, std::size_t> src_index;
  for (std::size_t i = 0; i < B.size(); ++i) src_index[B[i].exps()] = i;

  MonoLess less{&target};
  std::set<Monomial, MonoLess> pending(less);
  std::set<Monomial, MonoLess> seen(less);
  Monomial one(n);
  pending.insert(one);
  seen.insert(one);

  std::vector<Monomial> staircase;          // target staircase, increasing
  std::map<std::vector<uint16_t>, std::vector<Rational>> nf_of;
  std::vector<Monomial> found_lms;
  std::vector<MultiPoly> out;
  Echelon ech;

  while (!pending.empty()) {
    Monomial m = *pending.begin();
    pending.erase(pending.begin());
    bool skip = false;
    for (const auto& lm : found_lms) {
      if (lm.divides(m)) {
        skip = true;
        break;
      }
    }
    if (skip) continue;

    std::vector<Rational> v;
    if (m.is_one()) {
      v.assign(B.size(), Rational(0));
      auto it = src_index.find(Monomial(n).exps());
      if (it == src_index.end())
        fail(ErrorKind::size, "quotient basis misses the unit monomial");
      v[it->second] = 1;
    } else {
      std::size_t var = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (m[i] > 0) {
          Monomial parent = m;
          parent[i] = static_cast<uint16_t>(parent[i] - 1);
          if (nf_of.count(parent.exps())) {
            var = i;
            break;
          }
        }
      }
      if (var == n)
        fail(ErrorKind::size, "order change lost a parent monomial");
      Monomial parent = m;
      parent[var] = static_cast<uint16_t>(parent[var] - 1);
      v = mat_vec(mult[var], nf_of[parent.exps()], &budget);
    }

    auto [residual, combo] = ech.reduce(v);
    bool independent = false;
    for (const auto& c : residual) {
      if (c != 0) {
        independent = true;
        break;
      }
    }
    if (independent) {
      nf_of[m.exps()] = v;
      staircase.push_back(m);
      ech.insert(std::move(residual), std::move(combo));
      for (std::size_t i = 0; i < n; ++i) {
        Monomial child = m;
        child[i] = static_cast<uint16_t>(child[i] + 1);
        if (seen.insert(child).second) pending.insert(child);
      }
    } else {
      std::vector<Term> terms;
      terms.push_back({m, Rational(1)});
      for (std::size_t k = 0; k < combo.size(); ++k) {
        if (combo[k] != 0) terms.push_back({staircase[k], -combo[k]});
      }
      out.push_back(MultiPoly::from_terms(space, target, std::move(terms)));
      found_lms.push_back(m);
    }
  }
  return out;
}

Ideal eliminate(const Ideal& ideal, const std::vector<bool>& drop,
                SpacePtr target,
                const std::vector<std::optional<std::size_t>>& var_map,
                const GroebnerOptions& opt) {
  MonomialOrder elim = MonomialOrder::block_elimination(drop);
  const std::vector<MultiPoly>* gb_elim = nullptr;
  std::vector<MultiPoly> converted;
  const auto& grevlex_gb = ideal.basis(MonomialOrder::grevlex(), opt);
  if (zero_dim_basis(grevlex_gb, ideal.space()) &&
      !is_unit_basis(grevlex_gb)) {
    converted = fglm_convert(grevlex_gb, ideal.space(), elim, opt);
    gb_elim = &converted;
  } else {
    gb_elim = &ideal.basis(elim, opt);
  }
  std::vector<MultiPoly> kept;
  for (const auto& b : *gb_elim) {
    bool uses_dropped = false;
    for (std::size_t v = 0; v < drop.size(); ++v) {
      if (drop[v] && b.uses_var(v)) {
        uses_dropped = true;
        break;
      }
    }
    if (!uses_dropped)
      kept.push_back(b.mapped_to(target, MonomialOrder::grevlex(), var_map));
  }
  Ideal out(target, kept);
  out.seed_basis(MonomialOrder::grevlex(), kept);
  return out;
}

} // namespace exactsdp
