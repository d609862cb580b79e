#include "exactsdp/rur.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "exactsdp/errors.hpp"

namespace exactsdp {

namespace {

// Monic characteristic polynomial (low-to-high coefficients, leading 1)
// from the power sums s[0..d] of the operator's eigenvalues.
std::vector<Rational> newton_from_power_sums(const std::vector<Rational>& s,
                                             std::size_t d) {
  std::vector<Rational> c(d + 1, Rational(0));
  c[d] = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    Rational acc = s[k];
    for (std::size_t m = 1; m < k; ++m) acc += c[d - m] * s[k - m];
    c[d - k] = -acc / Rational(static_cast<long>(k));
  }
  return c;
}

Rational trace_of_product(const QMatrix& a, const QMatrix& b) {
  Rational acc(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0 && b.at(j, i) != 0) acc += a.at(i, j) * b.at(j, i);
  return acc;
}

// Rank of the trace form Tr(mult by b_i * b_j); equals the number of
// distinct points of the variety over the complex numbers.
std::size_t trace_form_rank(const std::vector<Monomial>& qbasis,
                            const std::vector<QMatrix>& mult) {
  const std::size_t d = qbasis.size();
  const std::size_t n = mult.size();
  std::map<std::vector<uint16_t>, std::size_t> index;
  for (std::size_t i = 0; i < d; ++i) index[qbasis[i].exps()] = i;
  // Multiplication matrix of every quotient-basis monomial, built up the
  // divisor-closed staircase.
  std::vector<QMatrix> by_basis(d);
  std::vector<Rational> traces(d);
  by_basis[0] = QMatrix::identity(d);
  traces[0] = d;
  for (std::size_t l = 1; l < d; ++l) {
    std::size_t var = n;
    std::size_t parent = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (qbasis[l][v] == 0) continue;
      Monomial m = qbasis[l];
      m[v] = static_cast<uint16_t>(m[v] - 1);
      auto it = index.find(m.exps());
      if (it != index.end()) {
        var = v;
        parent = it->second;
        break;
      }
    }
    if (var == n) fail(ErrorKind::size, "staircase is not divisor-closed");
    by_basis[l] = mult[var] * by_basis[parent];
    traces[l] = by_basis[l].trace();
  }
  QMatrix tf(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      // Coordinates of NF(b_i * b_j) are column i of the matrix of b_j.
      Rational acc(0);
      for (std::size_t l = 0; l < d; ++l) {
        const Rational& w = by_basis[j].at(l, i);
        if (w != 0) acc += w * traces[l];
      }
      tf.at(i, j) = acc;
      tf.at(j, i) = acc;
    }
  }
  return tf.rank();
}

std::vector<long> draw_lambda(std::mt19937_64& rng, std::size_t n,
                              unsigned long box) {
  while (true) {
    std::vector<long> lambda(n, 0);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      unsigned long r = rng() % (2 * box + 1);
      lambda[i] = static_cast<long>(r) - static_cast<long>(box);
      if (lambda[i] != 0) nonzero = true;
    }
    if (nonzero) return lambda;
  }
}

// Joint normalization: integer coefficients, jointly primitive, sign fixed
// so the first polynomial keeps a positive leading coefficient.
void normalize_tuple(std::vector<UPoly*> polys) {
  Integer den_lcm = 1;
  for (const UPoly* p : polys)
    for (const Rational& c : p->coeffs())
      den_lcm = lcm(den_lcm, c.get_den());
  Integer num_gcd = 0;
  for (const UPoly* p : polys)
    for (const Rational& c : p->coeffs()) {
      Rational scaled = c * Rational(den_lcm);
      num_gcd = gcd(num_gcd, scaled.get_num());
    }
  if (num_gcd == 0) return;
  Rational factor = Rational(den_lcm) / Rational(num_gcd);
  if (factor < 0) factor = -factor;
  const UPoly* first = polys.front();
  if (!first->is_zero() && first->leading() < 0) factor = -factor;
  for (UPoly* p : polys) *p = *p * factor;
}

// Quotient-algebra data shared by every separating-form attempt.
struct QuotientData {
  std::vector<Monomial> qbasis;
  std::vector<QMatrix> mult;
  std::size_t distinct = 0; // trace-form rank: number of distinct points
};

QuotientData quotient_data(const Ideal& ideal, const GroebnerOptions& opt) {
  const SpacePtr& space = ideal.space();
  const auto& gb = ideal.basis(MonomialOrder::grevlex(), opt);
  if (!is_zero_dimensional(ideal, opt))
    fail(ErrorKind::dimension,
         "parametrization requires a finite solution set");
  long budget = opt.step_budget;
  QuotientData qd;
  qd.qbasis = quotient_basis(gb, MonomialOrder::grevlex(), space);
  qd.mult = multiplication_matrices(gb, qd.qbasis, space, &budget);
  qd.distinct = trace_form_rank(qd.qbasis, qd.mult);
  return qd;
}

// Parametrization for a fixed candidate form; empty when the form fails to
// take distinct values on the distinct points.
std::optional<RatPar> ratpar_attempt(const QuotientData& qd,
                                     const std::vector<long>& lambda,
                                     std::size_t n) {
  const std::size_t D = qd.qbasis.size();
  QMatrix mu(D, D);
  for (std::size_t i = 0; i < n; ++i) {
    if (lambda[i] == 0) continue;
    mu = mu + qd.mult[i] * Rational(lambda[i]);
  }
  // Power sums of the eigenvalues of mu, plus the mixed traces needed for
  // the coordinate numerators.
  std::vector<Rational> s(D + 1);
  std::vector<std::vector<Rational>> sigma(n, std::vector<Rational>(D));
  QMatrix power = QMatrix::identity(D);
  s[0] = D;
  for (std::size_t i = 0; i < n; ++i) sigma[i][0] = qd.mult[i].trace();
  for (std::size_t j = 1; j <= D; ++j) {
    power = power * mu;
    s[j] = power.trace();
    if (j < D)
      for (std::size_t i = 0; i < n; ++i)
        sigma[i][j] = trace_of_product(qd.mult[i], power);
  }
  UPoly qfull(newton_from_power_sums(s, D));
  UPoly qbar = squarefree_part(qfull).primitive();
  const std::size_t d = static_cast<std::size_t>(qbar.degree());
  if (d != qd.distinct) return std::nullopt; // not separating
  // Horner polynomials of qbar: qbar(T)/(T - a) = sum_j a^j h_j(T).
  std::vector<UPoly> h(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Rational> hc(d - j, Rational(0));
    for (std::size_t k = j + 1; k <= d; ++k) hc[k - 1 - j] = qbar.coeff(k);
    h[j] = UPoly(std::move(hc));
  }
  RatPar out;
  out.q = qbar;
  out.q0 = UPoly::zero();
  for (std::size_t j = 0; j < d; ++j) out.q0 = out.q0 + h[j] * s[j];
  out.qi.assign(n, UPoly::zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out.qi[i] = out.qi[i] + h[j] * sigma[i][j];
  std::vector<UPoly*> tuple{&out.q0};
  for (auto& p : out.qi) tuple.push_back(&p);
  normalize_tuple(tuple);
  out.lambda = lambda;
  return out;
}

// Chinese-remainder merge of same-form parametrizations; empty when two
// parts disagree on a shared root (the form is not separating for the
// union).
std::optional<RatPar> crt_merge(const std::vector<RatPar>& pieces,
                                std::size_t n) {
  UPoly modulus; // accumulated, monic
  std::vector<UPoly> v(n);
  bool first = true;
  for (const RatPar& piece : pieces) {
    const UPoly qk = piece.q.monic();
    const UPoly inv0 = upoly_inverse_mod(piece.q0, qk);
    std::vector<UPoly> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = (piece.qi[i] * inv0).mod(qk);
    if (first) {
      modulus = qk;
      v = std::move(w);
      first = false;
      continue;
    }
    const UPoly g = upoly_gcd(modulus, qk);
    if (g.degree() > 0)
      for (std::size_t i = 0; i < n; ++i)
        if (!(v[i] - w[i]).mod(g).is_zero()) return std::nullopt;
    const UPoly h = qk.divmod(g).first.monic(); // new factor, coprime so far
    if (h.degree() > 0) {
      const UPoly inv_mod = upoly_inverse_mod(modulus, h);
      for (std::size_t i = 0; i < n; ++i) {
        const UPoly t = ((w[i] - v[i]) * inv_mod).mod(h);
        v[i] = v[i] + modulus * t;
      }
      modulus = modulus * h;
    }
  }
  RatPar out;
  out.q = modulus.primitive();
  // Denominator convention q0 = q': coprime to the squarefree q, and the
  // coordinate numerators are rescaled to preserve the encoded values.
  out.q0 = out.q.derivative();
  out.qi.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.qi[i] = (v[i] * out.q0).mod(out.q);
  std::vector<UPoly*> tuple{&out.q0};
  for (auto& p : out.qi) tuple.push_back(&p);
  normalize_tuple(tuple);
  return out;
}

} // namespace

RatPar ratpar_empty(std::size_t n) {
  RatPar out;
  out.q = UPoly::constant(Rational(1));
  out.q0 = UPoly::constant(Rational(1));
  out.qi.assign(n, UPoly::zero());
  return out;
}

void ratpar_normalize(RatPar& par) {
  par.q = par.q.primitive();
  std::vector<UPoly*> tuple{&par.q0};
  for (UPoly& p : par.qi) tuple.push_back(&p);
  normalize_tuple(tuple);
}

RatPar ratpar_of_ideal(const Ideal& ideal, std::mt19937_64& rng,
                       const GroebnerOptions& opt) {
  const SpacePtr& space = ideal.space();
  const std::size_t n = space->size();
  const auto& gb = ideal.basis(MonomialOrder::grevlex(), opt);
  if (is_unit_basis(gb)) return ratpar_empty(n);
  QuotientData qd = quotient_data(ideal, opt);
  const std::size_t D = qd.qbasis.size();
  const int max_attempts = 8;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<long> lambda;
    if (attempt == 0) {
      lambda.assign(n, 0);
      lambda[0] = 1;
    } else {
      unsigned long box = static_cast<unsigned long>(D) << attempt;
      lambda = draw_lambda(rng, n, box);
    }
    if (auto out = ratpar_attempt(qd, lambda, n)) return *out;
  }
  fail(ErrorKind::randomness,
       "no separating linear form found within the retry limit");
}

Ideal ideal_of_ratpar(const RatPar& par, const SpacePtr& space,
                      const GroebnerOptions& opt) {
  (void)opt;
  const std::size_t n = space->size();
  if (par.dimension() != n)
    fail(ErrorKind::size, "parametrization dimension mismatch");
  MonomialOrder ord = MonomialOrder::grevlex();
  if (par.is_empty()) {
    return Ideal(space, {MultiPoly::constant(space, ord, Rational(1))});
  }
  auto ext = std::make_shared<VariableSpace>();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(space->label(i));
  ext->add_block("x", std::move(labels));
  ext->add_block("t", {"t"});
  SpacePtr extp = ext;
  const std::size_t tvar = n;
  auto upoly_in_t = [&](const UPoly& p) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      if (p.coeffs()[k] == 0) continue;
      Monomial m(n + 1);
      m[tvar] = static_cast<uint16_t>(k);
      terms.push_back({m, p.coeffs()[k]});
    }
    return MultiPoly::from_terms(extp, ord, std::move(terms));
  };
  std::vector<MultiPoly> gens;
  gens.push_back(upoly_in_t(par.q));
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly xi = MultiPoly::variable(extp, ord, i);
    gens.push_back(upoly_in_t(par.q0) * xi - upoly_in_t(par.qi[i]));
  }
  Ideal joint(extp, std::move(gens));
  std::vector<bool> drop(n + 1, false);
  drop[tvar] = true;
  std::vector<std::optional<std::size_t>> var_map(n + 1);
  for (std::size_t i = 0; i < n; ++i) var_map[i] = i;
  var_map[tvar] = std::nullopt;
  return eliminate(joint, drop, space, var_map, opt);
}

RatPar ratpar_union_merged(const std::vector<UnionPart>& parts,
                           const SpacePtr& space, std::mt19937_64& rng,
                           const GroebnerOptions& opt) {
  const std::size_t n = space->size();
  std::vector<UnionPart> live;
  for (const UnionPart& part : parts) {
    if (!part.ideal)
      fail(ErrorKind::usage, "union part without a defining ideal");
    const auto& b = part.ideal->basis(MonomialOrder::grevlex(), opt);
    if (is_unit_basis(b)) continue;
    bool dup = false;
    for (const UnionPart& seen : live) {
      if (seen.ideal->basis(MonomialOrder::grevlex(), opt) == b) {
        dup = true;
        break;
      }
    }
    if (!dup) live.push_back(part);
  }
  if (live.empty()) return ratpar_empty(n);
  if (live.size() == 1) {
    if (live[0].par && !live[0].par->is_empty()) return *live[0].par;
    return ratpar_of_ideal(*live[0].ideal, rng, opt);
  }

  std::vector<QuotientData> qd;
  qd.reserve(live.size());
  std::size_t total = 0;
  for (const UnionPart& part : live) {
    qd.push_back(quotient_data(*part.ideal, opt));
    total += qd.back().distinct;
  }
  const int max_attempts = 8;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<long> lambda;
    if (attempt == 0) {
      lambda.assign(n, 0);
      lambda[0] = 1;
    } else {
      unsigned long box = static_cast<unsigned long>(total) << attempt;
      lambda = draw_lambda(rng, n, box);
    }
    std::vector<RatPar> pieces;
    pieces.reserve(qd.size());
    bool ok = true;
    for (const QuotientData& part : qd) {
      auto piece = ratpar_attempt(part, lambda, n);
      if (!piece) {
        ok = false;
        break;
      }
      pieces.push_back(std::move(*piece));
    }
    if (!ok) continue;
    if (auto merged = crt_merge(pieces, n)) {
      merged->lambda = lambda;
      return *merged;
    }
  }
  fail(ErrorKind::randomness,
       "no separating linear form found within the retry limit");
}

RatPar ratpar_union(const std::vector<RatPar>& parts, const SpacePtr& space,
                    std::mt19937_64& rng, const GroebnerOptions& opt) {
  const std::size_t n = space->size();
  std::vector<const RatPar*> live;
  for (const auto& p : parts) {
    if (p.is_empty()) continue;
    bool dup = false;
    for (const RatPar* q : live) {
      if (q->q == p.q && q->q0 == p.q0 && q->qi == p.qi) {
        dup = true;
        break;
      }
    }
    if (!dup) live.push_back(&p);
  }
  if (live.empty()) return ratpar_empty(n);
  if (live.size() == 1) return *live.front();

  std::vector<Ideal> ideals;
  ideals.reserve(live.size());
  for (const RatPar* p : live)
    ideals.push_back(ideal_of_ratpar(*p, space, opt));
  std::vector<UnionPart> uparts;
  uparts.reserve(live.size());
  for (std::size_t k = 0; k < live.size(); ++k)
    uparts.push_back(UnionPart{&ideals[k], live[k]});
  return ratpar_union_merged(uparts, space, rng, opt);
}

long ratpar_point_count(const RatPar& par) {
  return par.is_empty() ? 0 : par.q.degree();
}

} // namespace exactsdp
