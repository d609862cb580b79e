#include "exactsdp/sos.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <utility>

#include "exactsdp/classify.hpp"
#include "exactsdp/errors.hpp"

namespace exactsdp {
namespace {

void push_monomials(std::size_t k, uint32_t d, Monomial& cur, std::size_t pos,
                    std::vector<Monomial>& out) {
  if (pos + 1 == k) {
    cur[pos] = static_cast<uint16_t>(d);
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (uint32_t e = d + 1; e-- > 0;) {
    cur[pos] = static_cast<uint16_t>(e);
    push_monomials(k, d - e, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

/// All degree-d monomials in k variables, exponent vectors in lexicographic
/// decreasing order (all weight on the first variable first).
std::vector<Monomial> monomials_of_degree(std::size_t k, uint32_t d) {
  std::vector<Monomial> out;
  Monomial cur(k);
  if (k == 0) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  push_monomials(k, d, cur, 0, out);
  return out;
}

/// b^T point b expanded in the polynomial ring.
MultiPoly quadratic_form(const GramPencil& gram, const QMatrix& point) {
  std::vector<Term> terms;
  const std::size_t m = gram.basis.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (point.at(i, j) != 0)
        terms.push_back({gram.basis[i] * gram.basis[j], point.at(i, j)});
  return MultiPoly::from_terms(gram.space, gram.form.order(), std::move(terms));
}

} // namespace

GramPencil build_gram_pencil(const MultiPoly& f) {
  if (f.is_zero())
    fail(ErrorKind::usage, "the zero polynomial has no Gram pencil");
  const uint32_t deg = f.total_degree();
  if (deg % 2 != 0)
    fail(ErrorKind::usage, "a sum of squares has even degree, got degree " +
                               std::to_string(deg));

  GramPencil out;
  out.space = f.space();
  out.form = f;

  bool homogeneous = true;
  for (const Term& t : f.terms())
    if (t.mono.degree() != deg) {
      homogeneous = false;
      break;
    }
  if (!homogeneous) {
    const VariableSpace& sp = *f.space();
    std::vector<std::string> labels;
    labels.reserve(sp.size() + 1);
    for (std::size_t i = 0; i < sp.size(); ++i) labels.push_back(sp.label(i));
    std::string fresh = "u0";
    while (std::find(labels.begin(), labels.end(), fresh) != labels.end())
      fresh += "_";
    labels.push_back(fresh);
    auto ext = std::make_shared<VariableSpace>();
    ext->add_block("u", std::move(labels));
    const std::size_t old = sp.size();
    std::vector<Term> terms;
    terms.reserve(f.term_count());
    for (const Term& t : f.terms()) {
      Monomial mono(old + 1);
      for (std::size_t i = 0; i < old; ++i) mono[i] = t.mono[i];
      mono[old] = static_cast<uint16_t>(deg - t.mono.degree());
      terms.push_back({mono, t.coeff});
    }
    out.space = ext;
    out.form =
        MultiPoly::from_terms(out.space, f.order(), std::move(terms));
    out.homogenized = true;
    out.fresh_label = fresh;
  }

  const std::size_t k = out.space->size();
  const uint32_t d = deg / 2;
  out.basis = monomials_of_degree(k, d);
  const std::size_t bsize = out.basis.size();

  // Unknowns: the upper-triangle entries G_ij, i <= j, row-major.
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  entries.reserve(bsize * (bsize + 1) / 2);
  for (std::size_t i = 0; i < bsize; ++i)
    for (std::size_t j = i; j < bsize; ++j) entries.emplace_back(i, j);
  const std::size_t unknowns = entries.size();

  // One matching equation per degree-2d monomial: the coefficient of mu in
  // b^T G b equals its coefficient in the form (zero when absent).
  const std::vector<Monomial> rows = monomials_of_degree(k, deg);
  std::map<std::vector<uint16_t>, std::size_t> row_of;
  for (std::size_t idx = 0; idx < rows.size(); ++idx)
    row_of[rows[idx].exps()] = idx;

  QMatrix sys(rows.size(), unknowns);
  for (std::size_t u = 0; u < unknowns; ++u) {
    const auto [i, j] = entries[u];
    const Monomial prod = out.basis[i] * out.basis[j];
    sys.at(row_of.at(prod.exps()), u) += Rational(i == j ? 1 : 2);
  }
  std::vector<Rational> rhs(rows.size(), Rational(0));
  for (const Term& t : out.form.terms())
    rhs[row_of.at(t.mono.exps())] = t.coeff;

  // Every degree-2d monomial is a product of two degree-d monomials, so the
  // matching map is onto and a particular solution always exists.
  const auto particular = sys.solve(rhs);
  if (!particular)
    fail(ErrorKind::size, "Gram coefficient matching is inconsistent");

  const auto unflatten = [&](const std::vector<Rational>& v) {
    QMatrix a(bsize, bsize);
    for (std::size_t u = 0; u < unknowns; ++u) {
      const auto [i, j] = entries[u];
      a.at(i, j) = v[u];
      a.at(j, i) = v[u];
    }
    return a;
  };

  std::vector<QMatrix> mats;
  mats.push_back(unflatten(*particular));
  for (const auto& dir : sys.nullspace()) mats.push_back(unflatten(dir));

  out.pencil.m = bsize;
  out.pencil.n = mats.size() - 1;
  out.pencil.mats = std::move(mats);
  if (out.pencil.n > 0) validate_pencil(out.pencil);
  return out;
}

std::vector<WeightedSquare> extract_rational_decomposition(
    const GramPencil& gram, const QMatrix& point) {
  const std::size_t m = gram.basis.size();
  if (point.rows() != m || point.cols() != m)
    fail(ErrorKind::usage, "Gram matrix size does not match the basis");
  const LDLT ldlt = point.ldlt_psd();
  if (!ldlt.success)
    fail(ErrorKind::usage,
         "matrix is not positive semidefinite, no real decomposition exists");

  // point = sum_k diag[k] w_k w_k^T with w_k[a] = L[inv_perm[a], k].
  std::vector<std::size_t> inv_perm(m);
  for (std::size_t i = 0; i < m; ++i) inv_perm[ldlt.perm[i]] = i;

  std::vector<WeightedSquare> out;
  for (std::size_t col = 0; col < m; ++col) {
    if (ldlt.diag[col] == 0) continue;
    std::vector<Term> terms;
    for (std::size_t a = 0; a < m; ++a) {
      const Rational& c = ldlt.unit_lower.at(inv_perm[a], col);
      if (c != 0) terms.push_back({gram.basis[a], c});
    }
    out.push_back(
        {ldlt.diag[col],
         MultiPoly::from_terms(gram.space, gram.form.order(), std::move(terms))});
  }

  MultiPoly total = MultiPoly::zero(gram.space, gram.form.order());
  for (const WeightedSquare& ws : out)
    total += ws.form * ws.form * ws.weight;
  if (total != quadratic_form(gram, point))
    fail(ErrorKind::size, "weighted squares fail to reproduce the form");
  return out;
}

SosCertificate certify_sos_length(const MultiPoly& f, std::size_t r,
                                  const SolverConfig& base) {
  SosCertificate cert;
  cert.length_bound = r;
  cert.gram = build_gram_pencil(f);
  const Pencil& pencil = cert.gram.pencil;

  if (cert.gram.homogenized)
    cert.notes.push_back(
        "input was not homogeneous: certified its homogenization in the "
        "fresh variable '" +
        cert.gram.fresh_label +
        "' (set that variable to 1 to recover a decomposition of the input)");

  if (pencil.n == 0) {
    // The Gram matrix is unique; classify it directly.
    const Classification cls = classify_qmatrix(pencil.mats[0]);
    SolutionReport rep;
    rep.m = pencil.m;
    rep.n = 0;
    rep.r = r;
    rep.degenerate_cost = true;
    rep.parametrization = ratpar_empty(0);
    rep.rank_profile.assign(pencil.m + 1, 0);
    Candidate cand;
    cand.interval = {Rational(0), Rational(0)};
    cand.root_is_rational = true;
    cand.is_psd = cls.is_psd;
    cand.rank = cls.rank;
    cand.feasible = cls.is_psd && cls.rank <= r;
    rep.candidates.push_back(std::move(cand));
    if (rep.candidates[0].feasible) {
      rep.feasible.push_back(0);
      rep.minimizers.push_back(0);
      rep.rank_profile[cls.rank] += 1;
    }
    cert.report = std::move(rep);
  } else {
    SolverConfig run = base;
    run.r = r;
    run.cost.clear(); // pure feasibility: no objective
    cert.report = solve_sdp(pencil, run);
  }
  cert.feasible = !cert.report.feasible.empty();

  for (const std::size_t idx : cert.report.feasible) {
    const Candidate& cand = cert.report.candidates[idx];
    if (!cand.root_is_rational) {
      cert.notes.push_back(
          "feasible candidate " + std::to_string(idx) +
          " has algebraic coordinates; its Gram matrix is carried by the "
          "parametrization and is not expanded into rational squares");
      continue;
    }
    SosWitness w;
    w.candidate_index = idx;
    w.gram = pencil.n == 0 ? pencil.mats[0]
                           : evaluate_pencil(pencil, cand.rational_coords);
    w.squares = extract_rational_decomposition(cert.gram, w.gram);
    cert.witnesses.push_back(std::move(w));
  }
  return cert;
}

} // namespace exactsdp
