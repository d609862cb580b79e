#include "exactsdp/pencil.hpp"

#include <algorithm>
#include <string>

#include "exactsdp/errors.hpp"
#include "exactsdp/fglm.hpp"

namespace exactsdp {

void validate_pencil(const Pencil& pencil) {
  if (pencil.m == 0) fail(ErrorKind::usage, "pencil size m must be positive");
  if (pencil.n == 0)
    fail(ErrorKind::usage, "pencil needs at least one variable");
  if (pencil.mats.size() != pencil.n + 1)
    fail(ErrorKind::usage, "pencil needs n + 1 matrices, got " +
                               std::to_string(pencil.mats.size()));
  for (std::size_t i = 0; i < pencil.mats.size(); ++i) {
    const QMatrix& a = pencil.mats[i];
    if (a.rows() != pencil.m || a.cols() != pencil.m)
      fail(ErrorKind::usage,
           "pencil matrix " + std::to_string(i) + " is not m x m");
    if (!a.is_symmetric())
      fail(ErrorKind::usage,
           "pencil matrix " + std::to_string(i) + " is not symmetric");
  }
}

QMatrix evaluate_pencil(const Pencil& pencil, const std::vector<Rational>& x) {
  validate_pencil(pencil);
  if (x.size() != pencil.n)
    fail(ErrorKind::usage, "point dimension does not match pencil");
  QMatrix out = pencil.mats[0];
  for (std::size_t i = 0; i < pencil.n; ++i)
    out = out + pencil.mats[i + 1] * x[i];
  return out;
}

PolyMatrix pencil_poly(const Pencil& pencil, const SpacePtr& space,
                       const MonomialOrder& order) {
  validate_pencil(pencil);
  if (space->size() < pencil.n)
    fail(ErrorKind::size, "space too small for pencil variables");
  PolyMatrix out(pencil.m, pencil.m, space, order);
  for (std::size_t r = 0; r < pencil.m; ++r)
    for (std::size_t c = 0; c < pencil.m; ++c) {
      std::vector<Term> terms;
      if (pencil.mats[0].at(r, c) != 0)
        terms.push_back({Monomial(space->size()), pencil.mats[0].at(r, c)});
      for (std::size_t i = 0; i < pencil.n; ++i) {
        const Rational& coeff = pencil.mats[i + 1].at(r, c);
        if (coeff == 0) continue;
        Monomial mono(space->size());
        mono[i] = 1;
        terms.push_back({mono, coeff});
      }
      out.at(r, c) = MultiPoly::from_terms(space, order, std::move(terms));
    }
  return out;
}

std::size_t incidence_generator_count(std::size_t m, std::size_t p) {
  return (m - p) * (m + p + 1) / 2;
}

std::size_t incidence_full_count(std::size_t m, std::size_t p) {
  const std::size_t k = m - p;
  return m * k + k * (k + 1) / 2;
}

std::vector<KernelSupport> all_supports(std::size_t m, std::size_t p) {
  if (p >= m)
    fail(ErrorKind::degenerate_support,
         "rank target p = " + std::to_string(p) +
             " leaves no kernel columns for m = " + std::to_string(m));
  std::vector<KernelSupport> out;
  for (auto& rows : subsets_of_size(m, m - p))
    out.push_back(KernelSupport{p, std::move(rows)});
  return out;
}

IncidenceSystem build_incidence_reduced(const Pencil& pencil, std::size_t p,
                                        const std::vector<std::size_t>& rows) {
  validate_pencil(pencil);
  const std::size_t m = pencil.m;
  if (p >= m)
    fail(ErrorKind::degenerate_support,
         "rank target p = " + std::to_string(p) +
             " leaves no kernel columns for m = " + std::to_string(m));
  const std::size_t k = m - p; // kernel columns
  if (rows.size() != k)
    fail(ErrorKind::usage, "support must list m - p rows");
  if (!std::is_sorted(rows.begin(), rows.end()) ||
      std::adjacent_find(rows.begin(), rows.end()) != rows.end())
    fail(ErrorKind::usage, "support rows must be strictly increasing");
  if (rows.back() >= m) fail(ErrorKind::usage, "support row out of range");

  // Position of each matrix row inside the support, or k for free rows.
  std::vector<std::size_t> pos(m, k);
  for (std::size_t a = 0; a < k; ++a) pos[rows[a]] = a;

  auto space = std::make_shared<VariableSpace>();
  space->add_indexed_block("x", pencil.n);
  std::vector<std::string> ylabels;
  std::vector<std::size_t> yrow(m, 0); // global index of y_{r,0} for free rows
  for (std::size_t r = 0; r < m; ++r) {
    if (pos[r] != k) continue;
    yrow[r] = pencil.n + ylabels.size();
    for (std::size_t j = 0; j < k; ++j)
      ylabels.push_back("y" + std::to_string(r + 1) + std::to_string(j + 1));
  }
  if (!ylabels.empty()) space->add_block("y", ylabels);
  SpacePtr sp = space;

  const MonomialOrder order = MonomialOrder::grevlex();
  PolyMatrix apoly = pencil_poly(pencil, sp, order);

  // Entry (r, j) of A(x) . Y(y) with the support rows of Y pinned to the
  // identity: A[r][rows[j]] + sum over free rows l of A[r][l] * y_{l,j}.
  auto product_entry = [&](std::size_t r, std::size_t j) {
    MultiPoly g = apoly.at(r, rows[j]);
    for (std::size_t l = 0; l < m; ++l) {
      if (pos[l] != k) continue;
      g += apoly.at(r, l) *
           MultiPoly::variable(sp, order, yrow[l] + j);
    }
    return g;
  };

  IncidenceSystem inc;
  inc.p = p;
  inc.support = KernelSupport{p, rows};
  inc.space = sp;
  inc.full_count = incidence_full_count(m, p);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t jmax = (pos[r] != k) ? pos[r] + 1 : k;
    for (std::size_t j = 0; j < jmax; ++j)
      inc.f_red.push_back(product_entry(r, j));
  }
  if (inc.f_red.size() != incidence_generator_count(m, p))
    fail(ErrorKind::size, "incidence generator count mismatch");
  return inc;
}

PolySystem incidence_discarded_entries(const Pencil& pencil,
                                       const IncidenceSystem& inc) {
  const std::size_t m = pencil.m;
  const std::size_t k = m - inc.p;
  const auto& rows = inc.support.rows;
  std::vector<std::size_t> pos(m, k);
  for (std::size_t a = 0; a < k; ++a) pos[rows[a]] = a;
  std::vector<std::size_t> yrow(m, 0);
  std::size_t next = pencil.n;
  for (std::size_t r = 0; r < m; ++r) {
    if (pos[r] != k) continue;
    yrow[r] = next;
    next += k;
  }
  const MonomialOrder order = MonomialOrder::grevlex();
  PolyMatrix apoly = pencil_poly(pencil, inc.space, order);
  PolySystem out;
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t r = rows[a];
    for (std::size_t j = a + 1; j < k; ++j) {
      MultiPoly g = apoly.at(r, rows[j]);
      for (std::size_t l = 0; l < m; ++l) {
        if (pos[l] != k) continue;
        g += apoly.at(r, l) *
             MultiPoly::variable(inc.space, order, yrow[l] + j);
      }
      out.push_back(g);
    }
  }
  return out;
}

bool incidence_smooth(const IncidenceSystem& inc, const GroebnerOptions& opt) {
  const std::size_t c = inc.f_red.size();
  const std::size_t nvars = inc.space->size();
  // A nonempty variety cannot have the expected codimension when that
  // codimension exceeds the ambient dimension.
  if (c > nvars) return false;

  // Extended ring: the incidence variables followed by one kernel
  // coordinate per equation.
  auto ext = std::make_shared<VariableSpace>();
  for (std::size_t b = 0; b < inc.space->block_count(); ++b) {
    const auto& blk = inc.space->block(b);
    ext->add_block(blk.name, blk.labels);
  }
  ext->add_indexed_block("w", c);
  const SpacePtr extp = ext;
  const MonomialOrder order = MonomialOrder::grevlex();

  std::vector<std::optional<std::size_t>> vmap(nvars);
  std::vector<std::size_t> vars(nvars);
  for (std::size_t v = 0; v < nvars; ++v) {
    vmap[v] = v;
    vars[v] = v;
  }
  const PolyMatrix jac = jacobian(inc.f_red, vars);

  PolySystem common;
  common.reserve(c + nvars + 1);
  for (const MultiPoly& f : inc.f_red)
    common.push_back(f.mapped_to(extp, order, vmap));
  for (std::size_t v = 0; v < nvars; ++v) {
    MultiPoly entry = MultiPoly::zero(extp, order);
    for (std::size_t k = 0; k < c; ++k) {
      if (jac.at(k, v).is_zero()) continue;
      entry += jac.at(k, v).mapped_to(extp, order, vmap) *
               MultiPoly::variable(extp, order, nvars + k);
    }
    common.push_back(std::move(entry));
  }

  const MultiPoly one = MultiPoly::constant(extp, order, Rational(1));
  for (std::size_t k = 0; k < c; ++k) {
    PolySystem gens = common;
    gens.push_back(MultiPoly::variable(extp, order, nvars + k) - one);
    Ideal chart(extp, std::move(gens));
    if (!chart.is_unit(opt)) return false;
  }
  return true;
}

RegularityReport check_regularity_report(const Pencil& pencil, std::size_t p,
                                         const GroebnerOptions& opt) {
  validate_pencil(pencil);
  RegularityReport report;
  report.p = p;
  for (const KernelSupport& support : all_supports(pencil.m, p)) {
    IncidenceSystem inc = build_incidence_reduced(pencil, p, support.rows);
    Ideal ideal(inc.space, inc.f_red);
    if (ideal.is_unit(opt)) continue; // empty variety
    if (!incidence_smooth(inc, opt)) {
      report.regular = false;
      report.failing = support;
      return report;
    }
  }
  return report;
}

bool check_regularity(const Pencil& pencil, std::size_t p,
                      const GroebnerOptions& opt) {
  return check_regularity_report(pencil, p, opt).regular;
}

} // namespace exactsdp
