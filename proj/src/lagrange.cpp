#include "exactsdp/lagrange.hpp"

#include <string>

#include "exactsdp/errors.hpp"

namespace exactsdp {

Integer binomial(unsigned long n, unsigned long k) {
  if (k > n) return Integer(0);
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

namespace {

void validate_cost(const std::vector<Rational>& cost, std::size_t n) {
  if (cost.size() != n)
    fail(ErrorKind::usage, "cost dimension does not match pencil");
  for (const Rational& c : cost)
    if (c != 0) return;
  fail(ErrorKind::degenerate_cost,
       "cost is identically zero; no objective to optimize");
}

// Pencil in the transformed coordinates x = backward * x'.
Pencil transformed_pencil(const Pencil& pencil, const CoordinateChange& change) {
  if (change.is_identity) return pencil;
  Pencil out;
  out.m = pencil.m;
  out.n = pencil.n;
  out.mats.resize(pencil.n + 1, QMatrix(pencil.m, pencil.m));
  out.mats[0] = pencil.mats[0];
  for (std::size_t k = 0; k < pencil.n; ++k) {
    QMatrix acc(pencil.m, pencil.m);
    for (std::size_t i = 0; i < pencil.n; ++i) {
      const Rational& w = change.backward.at(i, k);
      if (w == 0) continue;
      acc = acc + pencil.mats[i + 1] * w;
    }
    out.mats[k + 1] = acc;
  }
  return out;
}

// sum over equations of zbar_i * d f_i / d var, where zbar is (z_1, ...,
// z_last, 1): the first `nz` multipliers are variables starting at global
// index `zoffset`, the final one is the constant 1.
MultiPoly multiplier_combination(const PolySystem& eqs, std::size_t var,
                                 std::size_t nz, std::size_t zoffset,
                                 const SpacePtr& space,
                                 const MonomialOrder& order) {
  MultiPoly acc = MultiPoly::zero(space, order);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    MultiPoly deriv = eqs[i].derivative(var);
    if (deriv.is_zero()) continue;
    if (i < nz)
      acc += MultiPoly::variable(space, order, zoffset + i) * deriv;
    else
      acc += deriv;
  }
  return acc;
}

} // namespace

CoordinateChange cost_coordinate_change(const std::vector<Rational>& cost) {
  const std::size_t n = cost.size();
  validate_cost(cost, n);
  CoordinateChange change;
  std::size_t pivot = 0;
  while (cost[pivot] == 0) ++pivot;
  bool is_e1 = (pivot == 0 && cost[0] == 1);
  if (is_e1)
    for (std::size_t i = 1; i < n; ++i)
      if (cost[i] != 0) is_e1 = false;
  if (is_e1) {
    change.forward = QMatrix::identity(n);
    change.backward = QMatrix::identity(n);
    change.is_identity = true;
    return change;
  }
  QMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) u.at(0, j) = cost[j];
  std::size_t row = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == pivot) continue;
    u.at(row, k) = 1;
    ++row;
  }
  change.forward = u;
  auto inv = u.inverse();
  if (!inv) fail(ErrorKind::size, "coordinate change is singular");
  change.backward = *inv;
  change.is_identity = false;
  return change;
}

LagrangeSystem build_lagrange_compressed(const Pencil& pencil,
                                         const std::vector<Rational>& cost,
                                         std::size_t p,
                                         const std::vector<std::size_t>& rows) {
  validate_pencil(pencil);
  validate_cost(cost, pencil.n);
  const std::size_t n = pencil.n;

  LagrangeSystem sys;
  sys.p = p;
  sys.change = cost_coordinate_change(cost);
  Pencil tp = transformed_pencil(pencil, sys.change);
  IncidenceSystem inc = build_incidence_reduced(tp, p, rows);
  sys.support = inc.support;

  const std::size_t cp = inc.f_red.size();
  const std::size_t nfree = inc.space->size() - n; // p(m-p)
  const std::size_t nz = cp - 1;

  auto space = std::make_shared<VariableSpace>();
  space->add_indexed_block("x", n);
  if (nfree > 0)
    space->add_block("y", inc.space->block_named("y").labels);
  if (nz > 0) space->add_indexed_block("z", nz);
  sys.space = space;
  const MonomialOrder order = MonomialOrder::grevlex();

  std::vector<std::optional<std::size_t>> var_map(inc.space->size());
  for (std::size_t v = 0; v < inc.space->size(); ++v) var_map[v] = v;
  PolySystem f;
  for (const MultiPoly& g : inc.f_red)
    f.push_back(g.mapped_to(sys.space, order, var_map));

  sys.equations = f;
  const std::size_t zoff = n + nfree;
  // Gradient equations for every transformed coordinate except the cost
  // coordinate x'_1.
  for (std::size_t j = 1; j < n; ++j)
    sys.equations.push_back(
        multiplier_combination(f, j, nz, zoff, sys.space, order));
  for (std::size_t l = 0; l < nfree; ++l)
    sys.equations.push_back(
        multiplier_combination(f, n + l, nz, zoff, sys.space, order));
  return sys;
}

LagrangeFullSystem build_lagrange_full(const Pencil& pencil,
                                       const std::vector<Rational>& cost,
                                       std::size_t p,
                                       const std::vector<std::size_t>& rows) {
  validate_pencil(pencil);
  validate_cost(cost, pencil.n);
  const std::size_t m = pencil.m;
  const std::size_t n = pencil.n;
  if (p >= m)
    fail(ErrorKind::degenerate_support,
         "rank target p = " + std::to_string(p) +
             " leaves no kernel columns for m = " + std::to_string(m));
  const std::size_t k = m - p;

  LagrangeFullSystem sys;
  sys.p = p;
  sys.support = KernelSupport{p, rows};

  if (p == 0) {
    // The kernel basis is fully pinned to the identity; the incidence
    // equations are the lower entries of A(x) itself.
    const std::size_t cf = m * (m + 1) / 2;
    auto space = std::make_shared<VariableSpace>();
    space->add_indexed_block("x", n);
    space->add_indexed_block("z", cf);
    sys.space = space;
    const MonomialOrder order = MonomialOrder::grevlex();
    PolyMatrix apoly = pencil_poly(pencil, sys.space, order);
    PolySystem f;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t j = 0; j <= r; ++j) f.push_back(apoly.at(r, j));
    sys.equations = f;
    for (std::size_t j = 0; j < n; ++j) {
      MultiPoly g = MultiPoly::constant(sys.space, order, cost[j]);
      for (std::size_t i = 0; i < cf; ++i) {
        MultiPoly deriv = f[i].derivative(j);
        if (deriv.is_zero()) continue;
        g += MultiPoly::variable(sys.space, order, n + i) * deriv;
      }
      sys.equations.push_back(g);
    }
    return sys;
  }

  if (rows.size() != k)
    fail(ErrorKind::usage, "support must list m - p rows");
  std::vector<std::size_t> pos(m, k);
  for (std::size_t a = 0; a < k; ++a) {
    if (rows[a] >= m) fail(ErrorKind::usage, "support row out of range");
    pos[rows[a]] = a;
  }

  const std::size_t ny = m * k;
  const std::size_t nzv = (2 * m - p) * k; // one multiplier per equation
  auto space = std::make_shared<VariableSpace>();
  space->add_indexed_block("x", n);
  std::vector<std::string> ylabels;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < k; ++j)
      ylabels.push_back("y" + std::to_string(r + 1) + std::to_string(j + 1));
  space->add_block("y", ylabels);
  space->add_indexed_block("z", nzv);
  sys.space = space;
  const MonomialOrder order = MonomialOrder::grevlex();

  PolyMatrix apoly = pencil_poly(pencil, sys.space, order);
  auto yvar = [&](std::size_t r, std::size_t j) {
    return MultiPoly::variable(sys.space, order, n + r * k + j);
  };

  PolySystem f;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < k; ++j) {
      MultiPoly g = MultiPoly::zero(sys.space, order);
      for (std::size_t l = 0; l < m; ++l) g += apoly.at(r, l) * yvar(l, j);
      f.push_back(g);
    }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < k; ++j) {
      MultiPoly g = yvar(rows[a], j);
      if (a == j)
        g -= MultiPoly::constant(sys.space, order, Rational(1));
      f.push_back(g);
    }
  if (f.size() != nzv) fail(ErrorKind::size, "multiplier count mismatch");

  sys.equations = f;
  auto gradient_eq = [&](std::size_t var, const Rational& costcoef) {
    MultiPoly g = MultiPoly::zero(sys.space, order);
    if (costcoef != 0)
      g = MultiPoly::constant(sys.space, order, costcoef);
    for (std::size_t i = 0; i < f.size(); ++i) {
      MultiPoly deriv = f[i].derivative(var);
      if (deriv.is_zero()) continue;
      g += MultiPoly::variable(sys.space, order, n + ny + i) * deriv;
    }
    return g;
  };
  for (std::size_t j = 0; j < n; ++j)
    sys.equations.push_back(gradient_eq(j, cost[j]));
  for (std::size_t l = 0; l < ny; ++l)
    sys.equations.push_back(gradient_eq(n + l, Rational(0)));
  return sys;
}

Integer theta_bound(std::size_t m, std::size_t n, std::size_t p) {
  if (p >= m)
    fail(ErrorKind::degenerate_support,
         "rank target p = " + std::to_string(p) +
             " leaves no kernel columns for m = " + std::to_string(m));
  if (n == 0) fail(ErrorKind::usage, "need at least one variable");
  const unsigned long cp =
      static_cast<unsigned long>(incidence_generator_count(m, p));
  const unsigned long e = static_cast<unsigned long>(p * (m - p));
  Integer total(0);
  for (unsigned long k = 0; k <= e; ++k) {
    if (k > n) break;
    const long mid = static_cast<long>(k) + static_cast<long>(cp) - 1 -
                     static_cast<long>(e);
    if (mid < 0) continue;
    total += binomial(cp, static_cast<unsigned long>(n) - k) *
             binomial(static_cast<unsigned long>(n) - 1,
                      static_cast<unsigned long>(mid)) *
             binomial(e, k);
  }
  return total;
}

Integer theta_bound_by_expansion(std::size_t m, std::size_t n, std::size_t p) {
  if (p >= m)
    fail(ErrorKind::degenerate_support,
         "rank target p = " + std::to_string(p) +
             " leaves no kernel columns for m = " + std::to_string(m));
  if (n == 0) fail(ErrorKind::usage, "need at least one variable");
  const unsigned long cp =
      static_cast<unsigned long>(incidence_generator_count(m, p));
  const unsigned long e = static_cast<unsigned long>(p * (m - p));
  const unsigned long dn = static_cast<unsigned long>(n);
  // Coefficient of s_x^n s_y^e s_z^(cp-1) in
  // (s_x + s_y)^cp (s_y + s_z)^(n-1) (s_x + s_z)^e, by expanding all three
  // factors and matching exponents.
  Integer total(0);
  for (unsigned long i = 0; i <= cp; ++i)       // s_x-degree from factor 1
    for (unsigned long j = 0; j <= dn - 1; ++j) // s_y-degree from factor 2
      for (unsigned long l = 0; l <= e; ++l) {  // s_x-degree from factor 3
        const unsigned long dx = i + l;
        const unsigned long dy = (cp - i) + j;
        const unsigned long dz = (dn - 1 - j) + (e - l);
        if (dx != dn || dy != e || dz != cp - 1) continue;
        total += binomial(cp, i) * binomial(dn - 1, j) * binomial(e, l);
      }
  return total;
}

Integer total_theta_bound(std::size_t m, std::size_t n, std::size_t r) {
  const std::size_t pmax = std::min(r, m - 1);
  Integer total(0);
  for (std::size_t p = 0; p <= pmax; ++p)
    total += binomial(m, p) * theta_bound(m, n, p);
  return total;
}

} // namespace exactsdp
