#pragma once

#include <string>
#include <vector>

#include "exactsdp/pencil.hpp"
#include "exactsdp/poly.hpp"
#include "exactsdp/qmatrix.hpp"
#include "exactsdp/solver.hpp"

namespace exactsdp {

/// Gram-matrix formulation of a sum-of-squares question. A polynomial f of
/// even degree 2d in k variables equals b^T G b — with b the column of all
/// degree-d monomials — exactly when the symmetric matrix G lies on an affine
/// pencil A(x); positive semidefinite points of rank r on that pencil are the
/// certificates that f is a sum of r squares.
struct GramPencil {
  SpacePtr space;              // ring of `form` (input ring, possibly extended)
  MultiPoly form;              // the homogeneous polynomial being matched
  std::vector<Monomial> basis; // degree-d monomials, exponents lex-decreasing
  Pencil pencil;               // b^T A(x) b == form identically in x
  bool homogenized = false;    // true: a fresh variable was appended
  std::string fresh_label;     // its display name when homogenized
};

/// Builds the Gram pencil of a polynomial of even degree. A nonhomogeneous
/// input is first homogenized with a fresh variable (a decomposition of the
/// homogenization restricts to one of the input by setting that variable
/// to 1, and conversely). The matrix basis A_1..A_n spans the kernel of the
/// coefficient-matching map, so the pencil hits every Gram matrix of `form`.
/// Usage error on the zero polynomial or odd degree.
GramPencil build_gram_pencil(const MultiPoly& f);

/// One weighted square w * g^2 of an exact decomposition.
struct WeightedSquare {
  Rational weight; // positive
  MultiPoly form;  // rational linear combination of the basis monomials
};

/// Exact weighted-square decomposition of a rational positive semidefinite
/// Gram matrix: returns (w_i, g_i) with b^T point b == sum w_i g_i^2, one
/// square per nonzero pivot of a pivoted LDL^T factorization, so the number
/// of squares equals rank(point). The identity is re-verified by expansion
/// before returning. Usage error when `point` has the wrong size or is not
/// positive semidefinite.
std::vector<WeightedSquare> extract_rational_decomposition(
    const GramPencil& gram, const QMatrix& point);

/// A fully rational certificate extracted from one feasible candidate.
struct SosWitness {
  std::size_t candidate_index = 0;     // into report.candidates
  QMatrix gram;                        // exact PSD Gram matrix of rank <= r
  std::vector<WeightedSquare> squares; // form == sum w * g^2 exactly
};

struct SosCertificate {
  std::size_t length_bound = 0; // the r that was asked about
  bool feasible = false;        // f is a sum of at most `length_bound` squares
  GramPencil gram;
  SolutionReport report;           // solver output on the Gram pencil
  std::vector<SosWitness> witnesses; // one per rational feasible candidate
  std::vector<std::string> notes;
};

/// Decides whether f is a sum of at most r squares of polynomials with real
/// coefficients, by solving the rank-constrained feasibility problem on the
/// Gram pencil (degenerate-cost mode). Every feasible candidate with rational
/// coordinates is turned into an explicit rational weighted-square witness;
/// candidates in a proper algebraic extension stay represented through the
/// parametrization and are flagged in `notes`.
SosCertificate certify_sos_length(const MultiPoly& f, std::size_t r,
                                  const SolverConfig& base = {});

} // namespace exactsdp
