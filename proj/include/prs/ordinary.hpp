#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "prs/dirichlet.hpp"
#include "prs/eisenstein.hpp"
#include "prs/localfactors.hpp"
#include "prs/matrix.hpp"
#include "prs/newform.hpp"
#include "prs/qexpansion.hpp"

namespace prs {

// Finite q-expansion model of the ordinary subspace in a fixed weight and
// level.  Nothing is assumed about the basis beyond what the fits certify:
// every operator matrix is solved on leading coefficients and re-checked on
// all the rest.
template <class R>
struct OrdinarySpace {
  long p = 0;
  long weight = 0;
  long level = 0;  // including the p-part
  DirichletCharacter character;
  std::vector<QExpansion<R>> basis;
};

// Coordinates in the basis span.  exact reports whether every coefficient row
// was reproduced; residual_floor is the least valuation among failing rows
// (LONG_MAX when exact), meaningful for the p-adic ring only.
template <class R>
struct BasisExpansion {
  std::vector<R> coords;
  bool exact;
  long residual_floor;
};

template <class R>
BasisExpansion<R> expand_in_basis(const std::vector<QExpansion<R>>& basis,
                                  const QExpansion<R>& f);

// Matrix M with image_j = sum_i M_{ij} basis_i; throws unless every column
// expansion is exact at working precision.
template <class R>
Matrix<R> fit_operator(const std::vector<QExpansion<R>>& basis,
                       const std::vector<QExpansion<R>>& images);

template <class R>
Matrix<R> build_up_matrix(const OrdinarySpace<R>& S);

template <class R>
Matrix<R> build_hecke_matrix(const OrdinarySpace<R>& S, long l,
                             const std::function<R(long)>& chi);

// lcm of p^f - 1 over f = 1..dim; a power exponent that sends every unit
// eigenvalue of residue degree <= dim into 1 + (maximal ideal).
Int unit_root_exponent(long p, long dim);

// e = U^(L p^j), iterated in j until the matrix stops moving at working
// precision and squares to itself; throws once the budget is exhausted.
template <class R>
Matrix<R> ordinary_projector(const Matrix<R>& up, long p, long budget);

// Unit-root count of charpoly(U) off the Newton polygon: with monic
// coefficients c_0..c_n, this is n - min{i : c_i is a unit}.
long newton_unit_count(const Matrix<PadicScalar>& up);

// Row functional lam with lam U = alpha lam, lam . target = 1.  The
// alpha-eigenspace of the transpose must be one-dimensional.
template <class R>
std::vector<R> dual_eigen_functional(const Matrix<R>& up, const R& alpha,
                                     const std::vector<R>& target);

// The functional bundled with its audit data: the Hecke eigenvalues it was
// checked against and the coordinates used for the normalization.
struct EigenFunctional {
  std::vector<PadicScalar> row;
  PadicScalar alpha;
  PadicScalar beta;
  std::vector<PadicScalar> target_coords;
  std::map<long, PadicScalar> checked_eigenvalues;
};

// Builds the functional dual to the p-stabilisation of target inside S.
// conjugated selects the coefficientwise-conjugate eigensystem.  Verifies
// row T_l = a_l row for every supplied Hecke matrix.
EigenFunctional dual_functional(const OrdinarySpace<PadicScalar>& S,
                                const Matrix<PadicScalar>& up,
                                const std::map<long, Matrix<PadicScalar>>& hecke,
                                const NewformData& target, bool conjugated,
                                const PadicEmbedding& emb);

// Expansion basis realizing a prescribed U_p matrix exactly: rows of
// coefficients at indices prime to p come from seed_row, the rest follow
// from the matrix.  seed_row(0) must be a left fixed vector of the matrix.
template <class R>
OrdinarySpace<R> synthesize_up_stable_space(
    long p, long weight, long level, const Matrix<R>& up,
    const std::function<std::vector<R>(long)>& seed_row, long prec);

// ---------------------------------------------------------------------------
// Point evaluation.

// Coefficient m of a*b without rendering the whole product.
template <class R>
R product_coefficient(const QExpansion<R>& a, const QExpansion<R>& b, long m);

// Expansion of length rows whose n-th coefficient is the (n p^iters)-th
// coefficient of a*b: U_p^iters of the product read at selected indices.
template <class R>
QExpansion<R> up_product_rows(const QExpansion<R>& a, const QExpansion<R>& b,
                              long p, long iters, long rows);

// Precision budgets for one pipeline evaluation.  qrows bounds the number of
// coefficient rows used for the final expansion; factor series are rendered
// to qrows * p^up_iters internally.
struct PrecBudgets {
  long qrows = 8;
  long pprec = 28;
  long up_iters = 5;
};

// A classical point of the parameter space.
struct PointSpec {
  NewformData f;
  NewformData g;
  long p = 0;
  long N = 1;
  long t = 0;
  DirichletCharacter eps;  // the twisting character of the point
};

// alpha^{-iters} lam(proj . coords(row expansion)); the returned scalar's
// precision is clamped by the expansion residual floor.
PadicScalar pair_after_projection(const OrdinarySpace<PadicScalar>& S,
                                  const Matrix<PadicScalar>& proj,
                                  const EigenFunctional& lam, long iters,
                                  const QExpansion<PadicScalar>& rows);

// lam_{f_alpha^c} (theta^t(g^[pN] twisted by eps^{-1}) . F-family), evaluated
// through U_p iteration and the ordinary projector.  perturb, when given, is
// added to the Eisenstein factor before anything runs (used by the vanishing
// checks).  Throws when t falls outside [0, k-l-1].
PadicScalar padic_L_at(const PointSpec& pt, const OrdinarySpace<PadicScalar>& S,
                       const PrecBudgets& budgets,
                       const QExpansion<PadicScalar>* perturb = nullptr);

// lam_{f_alpha} (theta^t(g^[pN]) . E-family): the untwisted companion value.
PadicScalar dual_padic_L_at(const PointSpec& pt,
                            const OrdinarySpace<PadicScalar>& S,
                            const PrecBudgets& budgets,
                            const QExpansion<PadicScalar>* perturb = nullptr);

// ---------------------------------------------------------------------------
// Interpolation shape and the functional equation.

// Everything multiplying the two analytic slots on the interpolation side.
template <class R>
struct InterpContext {
  R front;       // i^{k-l-2t} 2^{1-k} N^{2+2t-k+l} psi_p^{-1}(N) eps_p(-N)
  R al_pseudo;   // pseudo-eigenvalue of g at p^b; 1 when b = 0
  long b = 0;    // p-exponent of g's level
  long a = 0;    // p-exponent of f's level
  bool p_part_trivial = true;
  R psi_of_p;
  R gauss;       // Gauss sum of the p-part of psi; unused for a <= 1
};

template <class R>
struct InterpRhs {
  R p_euler_block;  // P_g(p^t/alpha) / P_{g*}(alpha p^{-l-t})
  R adjoint;
  R stab;           // (p^{t+1}/alpha)^b
  R algebraic;      // front . al_pseudo . stab . p_euler_block / adjoint
};

// The two analytic inputs (the completed L-value and the Petersson norm)
// stay outside: multiply algebraic by the first and divide by the second.
template <class R>
InterpRhs<R> interp_rhs_algebraic(const CrystallinePoint<R>& c,
                                  const InterpContext<R>& ctx);

template <class R>
R interp_rhs_numeric(const InterpRhs<R>& rhs, const R& big_l_value,
                     const R& petersson) {
  return rhs.algebraic * big_l_value * ring_inv(petersson);
}

// N^{2(k-l-2t-1)}.
template <class R>
R fe_level_power(long N, long k, long l, long t, const R& like) {
  return ring_from_rat(rat_pow(Rat(N), 2 * (k - l - 2 * t - 1)), like);
}

// lvalue - N^{2(k-l-2t-1)} gamma dual_lvalue.
template <class R>
R fe_residual(const R& lvalue, const R& dual_lvalue, const R& gamma_prod,
              long N, long k, long l, long t) {
  return lvalue - fe_level_power(N, k, l, t, lvalue) * gamma_prod * dual_lvalue;
}

}  // namespace prs
