#pragma once

#include <array>
#include <utility>
#include <vector>

#include "prs/matrix.hpp"
#include "prs/poly.hpp"
#include "prs/ring.hpp"

namespace prs {

// 1 - ap X + c X^2 with c = eps(p) p^{k-1}; pass c = 0 when p divides the
// level and the factor degenerates to degree one.
template <class R>
Poly<R> local_euler_poly(const R& ap, const R& c) {
  Poly<R> out = Poly<R>::zero(ap);
  out.set_coeff(0, ring_one(ap));
  out.set_coeff(1, -ap);
  if (!ring_is_zero(c)) out.set_coeff(2, c);
  return out;
}

// prod_{i,j} (1 - a_i b_j X) over the two root pairs.
template <class R>
Poly<R> rankin_poly(const R& a1, const R& a2, const R& b1, const R& b2) {
  Poly<R> out = Poly<R>::one(a1);
  for (const R* a : {&a1, &a2})
    for (const R* b : {&b1, &b2}) {
      Poly<R> lin = Poly<R>::one(a1);
      lin.set_coeff(1, -(*a * *b));
      out = out * lin;
    }
  return out;
}

// det(1 - M X) from the characteristic polynomial: reverse its coefficients.
template <class R>
Poly<R> det_one_minus(const Matrix<R>& M) {
  Poly<R> cp = M.charpoly();
  long n = M.rows();
  Poly<R> out = Poly<R>::zero(M.exemplar());
  for (long j = 0; j <= n; ++j) out.set_coeff(j, cp.coeff(n - j));
  return out;
}

// ---------------------------------------------------------------------------
// Crystalline specialisation data at p for a pair of ordinary eigenforms of
// weights k (roots alpha, beta; alpha the unit) and l (roots ga, gb), with the
// conjugate-form roots alongside.  pp is the image of p in the ring.

template <class R>
struct CrystallinePoint {
  R alpha, beta;  // alpha beta = psi(p) p^{k-1}
  R ga, gb;       // alpha_g, beta_g
  R gsa, gsb;     // roots of the conjugate of g
  R fsa, fsb;     // roots of the conjugate of f
  R pp;
  long k, l, t;   // l + 2t < k
};

template <class R>
Poly<R> point_poly_g(const CrystallinePoint<R>& c) {
  return local_euler_poly<R>(c.ga + c.gb, c.ga * c.gb);
}
template <class R>
Poly<R> point_poly_gstar(const CrystallinePoint<R>& c) {
  return local_euler_poly<R>(c.gsa + c.gsb, c.gsa * c.gsb);
}

// Sub/quotient determinant identities.  Each entry is (matrix side, local
// polynomial evaluation); the matrix side runs through an honest conjugated
// 2x2 matrix so the determinant machinery is exercised.
//   1. det(1 - phi | sub)            = P_{g*}(p^{-l-t} alpha)
//   2. det(1 - p^{-1} phi^{-1} | sub) = P_g(p^t alpha^{-1})
//   3. det(1 - phi | quotient)       = P_{g*}(p^{-l-t} beta)
//   4. det(1 - phi | dual-of-quotient twist) = P_g(p^t beta^{-1})
template <class R>
std::array<std::pair<R, R>, 4> crystalline_det_identities(
    const CrystallinePoint<R>& c);

// det(1 - p^{-1} phi^{-1} | sub) * det(1 - phi | quotient), the corrected
// tensor factor at the specialisation point.
template <class R>
R modified_tensor_factor(const CrystallinePoint<R>& c) {
  long s = c.l + c.t;
  R lhs = point_poly_g(c).eval(ring_pow(c.pp, c.t) * ring_inv(c.alpha));
  R rhs = point_poly_gstar(c).eval(ring_pow(c.pp, -s) * c.beta);
  return lhs * rhs;
}

// The interpolation-side ratio P_g(p^t alpha^{-1}) / P_{g*}(p^{-l-t} alpha).
template <class R>
R interpolation_ratio(const CrystallinePoint<R>& c) {
  long s = c.l + c.t;
  R num = point_poly_g(c).eval(ring_pow(c.pp, c.t) * ring_inv(c.alpha));
  R den = point_poly_gstar(c).eval(ring_pow(c.pp, -s) * c.alpha);
  return num * ring_inv(den);
}

// Both sides of the exchange identity
//   [P_g(p^t a^{-1}) / P_{g*}(p^{-l-t} a)] P(f, g*, l+t)
//     = [P_{g*}(p^{-l-t} b) / P_g(p^t b^{-1})] P(f*, g, k-1-t)
// with P(., ., s) the degree-four tensor polynomial evaluated at p^{-s}.
template <class R>
std::pair<R, R> exchange_identity_sides(const CrystallinePoint<R>& c);

// Perrin-Riou factors at a stabilisation.
template <class R>
R euler_factor_sub(const R& alpha, const R& beta, const R& pp) {
  return ring_one(alpha) - beta * ring_inv(pp * alpha);
}
template <class R>
R euler_factor_quot(const R& alpha, const R& beta) {
  return ring_one(alpha) - beta * ring_inv(alpha);
}

// Adjoint factor of the stabilised form, by the p-part of its level:
//   a = 0:                       (1 - beta/alpha)(1 - beta/(p alpha))
//   a = 1, trivial p-part:       (-1/(p-1)) (psi(p) p^{k-2} / alpha^2)
//   a >= 1, nontrivial p-part:   (p^{1-a}/(p-1)) (psi(p) p^{k-2}/alpha^2)^a G
// where psi is the prime-to-p character and G the Gauss sum of the p-part.
template <class R>
R adjoint_factor(long a, bool p_part_trivial, const R& psi_of_p, const R& gauss,
                 const R& alpha, const R& beta, const R& pp, long k) {
  R one = ring_one(alpha);
  if (a == 0) return euler_factor_quot(alpha, beta) * euler_factor_sub(alpha, beta, pp);
  R base = psi_of_p * ring_pow(pp, k - 2) * ring_inv(alpha * alpha);
  R pm1_inv = ring_inv(pp - one);
  if (a == 1 && p_part_trivial) return -pm1_inv * base;
  return ring_pow(pp, 1 - a) * pm1_inv * ring_pow(base, a) * gauss;
}

// ---------------------------------------------------------------------------
// Inertia-and-Frobenius data at a place of residue characteristic nu, prime
// to p.  sigma generates the tame quotient and satisfies F sigma F^{-1} =
// sigma^nu; we store the inverse Frobenius matrix directly.

template <class R>
struct WeilDeligneDatum {
  long nu;
  Matrix<R> frob_inv;
  Matrix<R> sigma;
  R eps0;
  long swan;
};

// Checks sigma . F^{-1} = F^{-1} . sigma^nu and that sigma is invertible.
template <class R>
bool wd_consistent(const WeilDeligneDatum<R>& wd);

// gamma_nu(rho, X) = eps0 det(Pi) X^{swan + dim} det(1 - F^{-1} X) / det(1 - Pi F^{-1} X)
// with Pi = 1 + sigma + ... + sigma^{nu - 1}.
template <class R>
struct GammaFactor {
  R prefactor;
  long exponent;
  Poly<R> num;
  Poly<R> den;
};

template <class R>
GammaFactor<R> tame_gamma(const WeilDeligneDatum<R>& wd);

template <class R>
R gamma_value(const GammaFactor<R>& g, const R& X);

// Twist by the unramified character sending inverse Frobenius to x: the
// matrix scales by x and eps0 by x^{swan + dim}, so the gamma factor obeys
// gamma(twist(rho, x), X) = gamma(rho, x X).
template <class R>
WeilDeligneDatum<R> unramified_twist(const WeilDeligneDatum<R>& wd, const R& x);

// Synthetic data used by the consistency suites: a cyclic permutation model
// (sigma an n-cycle, Frobenius multiplying indices by nu; gcd(nu, n) = 1) and
// a unipotent model (sigma a shear, Frobenius diag(nu, 1)).
template <class R>
WeilDeligneDatum<R> cyclic_wd(long nu, long n, const R& eps0, long swan, const R& like);
template <class R>
WeilDeligneDatum<R> unipotent_wd(long nu, const R& eps0, long swan, const R& like);

// Kronecker product helpers for building tensor data.
template <class R>
Matrix<R> kron(const Matrix<R>& A, const Matrix<R>& B);
template <class R>
WeilDeligneDatum<R> tensor_wd(const WeilDeligneDatum<R>& a, const WeilDeligneDatum<R>& b);
template <class R>
WeilDeligneDatum<R> direct_sum_wd(const WeilDeligneDatum<R>& a, const WeilDeligneDatum<R>& b);
template <class R>
WeilDeligneDatum<R> conjugate_wd(const WeilDeligneDatum<R>& wd, const Matrix<R>& g);

// ---------------------------------------------------------------------------
// Classical route to the same gamma factor: eps times the dual L-factor over
// the L-factor.  The L-polynomial lives on the sigma-fixed subspace, and eps
// is recovered from eps0 by the det(-F | invariants) conversion with
// X-exponent swan + codim(invariants).

// sigma-fixed subspace as a column basis together with the restriction of
// F^{-1} to it.  dim may be 0, in which case the matrices are placeholders.
template <class R>
struct InvariantRestriction {
  long dim;
  Matrix<R> basis;     // n x dim
  Matrix<R> frob_inv;  // dim x dim
};

template <class R>
InvariantRestriction<R> inertia_invariants(const WeilDeligneDatum<R>& wd);

// Contragredient datum: transpose-inverse Frobenius and tame generator.
template <class R>
WeilDeligneDatum<R> dual_datum(const WeilDeligneDatum<R>& wd);

// det(1 - F^{-1} X) on the sigma-fixed subspace; degree = its dimension.
template <class R>
Poly<R> local_L_poly(const WeilDeligneDatum<R>& wd);

// The same polynomial for the dual datum (transpose-inverse matrices).
template <class R>
Poly<R> dual_local_L_poly(const WeilDeligneDatum<R>& wd);

// eps0 x^{swan + codim} det(-F | invariants).
template <class R>
R classical_eps_value(const WeilDeligneDatum<R>& wd, const R& x);

// eps * [1 / l_dual(1/(nu x))] / [1 / l_self(x)]: the dual L-factor is read
// at the reflected argument.  Throws when the dual evaluation vanishes.
template <class R>
R gamma_from_L(const Poly<R>& l_self, const Poly<R>& l_dual, const R& eps,
               long nu, const R& x);

}  // namespace prs
