#pragma once

#include "prs/localfactors.hpp"
#include "prs/matrix.hpp"
#include "prs/poly.hpp"
#include "prs/ring.hpp"

namespace prs {

// p-part eigenvalue package of a weight-l eigenform: a_p, the value of the
// nebentypus at p (taken away from p; must be invertible for the oldspace
// action) and the image of p in the ring.
template <class R>
struct LocalEigenData {
  long l;
  R ap;
  R eps_p;
  R pp;
};

// eps(p) p^{l-1}, the constant coefficient companion of a_p.
template <class R>
R local_ec(const LocalEigenData<R>& h) {
  return h.eps_p * ring_pow(h.pp, h.l - 1);
}

// Scalar by which the involution at exponent c sends h|B^j to h|B^{c-j}:
// eps(p)^{c-j} p^{(c-j)(l-1)-j}.  Formal for j > c (negative powers).
template <class R>
R w_scalar(const LocalEigenData<R>& h, long c, long j) {
  return ring_pow(h.eps_p, c - j) * ring_pow(h.pp, (c - j) * (h.l - 1) - j);
}

// Matrix of the involution on the basis {h, h|B, ..., h|B^c}.  Its square
// is eps(p)^c p^{c(l-2)} times the identity.
template <class R>
Matrix<R> oldspace_w_matrix(const LocalEigenData<R>& h, long c);

// sum_u X^u a_{p^u}(h^{[p]} | W_{p^c}) to degree < depth, through the
// oldspace action: the depletion has coordinates (1, -a_p, eps(p) p^{l-1})
// and each basis vector maps by w_scalar.  For c < 2 the overshooting basis
// indices are read back through U_p and only nonnegative X-degrees survive.
template <class R>
Poly<R> depleted_w_series(const LocalEigenData<R>& h, long c, long depth);

// prefactor (p^{l-1} X)^c P(h, p^{-l} X^{-1}) / P(h*, X) to degree < depth;
// the caller supplies the pseudo-eigenvalue and character prefactor as one
// scalar slot, and the conjugate eigenvalue data for the denominator.
template <class R>
Poly<R> keylemma_closed_form(const LocalEigenData<R>& h, const LocalEigenData<R>& hstar,
                     const R& prefactor, long c, long depth);

// Closed form of sum_{n in S(pN)} a_n((f_beta|W)*) a_n(g-side) n^s:
//   lam_f_bar eps_inv lam_g (alpha p^{s+l-1})^{2r-b} P(g, p^{-l-s}/alpha) / P(g*, alpha p^s)
// with alpha the unit root on the f side and (2r - b) the exponent gap.
template <class R>
R correction_term(const R& lam_f_bar, const R& eps_inv, const R& lam_g,
                  const R& alpha, const LocalEigenData<R>& g,
                  const LocalEigenData<R>& gstar, long s, long gap);

}  // namespace prs
