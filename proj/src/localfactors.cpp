#include "prs/localfactors.hpp"

#include <stdexcept>

#include "prs/padic.hpp"

namespace prs {

namespace {

template <class R>
Matrix<R> matrix_inverse(const Matrix<R>& A) {
  if (A.rows() != A.cols()) throw std::runtime_error("inverse of non-square matrix");
  long n = A.rows();
  Matrix<R> out(n, n, A.exemplar());
  for (long j = 0; j < n; ++j) {
    std::vector<R> e(n, ring_zero(A.exemplar()));
    e[j] = ring_one(A.exemplar());
    std::vector<R> col = solve_square(A, e);
    for (long i = 0; i < n; ++i) out.at(i, j) = col[i];
  }
  return out;
}

// conjugate diag(l1, l2) by the fixed unimodular [[2,1],[1,1]]
template <class R>
Matrix<R> conjugated_diag(const R& l1, const R& l2) {
  Matrix<R> u(2, 2, l1), ui(2, 2, l1);
  R one = ring_one(l1), two = ring_from_long(2, l1);
  u.at(0, 0) = two; u.at(0, 1) = one; u.at(1, 0) = one; u.at(1, 1) = one;
  ui.at(0, 0) = one; ui.at(0, 1) = -one; ui.at(1, 0) = -one; ui.at(1, 1) = two;
  Matrix<R> d(2, 2, l1);
  d.at(0, 0) = l1;
  d.at(1, 1) = l2;
  return u * d * ui;
}

template <class R>
R det_one_minus_at_one(const Matrix<R>& M) {
  return (Matrix<R>::identity(M.rows(), M.exemplar()) - M).det();
}

}  // namespace

template <class R>
std::array<std::pair<R, R>, 4> crystalline_det_identities(
    const CrystallinePoint<R>& c) {
  const long s = c.l + c.t;
  R ps = ring_pow(c.pp, -s);
  R pinv = ring_inv(c.pp);
  R s1 = c.alpha * c.gsa * ps, s2 = c.alpha * c.gsb * ps;
  R q1 = c.beta * c.gsa * ps, q2 = c.beta * c.gsb * ps;
  Matrix<R> sub = conjugated_diag(s1, s2);
  Matrix<R> quot = conjugated_diag(q1, q2);
  Poly<R> Pg = point_poly_g(c);
  Poly<R> Pgs = point_poly_gstar(c);
  R pt = ring_pow(c.pp, c.t);

  std::array<std::pair<R, R>, 4> out = {
      std::make_pair(det_one_minus_at_one(sub), Pgs.eval(ps * c.alpha)),
      std::make_pair(det_one_minus_at_one(matrix_inverse(sub).scaled(pinv)),
                     Pg.eval(pt * ring_inv(c.alpha))),
      std::make_pair(det_one_minus_at_one(quot), Pgs.eval(ps * c.beta)),
      std::make_pair(det_one_minus_at_one(matrix_inverse(quot).scaled(pinv)),
                     Pg.eval(pt * ring_inv(c.beta)))};
  return out;
}

template <class R>
std::pair<R, R> exchange_identity_sides(const CrystallinePoint<R>& c) {
  const long s = c.l + c.t;
  R lhs = interpolation_ratio(c) *
          rankin_poly(c.alpha, c.beta, c.gsa, c.gsb).eval(ring_pow(c.pp, -s));
  R quot_ratio = point_poly_gstar(c).eval(ring_pow(c.pp, -s) * c.beta) *
                 ring_inv(point_poly_g(c).eval(ring_pow(c.pp, c.t) * ring_inv(c.beta)));
  R rhs = quot_ratio * rankin_poly(c.fsa, c.fsb, c.ga, c.gb)
                           .eval(ring_pow(c.pp, -(c.k - 1 - c.t)));
  return {lhs, rhs};
}

template <class R>
bool wd_consistent(const WeilDeligneDatum<R>& wd) {
  if (wd.frob_inv.rows() != wd.frob_inv.cols()) return false;
  if (wd.sigma.rows() != wd.sigma.cols()) return false;
  if (wd.sigma.rows() != wd.frob_inv.rows()) return false;
  // sigma F^{-1} = F^{-1} sigma^nu, equivalent to F sigma F^{-1} = sigma^nu
  Matrix<R> lhs = wd.sigma * wd.frob_inv;
  Matrix<R> rhs = wd.frob_inv * wd.sigma.pow(Int(wd.nu));
  return lhs.eq(rhs);
}

template <class R>
GammaFactor<R> tame_gamma(const WeilDeligneDatum<R>& wd) {
  long n = wd.frob_inv.rows();
  Matrix<R> pi(n, n, wd.frob_inv.exemplar());
  Matrix<R> pw = Matrix<R>::identity(n, wd.frob_inv.exemplar());
  for (long i = 0; i < wd.nu; ++i) {
    pi = pi + pw;
    pw = pw * wd.sigma;
  }
  GammaFactor<R> g{wd.eps0 * pi.det(), wd.swan + n, det_one_minus(wd.frob_inv),
                   det_one_minus(pi * wd.frob_inv)};
  return g;
}

template <class R>
R gamma_value(const GammaFactor<R>& g, const R& X) {
  R den = g.den.eval(X);
  return g.prefactor * ring_pow(X, g.exponent) * g.num.eval(X) * ring_inv(den);
}

template <class R>
WeilDeligneDatum<R> unramified_twist(const WeilDeligneDatum<R>& wd, const R& x) {
  long n = wd.frob_inv.rows();
  return WeilDeligneDatum<R>{wd.nu, wd.frob_inv.scaled(x), wd.sigma,
                             wd.eps0 * ring_pow(x, wd.swan + n), wd.swan};
}

template <class R>
WeilDeligneDatum<R> cyclic_wd(long nu, long n, const R& eps0, long swan,
                              const R& like) {
  if (n < 1 || gcd(Int(nu), Int(n)) != 1)
    throw std::invalid_argument("cycle length must be prime to nu");
  Matrix<R> sigma(n, n, like), finv(n, n, like);
  long nuinv = n == 1 ? 0 : static_cast<long>(inv_mod(Int(nu % n), Int(n)));
  for (long i = 0; i < n; ++i) {
    sigma.at((i + 1) % n, i) = ring_one(like);
    finv.at((nuinv * i) % n, i) = ring_one(like);
  }
  return WeilDeligneDatum<R>{nu, finv, sigma, eps0, swan};
}

template <class R>
WeilDeligneDatum<R> unipotent_wd(long nu, const R& eps0, long swan, const R& like) {
  Matrix<R> sigma = Matrix<R>::identity(2, like);
  sigma.at(0, 1) = ring_one(like);
  Matrix<R> finv(2, 2, like);
  finv.at(0, 0) = ring_inv(ring_from_long(nu, like));
  finv.at(1, 1) = ring_one(like);
  return WeilDeligneDatum<R>{nu, finv, sigma, eps0, swan};
}

template <class R>
Matrix<R> kron(const Matrix<R>& A, const Matrix<R>& B) {
  Matrix<R> out(A.rows() * B.rows(), A.cols() * B.cols(), A.exemplar());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j)
      for (long k = 0; k < B.rows(); ++k)
        for (long l = 0; l < B.cols(); ++l)
          out.at(i * B.rows() + k, j * B.cols() + l) = A.at(i, j) * B.at(k, l);
  return out;
}

template <class R>
WeilDeligneDatum<R> tensor_wd(const WeilDeligneDatum<R>& a,
                              const WeilDeligneDatum<R>& b) {
  if (a.nu != b.nu) throw std::invalid_argument("tensor across different places");
  return WeilDeligneDatum<R>{a.nu, kron(a.frob_inv, b.frob_inv),
                             kron(a.sigma, b.sigma), a.eps0 * b.eps0,
                             a.swan * b.frob_inv.rows() + b.swan * a.frob_inv.rows()};
}

template <class R>
WeilDeligneDatum<R> direct_sum_wd(const WeilDeligneDatum<R>& a,
                                  const WeilDeligneDatum<R>& b) {
  if (a.nu != b.nu) throw std::invalid_argument("sum across different places");
  long na = a.frob_inv.rows(), nb = b.frob_inv.rows();
  Matrix<R> finv(na + nb, na + nb, a.frob_inv.exemplar());
  Matrix<R> sigma(na + nb, na + nb, a.frob_inv.exemplar());
  for (long i = 0; i < na; ++i)
    for (long j = 0; j < na; ++j) {
      finv.at(i, j) = a.frob_inv.at(i, j);
      sigma.at(i, j) = a.sigma.at(i, j);
    }
  for (long i = 0; i < nb; ++i)
    for (long j = 0; j < nb; ++j) {
      finv.at(na + i, na + j) = b.frob_inv.at(i, j);
      sigma.at(na + i, na + j) = b.sigma.at(i, j);
    }
  return WeilDeligneDatum<R>{a.nu, finv, sigma, a.eps0 * b.eps0, a.swan + b.swan};
}

template <class R>
WeilDeligneDatum<R> conjugate_wd(const WeilDeligneDatum<R>& wd, const Matrix<R>& g) {
  Matrix<R> gi = matrix_inverse(g);
  return WeilDeligneDatum<R>{wd.nu, g * wd.frob_inv * gi, g * wd.sigma * gi,
                             wd.eps0, wd.swan};
}

template <class R>
InvariantRestriction<R> inertia_invariants(const WeilDeligneDatum<R>& wd) {
  long n = wd.sigma.rows();
  R one = ring_one(wd.eps0);
  Matrix<R> shifted = wd.sigma - Matrix<R>::identity(n, one);
  std::vector<std::vector<R>> ker = shifted.kernel();
  long d = static_cast<long>(ker.size());
  Matrix<R> basis(n, std::max(d, 1L), one);
  Matrix<R> restricted(std::max(d, 1L), std::max(d, 1L), one);
  if (d == 0) return InvariantRestriction<R>{0, basis, restricted};
  for (long j = 0; j < d; ++j)
    for (long i = 0; i < n; ++i) basis.at(i, j) = ker[j][i];
  // F^{-1} preserves the fixed space: sigma F^{-1} v = F^{-1} sigma^nu v.
  for (long j = 0; j < d; ++j) {
    std::vector<R> img(n, ring_zero(one));
    for (long i = 0; i < n; ++i)
      for (long m = 0; m < n; ++m) img[i] = img[i] + wd.frob_inv.at(i, m) * ker[j][m];
    OverdeterminedSolution<R> sol =
        n > d ? solve_overdetermined(basis, img)
              : OverdeterminedSolution<R>{solve_square(basis, img), true, d};
    if (!sol.residual_ok)
      throw std::runtime_error("fixed space not stable under Frobenius");
    for (long i = 0; i < d; ++i) restricted.at(i, j) = sol.x[i];
  }
  return InvariantRestriction<R>{d, basis, restricted};
}

template <class R>
Poly<R> local_L_poly(const WeilDeligneDatum<R>& wd) {
  InvariantRestriction<R> inv = inertia_invariants(wd);
  if (inv.dim == 0) return Poly<R>::one(wd.eps0);
  return det_one_minus(inv.frob_inv);
}

template <class R>
WeilDeligneDatum<R> dual_datum(const WeilDeligneDatum<R>& wd) {
  return WeilDeligneDatum<R>{wd.nu, matrix_inverse(wd.frob_inv).transpose(),
                             matrix_inverse(wd.sigma).transpose(), wd.eps0, wd.swan};
}

template <class R>
Poly<R> dual_local_L_poly(const WeilDeligneDatum<R>& wd) {
  return local_L_poly(dual_datum(wd));
}

template <class R>
R classical_eps_value(const WeilDeligneDatum<R>& wd, const R& x) {
  InvariantRestriction<R> inv = inertia_invariants(wd);
  long n = wd.sigma.rows();
  R one = ring_one(wd.eps0);
  R conv = one;
  if (inv.dim > 0) {
    // det(-F | fixed space) = (-1)^d / det(F^{-1} | fixed space).
    conv = ring_inv(inv.frob_inv.det());
    if (inv.dim % 2 == 1) conv = ring_zero(one) - conv;
  }
  return wd.eps0 * ring_pow(x, wd.swan + n - inv.dim) * conv;
}

template <class R>
R gamma_from_L(const Poly<R>& l_self, const Poly<R>& l_dual, const R& eps,
               long nu, const R& x) {
  R xd = ring_inv(ring_from_long<R>(nu, eps) * x);
  R den = l_dual.eval(xd);
  if (ring_is_zero(den))
    throw std::runtime_error("dual L-factor vanishes at the reflected argument");
  return eps * l_self.eval(x) * ring_inv(den);
}

#define PRS_INSTANTIATE_LOCALFACTORS(R)                                          \
  template std::array<std::pair<R, R>, 4> crystalline_det_identities<R>(         \
      const CrystallinePoint<R>&);                                               \
  template std::pair<R, R> exchange_identity_sides<R>(const CrystallinePoint<R>&); \
  template bool wd_consistent<R>(const WeilDeligneDatum<R>&);                    \
  template GammaFactor<R> tame_gamma<R>(const WeilDeligneDatum<R>&);             \
  template R gamma_value<R>(const GammaFactor<R>&, const R&);                    \
  template WeilDeligneDatum<R> unramified_twist<R>(const WeilDeligneDatum<R>&,   \
                                                   const R&);                    \
  template WeilDeligneDatum<R> cyclic_wd<R>(long, long, const R&, long,          \
                                            const R&);                           \
  template WeilDeligneDatum<R> unipotent_wd<R>(long, const R&, long, const R&);  \
  template Matrix<R> kron<R>(const Matrix<R>&, const Matrix<R>&);                \
  template WeilDeligneDatum<R> tensor_wd<R>(const WeilDeligneDatum<R>&,          \
                                            const WeilDeligneDatum<R>&);         \
  template WeilDeligneDatum<R> direct_sum_wd<R>(const WeilDeligneDatum<R>&,      \
                                                const WeilDeligneDatum<R>&);     \
  template WeilDeligneDatum<R> conjugate_wd<R>(const WeilDeligneDatum<R>&,       \
                                               const Matrix<R>&);                \
  template InvariantRestriction<R> inertia_invariants<R>(                        \
      const WeilDeligneDatum<R>&);                                               \
  template Poly<R> local_L_poly<R>(const WeilDeligneDatum<R>&);                  \
  template WeilDeligneDatum<R> dual_datum<R>(const WeilDeligneDatum<R>&);        \
  template Poly<R> dual_local_L_poly<R>(const WeilDeligneDatum<R>&);             \
  template R classical_eps_value<R>(const WeilDeligneDatum<R>&, const R&);       \
  template R gamma_from_L<R>(const Poly<R>&, const Poly<R>&, const R&, long,     \
                             const R&);

PRS_INSTANTIATE_LOCALFACTORS(Rat)
PRS_INSTANTIATE_LOCALFACTORS(Cyclo)
PRS_INSTANTIATE_LOCALFACTORS(PadicScalar)

#undef PRS_INSTANTIATE_LOCALFACTORS

}  // namespace prs
