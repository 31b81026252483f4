#include "prs/oldspace.hpp"

#include <stdexcept>

#include "prs/padic.hpp"

namespace prs {

template <class R>
Matrix<R> oldspace_w_matrix(const LocalEigenData<R>& h, long c) {
  if (c < 0) throw std::invalid_argument("negative involution exponent");
  Matrix<R> w(c + 1, c + 1, h.ap);
  for (long j = 0; j <= c; ++j) w.at(c - j, j) = w_scalar(h, c, j);
  return w;
}

template <class R>
Poly<R> depleted_w_series(const LocalEigenData<R>& h, long c, long depth) {
  R one = ring_one(h.ap);
  R e = local_ec(h);
  Poly<R> p_h = local_euler_poly(h.ap, e);
  Poly<R> a = poly_series_inv(p_h, depth + 3);
  std::array<R, 3> d = {one, -h.ap, e};
  Poly<R> out = Poly<R>::zero(h.ap);
  for (long j = 0; j <= 2; ++j) {
    R coef = d[j] * w_scalar(h, c, j);
    long shift = c - j;
    for (long n = 0; n < depth; ++n) {
      long src = n - shift;  // index into the a_{p^*} series
      if (src < 0) continue;
      out.set_coeff(n, out.coeff(n) + coef * a.coeff(src));
    }
  }
  return out;
}

template <class R>
Poly<R> keylemma_closed_form(const LocalEigenData<R>& h, const LocalEigenData<R>& hstar,
                     const R& prefactor, long c, long depth) {
  R e = local_ec(h);
  R es = local_ec(hstar);
  Poly<R> inv_star = poly_series_inv(local_euler_poly(hstar.ap, es), depth + 3);
  // (p^{l-1} X)^c P(h, p^{-l} X^{-1}) has X-coefficients at c, c-1, c-2
  std::array<std::pair<long, R>, 3> lau = {
      std::make_pair(c, ring_pow(h.pp, c * (h.l - 1))),
      std::make_pair(c - 1, -h.ap * ring_pow(h.pp, c * (h.l - 1) - h.l)),
      std::make_pair(c - 2, e * ring_pow(h.pp, c * (h.l - 1) - 2 * h.l))};
  Poly<R> out = Poly<R>::zero(h.ap);
  for (const auto& [deg, coef] : lau)
    for (long n = 0; n < depth; ++n) {
      long src = n - deg;
      if (src < 0) continue;
      out.set_coeff(n, out.coeff(n) + coef * inv_star.coeff(src));
    }
  return out.scaled(prefactor);
}

template <class R>
R correction_term(const R& lam_f_bar, const R& eps_inv, const R& lam_g,
                  const R& alpha, const LocalEigenData<R>& g,
                  const LocalEigenData<R>& gstar, long s, long gap) {
  R pg = local_euler_poly(g.ap, local_ec(g)).eval(ring_pow(g.pp, -g.l - s) * ring_inv(alpha));
  R pgs = local_euler_poly(gstar.ap, local_ec(gstar)).eval(alpha * ring_pow(g.pp, s));
  R growth = ring_pow(alpha * ring_pow(g.pp, s + g.l - 1), gap);
  return lam_f_bar * eps_inv * lam_g * growth * pg * ring_inv(pgs);
}

#define PRS_INSTANTIATE_OLDSPACE(R)                                             \
  template Matrix<R> oldspace_w_matrix<R>(const LocalEigenData<R>&, long);      \
  template Poly<R> depleted_w_series<R>(const LocalEigenData<R>&, long, long);       \
  template Poly<R> keylemma_closed_form<R>(const LocalEigenData<R>&, const LocalEigenData<R>&, \
                                   const R&, long, long);                       \
  template R correction_term<R>(const R&, const R&, const R&, const R&,         \
                                const LocalEigenData<R>&, const LocalEigenData<R>&, \
                                long, long);

PRS_INSTANTIATE_OLDSPACE(Rat)
PRS_INSTANTIATE_OLDSPACE(Cyclo)
PRS_INSTANTIATE_OLDSPACE(PadicScalar)

#undef PRS_INSTANTIATE_OLDSPACE

}  // namespace prs
