#pragma once

#include "prs/cyclotomic.hpp"
#include "prs/dirichlet.hpp"
#include "prs/qexpansion.hpp"

namespace prs {

// Weight-m Eisenstein series with parameters (alpha, beta) in (Q/Z)^2,
// handled through its q-expansion only.  The coefficient of q^{mn} (m > 0
// congruent to alpha mod 1, n >= 1) is m^{k-1} zeta^n where zeta = e(beta),
// plus the mirrored branch with m = -alpha, zeta^{-n} and sign (-1)^k; the
// constant term is a Bernoulli value.  SL_2(Z) acts on the parameter row
// vector on the right.
class KatoEisenstein {
public:
  KatoEisenstein(long k, const Rat& alpha, const Rat& beta);

  long weight() const { return k_; }
  const Rat& alpha() const { return al_; }
  const Rat& beta() const { return be_; }

  // -(1/k) (B_k(a) + (-1)^k B_k(a')) with a, a' the (0,1]-representatives
  // of alpha and -alpha.
  Rat constant_term() const;

  // q-expansion of the image under q -> q^B; B must clear the denominator
  // of alpha so all exponents are integers.
  QExpansion<Cyclo> render_after_dilation(long B, long prec) const;

  // Row action (alpha beta) -> (alpha beta) * gamma for gamma in SL_2(Z).
  KatoEisenstein slash(long a, long b, long c, long d) const;

private:
  long k_;
  Rat al_, be_;
};

// Integer matrix block for the Atkin-Lehner involution at the p^{2r} part of
// level N p^{2r}:  W = (p^{2r} x, y; p^{2r} N z, p^{2r} w) with
// p^{2r} x w - N y z = 1, together with gamma0 = (p^r x, y; N z, p^r w) of
// determinant one satisfying  B_{p^r} W = p^r I * gamma0 * B_{p^r}.
struct AtkinLehnerBlock {
  long p, r, N;
  long x, y, z, w;
};

// Canonical choice: z = N^{-1} mod p^{2r}, y = -1, w = 1.  Verifies the
// determinant, shape and coset identity exactly before returning.
AtkinLehnerBlock make_w_block(long p, long r, long N);

// p-depleted Eisenstein family of weight m, character chi (modulus a power
// of p) and cyclotomic level N:
//   a_n = sum_{d | n} chi(d) d^{m-1} (zeta_N^{n/d} + (-1)^m chi(-1) zeta_N^{-n/d})
// for p not dividing n, zero otherwise; a_0 = 0.
QExpansion<Cyclo> eis_F(long m, const DirichletCharacter& chi, long N, long p,
                        long prec);

// Companion family used on the dual side:
//   a_n = sum_{d | n} d^{m-1} (zeta_N^d + (-1)^m zeta_N^{-d})
// for p not dividing n, zero otherwise; a_0 = 0.
QExpansion<Cyclo> eis_E(long m, long N, long p, long prec);

// Partially depleted parent of eis_F: only the divisor d is required prime
// to p, and the constant term is
//   -(1/m) p^{r(m-1)} (1 + (-1)^m chi(-1)) sum_{c unit mod p^r} chi(c) B_m(c/p^r).
QExpansion<Cyclo> eis_F_tilde(long m, const DirichletCharacter& chi, long N,
                              long p, long r, long prec);

// The same series assembled as p^{r(m-1)} sum_c chi(c) F_{c/p^r, 1/N} | B_{p^r}.
QExpansion<Cyclo> eis_F_tilde_from_symbols(long m, const DirichletCharacter& chi,
                                           long N, long p, long r, long prec);

// Closed form of the W-image:
//   p^{r(2m-3)} chi(-1) sum_c chi(c) F_{0, c/p^r + p^r/N} | B_{p^r}.
QExpansion<Cyclo> eis_F_tilde_w_image(long m, const DirichletCharacter& chi,
                                      long N, long p, long r, long prec);

// The W-image assembled through the coset identity of make_w_block: each
// summand is pushed through gamma0 and re-dilated, picking up p^{r(m-2)}.
QExpansion<Cyclo> eis_F_tilde_w_image_chain(long m, const DirichletCharacter& chi,
                                            long N, long p, long r, long prec);

}  // namespace prs
