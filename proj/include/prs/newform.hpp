#pragma once

#include <map>

#include "prs/cyclotomic.hpp"
#include "prs/dirichlet.hpp"
#include "prs/padic.hpp"
#include "prs/qexpansion.hpp"

namespace prs {

// Eigenform data determined by weight, level, nebentypus and the prime
// Fourier coefficients.  Coefficients at prime powers follow the recursion
//   a(l^{r+1}) = a(l) a(l^r) - eps(l) l^{k-1} a(l^{r-1})   for l not dividing
//   the level, and a(l^r) = a(l)^r for l dividing the level; general indices
//   by multiplicativity.
class NewformData {
public:
  NewformData(long weight, long level, DirichletCharacter eps,
              std::map<long, Cyclo> prime_coeffs);

  long weight() const { return k_; }
  long level() const { return level_; }
  const DirichletCharacter& character() const { return eps_; }
  const std::map<long, Cyclo>& prime_coeffs() const { return ap_; }

  // a(n) for n >= 1; throws if a needed prime coefficient is missing.
  Cyclo coefficient(long n) const;

  QExpansion<Cyclo> q_expansion(long prec) const;

  // Coefficient-wise complex conjugate eigenform; its nebentypus is the
  // inverse character.
  NewformData star() const;

private:
  long k_;
  long level_;
  DirichletCharacter eps_;
  std::map<long, Cyclo> ap_;
  mutable std::map<long, Cyclo> ppow_cache_;

  Cyclo prime_power(long l, long e) const;
};

// Roots of X^2 - a_p X + eps(p) p^{k-1} over Q_p, alpha the unit root.
// Requires a_p to embed to a unit (the ordinary case).  When p divides the
// level the quadratic degenerates: alpha = a_p and beta is zero at the
// working precision.
struct HeckeRoots {
  PadicScalar alpha;
  PadicScalar beta;
};

HeckeRoots hecke_roots(const NewformData& f, const PadicEmbedding& emb);

// q-expansion of the p-stabilisation f_alpha = f - beta f|V_p, embedded.
QExpansion<PadicScalar> p_stabilise(const NewformData& f,
                                    const PadicEmbedding& emb,
                                    const PadicScalar& beta, long prec);

// Embed a cyclotomic q-expansion coefficientwise.
QExpansion<PadicScalar> embed_qexp(const QExpansion<Cyclo>& f,
                                   const PadicEmbedding& emb);

// q prod (1-q^n)^24, from the cube of the pentagonal-number series.
QExpansion<Rat> delta_qexp(long prec);

// Level-one series with a_0 = -B_k / 2k and a_n = sigma_{k-1}(n).
QExpansion<Rat> eisenstein_series_qexp(long k, long prec);

// Eigendata of the weight-k level-one series above: a_q = 1 + q^{k-1} at each
// prime q up to the bound.
NewformData sigma_eigendata(long weight, long prime_bound);

}  // namespace prs
