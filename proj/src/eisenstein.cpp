#include "prs/eisenstein.hpp"

#include <stdexcept>

namespace prs {

namespace {

Rat frac_mod1(const Rat& x) {
  Int n = boost::multiprecision::numerator(x);
  Int d = boost::multiprecision::denominator(x);
  return Rat(mod_reduce(n, d), d);
}

long den_as_long(const Rat& x) {
  return static_cast<long>(boost::multiprecision::denominator(x));
}

long num_as_long(const Rat& x) {
  return static_cast<long>(boost::multiprecision::numerator(x));
}

// zeta_N^t + sgn * zeta_N^{-t} for t = 0..N-1
std::vector<Cyclo> zeta_pair_table(long N, long sgn) {
  std::vector<Cyclo> zs;
  zs.reserve(N);
  for (long t = 0; t < N; ++t)
    zs.push_back(Cyclo::zeta(N, t) + Rat(sgn) * Cyclo::zeta(N, mod_reduce(Int(-t), Int(N)).convert_to<long>()));
  return zs;
}

long lpow(long b, long e) {
  long out = 1;
  for (long i = 0; i < e; ++i) out *= b;
  return out;
}

}  // namespace

KatoEisenstein::KatoEisenstein(long k, const Rat& alpha, const Rat& beta)
    : k_(k), al_(frac_mod1(alpha)), be_(frac_mod1(beta)) {
  if (k < 1) throw std::invalid_argument("weight must be positive");
}

Rat KatoEisenstein::constant_term() const {
  Rat a = al_ == 0 ? Rat(1) : al_;
  Rat ai = frac_mod1(-al_);
  if (ai == 0) ai = Rat(1);
  Rat s = bernoulli_poly(k_, a) + Rat(k_ % 2 == 0 ? 1 : -1) * bernoulli_poly(k_, ai);
  return -s / Rat(k_);
}

QExpansion<Cyclo> KatoEisenstein::render_after_dilation(long B, long prec) const {
  QExpansion<Cyclo> out(prec, Cyclo());
  out.set_coeff(0, Cyclo(constant_term()));
  const long db = den_as_long(be_);
  const long nb = num_as_long(be_);
  for (long s : {1L, -1L}) {
    Rat as = frac_mod1(Rat(s) * al_);
    Rat A = Rat(B) * as;
    if (den_as_long(A) != 1)
      throw std::invalid_argument("dilation does not clear the alpha denominator");
    long A0 = num_as_long(A);
    long sign = (s == 1 || k_ % 2 == 0) ? 1 : -1;
    for (long Bm = A0 == 0 ? B : A0; Bm <= prec; Bm += B) {
      Rat mpow = Rat(sign) * rat_pow(Rat(Bm, B), k_ - 1);
      for (long n = 1; Bm * n <= prec; ++n) {
        long e = mod_reduce(Int(s * nb * n), Int(db)).convert_to<long>();
        out.coeff(Bm * n) += mpow * Cyclo::zeta(db, e);
      }
    }
  }
  return out;
}

KatoEisenstein KatoEisenstein::slash(long a, long b, long c, long d) const {
  if (a * d - b * c != 1) throw std::invalid_argument("matrix not in SL_2(Z)");
  Rat a2 = al_ * Rat(a) + be_ * Rat(c);
  Rat b2 = al_ * Rat(b) + be_ * Rat(d);
  return KatoEisenstein(k_, a2, b2);
}

AtkinLehnerBlock make_w_block(long p, long r, long N) {
  if (N % p == 0) throw std::invalid_argument("level part N must be prime to p");
  const long Q = lpow(p, 2 * r);
  const long z = static_cast<long>(inv_mod(Int(N), Int(Q)));
  const long y = -1, w = 1;
  if ((1 - N * z) % Q != 0) throw std::logic_error("inverse computation failed");
  const long x = (1 - N * z) / Q;
  AtkinLehnerBlock blk{p, r, N, x, y, z, w};
  // shape and determinant of W and gamma0
  if (Q * x * w - N * y * z != 1) throw std::logic_error("block determinant is off");
  const long pr = lpow(p, r);
  // B W = p^r I * gamma0 * B entrywise, B = (p^r, 0; 0, 1)
  long L11 = pr * (Q * x), L12 = pr * y, L21 = Q * N * z, L22 = Q * w;
  long R11 = pr * (pr * x) * pr, R12 = pr * y, R21 = pr * (N * z) * pr, R22 = pr * (pr * w);
  if (L11 != R11 || L12 != R12 || L21 != R21 || L22 != R22)
    throw std::logic_error("coset identity failed");
  return blk;
}

QExpansion<Cyclo> eis_F(long m, const DirichletCharacter& chi, long N, long p,
                        long prec) {
  QExpansion<Cyclo> out(prec, Cyclo());
  const long sgn = (m % 2 == 0 ? 1 : -1) * chi.parity();
  auto zs = zeta_pair_table(N, sgn);
  std::vector<Cyclo> row(N);
  for (long d = 1; d <= prec; ++d) {
    if (d % p == 0) continue;
    Cyclo cd = chi(d) * Cyclo(rat_pow(Rat(d), m - 1));
    if (cd.is_zero()) continue;
    for (long r = 0; r < N; ++r) row[r] = cd * zs[r];
    for (long q = d, t = 1; q <= prec; q += d, ++t)
      if (q % p != 0) out.coeff(q) += row[t % N];
  }
  return out;
}

QExpansion<Cyclo> eis_E(long m, long N, long p, long prec) {
  QExpansion<Cyclo> out(prec, Cyclo());
  const long sgn = m % 2 == 0 ? 1 : -1;
  auto zs = zeta_pair_table(N, sgn);
  for (long d = 1; d <= prec; ++d) {
    Cyclo cd = Cyclo(rat_pow(Rat(d), m - 1)) * zs[d % N];
    for (long q = d; q <= prec; q += d)
      if (q % p != 0) out.coeff(q) += cd;
  }
  return out;
}

QExpansion<Cyclo> eis_F_tilde(long m, const DirichletCharacter& chi, long N,
                              long p, long r, long prec) {
  QExpansion<Cyclo> out(prec, Cyclo());
  const long sgn = (m % 2 == 0 ? 1 : -1) * chi.parity();
  auto zs = zeta_pair_table(N, sgn);
  for (long d = 1; d <= prec; ++d) {
    if (d % p == 0) continue;
    Cyclo cd = chi(d) * Cyclo(rat_pow(Rat(d), m - 1));
    if (cd.is_zero()) continue;
    for (long q = d, t = 1; q <= prec; q += d, ++t) out.coeff(q) += cd * zs[t % N];
  }
  const long pr = lpow(p, r);
  Cyclo s;
  for (long c = 1; c < pr; ++c) {
    if (c % p == 0) continue;
    s += chi(c) * Cyclo(bernoulli_poly(m, Rat(c, pr)));
  }
  long parity_factor = 1 + (m % 2 == 0 ? 1 : -1) * chi.parity();
  Rat scale = -rat_pow(Rat(p), r * (m - 1)) * Rat(parity_factor, m);
  out.set_coeff(0, Cyclo(scale) * s);
  return out;
}

QExpansion<Cyclo> eis_F_tilde_from_symbols(long m, const DirichletCharacter& chi,
                                           long N, long p, long r, long prec) {
  const long pr = lpow(p, r);
  QExpansion<Cyclo> acc(prec, Cyclo());
  for (long c = 1; c < pr; ++c) {
    if (c % p == 0) continue;
    Cyclo cc = chi(c);
    if (cc.is_zero()) continue;
    KatoEisenstein sym(m, Rat(c, pr), Rat(1, N));
    acc = acc + sym.render_after_dilation(pr, prec).scaled(cc);
  }
  return acc.scaled(Cyclo(rat_pow(Rat(p), r * (m - 1))));
}

QExpansion<Cyclo> eis_F_tilde_w_image(long m, const DirichletCharacter& chi,
                                      long N, long p, long r, long prec) {
  const long pr = lpow(p, r);
  QExpansion<Cyclo> acc(prec, Cyclo());
  for (long c = 1; c < pr; ++c) {
    if (c % p == 0) continue;
    Cyclo cc = chi(c);
    if (cc.is_zero()) continue;
    KatoEisenstein sym(m, Rat(0), Rat(c, pr) + Rat(pr, N));
    acc = acc + sym.render_after_dilation(pr, prec).scaled(cc);
  }
  Rat scale = rat_pow(Rat(p), r * (2 * m - 3)) * Rat(chi.parity());
  return acc.scaled(Cyclo(scale));
}

QExpansion<Cyclo> eis_F_tilde_w_image_chain(long m, const DirichletCharacter& chi,
                                            long N, long p, long r, long prec) {
  const long pr = lpow(p, r);
  AtkinLehnerBlock blk = make_w_block(p, r, N);
  QExpansion<Cyclo> acc(prec, Cyclo());
  for (long c = 1; c < pr; ++c) {
    if (c % p == 0) continue;
    Cyclo cc = chi(c);
    if (cc.is_zero()) continue;
    KatoEisenstein sym(m, Rat(c, pr), Rat(1, N));
    KatoEisenstein pushed = sym.slash(pr * blk.x, blk.y, N * blk.z, pr * blk.w);
    acc = acc + pushed.render_after_dilation(pr, prec).scaled(cc);
  }
  // p^{r(m-1)} from the decomposition, p^{r(m-2)} from the scalar matrix
  return acc.scaled(Cyclo(rat_pow(Rat(p), r * (2 * m - 3))));
}

}  // namespace prs
