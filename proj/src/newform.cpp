#include "prs/newform.hpp"

#include <stdexcept>
#include <utility>

namespace prs {

NewformData::NewformData(long weight, long level, DirichletCharacter eps,
                         std::map<long, Cyclo> prime_coeffs)
    : k_(weight), level_(level), eps_(std::move(eps)), ap_(std::move(prime_coeffs)) {
  if (k_ < 1 || level_ < 1) throw std::invalid_argument("bad weight or level");
  for (const auto& [l, a] : ap_) {
    (void)a;
    if (!is_prime(l)) throw std::invalid_argument("non-prime coefficient index");
  }
}

Cyclo NewformData::prime_power(long l, long e) const {
  if (e == 0) return Cyclo(Rat(1));
  auto it = ap_.find(l);
  if (it == ap_.end())
    throw std::runtime_error("missing prime coefficient a(" + std::to_string(l) + ")");
  const Cyclo& al = it->second;
  if (level_ % l == 0) return al.pow(e);
  long key = 1;
  for (long i = 0; i < e; ++i) key *= l;
  auto hit = ppow_cache_.find(key);
  if (hit != ppow_cache_.end()) return hit->second;
  // iterate the recursion upward, memoising each power along the way
  Cyclo prev(Rat(1));
  Cyclo cur = al;
  Cyclo cl = eps_(l) * Cyclo(Rat(int_pow(Int(l), k_ - 1)));
  long q = l;
  ppow_cache_[q] = cur;
  for (long i = 1; i < e; ++i) {
    Cyclo next = al * cur - cl * prev;
    prev = cur;
    cur = next;
    q *= l;
    ppow_cache_[q] = cur;
  }
  return cur;
}

Cyclo NewformData::coefficient(long n) const {
  if (n < 1) throw std::invalid_argument("coefficient index must be positive");
  Cyclo out(Rat(1));
  for (const auto& [l, e] : factorize(n)) out *= prime_power(l, e);
  return out;
}

QExpansion<Cyclo> NewformData::q_expansion(long prec) const {
  QExpansion<Cyclo> f(prec, Cyclo());
  for (long n = 1; n <= prec; ++n) f.set_coeff(n, coefficient(n));
  return f;
}

NewformData NewformData::star() const {
  std::map<long, Cyclo> conj_ap;
  for (const auto& [l, a] : ap_) conj_ap.emplace(l, a.conj());
  return NewformData(k_, level_, eps_.inverse(), std::move(conj_ap));
}

HeckeRoots hecke_roots(const NewformData& f, const PadicEmbedding& emb) {
  const long p = emb.p();
  const long cap = emb.cap();
  auto it = f.prime_coeffs().find(p);
  if (it == f.prime_coeffs().end())
    throw std::runtime_error("missing a(p) for Hecke roots");
  PadicScalar ap = emb.embed(it->second);
  if (ap.is_zero_at_prec() || ap.valuation() != 0)
    throw std::runtime_error("a(p) is not a unit: form not ordinary at p");

  if (f.level() % p == 0)
    return HeckeRoots{ap, PadicScalar::zero_at(p, cap)};

  // Hensel lift the unit root of X^2 - a_p X + eps(p) p^{k-1} from X = a_p
  // mod p, entirely in integers mod p^cap.
  const Int mod = int_pow(Int(p), cap);
  const Int a = ap.residue(cap);
  PadicScalar cp = emb.embed(f.character()(p)) *
                   PadicScalar::from_int(p, int_pow(Int(p), f.weight() - 1), cap);
  Int c = (cp.unit_part() * int_pow(Int(p), f.weight() - 1)) % mod;
  Int x = a % Int(p);
  if (x == 0) throw std::runtime_error("a(p) residue vanished");
  for (long iter = 0; iter <= cap + 2; ++iter) {
    Int fx = mod_reduce(x * x - a * x + c, mod);
    if (fx == 0) break;
    Int d = mod_reduce(2 * x - a, mod);
    x = mod_reduce(x - fx * inv_mod(d, mod), mod);
    if (iter == cap + 2) throw std::runtime_error("Hensel iteration failed to settle");
  }
  PadicScalar alpha = PadicScalar::unit(p, x, 0, cap);
  PadicScalar beta = cp / alpha;
  PadicScalar check = alpha * alpha - ap * alpha + cp;
  if (!check.is_zero_at_prec() ) {
    if (check.valuation() < cap) throw std::runtime_error("unit root verification failed");
  }
  return HeckeRoots{alpha, beta};
}

QExpansion<PadicScalar> embed_qexp(const QExpansion<Cyclo>& f,
                                   const PadicEmbedding& emb) {
  QExpansion<PadicScalar> out(f.prec(), PadicScalar::zero_at(emb.p(), emb.cap()));
  for (long n = 0; n <= f.prec(); ++n) out.set_coeff(n, emb.embed(f.coeff(n)));
  return out;
}

QExpansion<PadicScalar> p_stabilise(const NewformData& f,
                                    const PadicEmbedding& emb,
                                    const PadicScalar& beta, long prec) {
  QExpansion<PadicScalar> fe = embed_qexp(f.q_expansion(prec), emb);
  QExpansion<PadicScalar> vf = v_operator(fe, emb.p()).truncated(prec);
  return fe - vf.scaled(beta);
}

QExpansion<Rat> delta_qexp(long prec) {
  // (sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2})^8 = prod (1-q^n)^24, then shift.
  std::vector<Int> e3(prec, 0);
  for (long j = 0;; ++j) {
    long idx = j * (j + 1) / 2;
    if (idx >= prec) break;
    e3[idx] = (j % 2 == 0 ? Int(2 * j + 1) : Int(-(2 * j + 1)));
  }
  auto square = [prec](const std::vector<Int>& a) {
    std::vector<Int> out(prec, 0);
    for (long i = 0; i < prec; ++i) {
      if (a[i] == 0) continue;
      for (long j = 0; i + j < prec; ++j) {
        if (a[j] == 0) continue;
        out[i + j] += a[i] * a[j];
      }
    }
    return out;
  };
  std::vector<Int> e24 = square(square(square(e3)));
  QExpansion<Rat> out(prec, Rat(0));
  for (long n = 1; n <= prec; ++n) out.set_coeff(n, Rat(e24[n - 1]));
  return out;
}

QExpansion<Rat> eisenstein_series_qexp(long k, long prec) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("level-one series wants even weight >= 2");
  QExpansion<Rat> out(prec, Rat(0));
  Rat bk = bernoulli_number(k);
  Rat a0 = -bk / Rat(2 * k);
  out.set_coeff(0, a0);
  for (long d = 1; d <= prec; ++d) {
    Int dk = int_pow(Int(d), k - 1);
    for (long n = d; n <= prec; n += d) {
      Rat c = out.coeff(n) + Rat(dk);
      out.set_coeff(n, c);
    }
  }
  return out;
}

NewformData sigma_eigendata(long weight, long prime_bound) {
  std::map<long, Cyclo> ap;
  for (long q = 2; q <= prime_bound; ++q) {
    if (!is_prime(q)) continue;
    Int v = 1 + int_pow(Int(q), weight - 1);
    ap[q] = Cyclo(Rat(v));
  }
  return NewformData(weight, 1, DirichletCharacter(1), ap);
}

}  // namespace prs
