#include "prs/dirichlet.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace prs {

namespace {

long lpow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Smallest primitive root mod q^e for odd prime q.  A primitive root mod q^2
// is primitive mod every higher power.
long primitive_root_pp(long q, long e) {
  long g = static_cast<long>(smallest_primitive_root(q));
  if (e == 1) return g;
  long q2 = q * q;
  if (static_cast<long>(pow_mod(Int(g), Int(q - 1), Int(q2))) == 1) g += q;
  return g % lpow(q, e);
}

long crt_pair(long r1, long m1, long r2, long m2) {
  // Solution mod m1*m2 of x = r1 (m1), x = r2 (m2); gcd(m1, m2) = 1.
  Int s = inv_mod(mod_reduce(Int(m1), Int(m2)), Int(m2));
  Int x = Int(r1) + Int(m1) * mod_reduce(s * (Int(r2) - Int(r1)), Int(m2));
  return static_cast<long>(mod_reduce(x, Int(m1) * m2));
}

long dlog_brute(long g, long target, long order, long mod) {
  long acc = 1 % mod;
  target %= mod;
  for (long x = 0; x < order; ++x) {
    if (acc == target) return x;
    acc = static_cast<long>((Int(acc) * g) % mod);
  }
  throw std::runtime_error("discrete log failed: not in generated subgroup");
}

// Canonicalise a value zeta_d^e so that d is the exact order.
std::pair<long, long> canon_root(long d, long e) {
  if (d <= 0) throw std::runtime_error("root order must be positive");
  e %= d;
  if (e < 0) e += d;
  if (e == 0) return {1, 0};
  long g = std::gcd(d, e);
  return {d / g, e / g};
}

}  // namespace

std::vector<std::pair<long, long>> unit_group_generators(long M) {
  if (M <= 0) throw std::runtime_error("modulus must be positive");
  std::vector<std::pair<long, long>> out;
  for (auto& [q, e] : factorize(M)) {
    long ql = static_cast<long>(q);
    long f = lpow(ql, e);
    if (ql == 2) {
      if (e == 1) continue;
      if (e == 2) {
        out.emplace_back(3, 2);
      } else {
        out.emplace_back(f - 1, 2);
        out.emplace_back(5, f / 4);
      }
    } else {
      out.emplace_back(primitive_root_pp(ql, e), f / ql * (ql - 1));
    }
  }
  return out;
}

DirichletCharacter::DirichletCharacter(long M) : M_(M) {
  for (auto& [q, e] : factorize(M)) {
    long f = lpow(static_cast<long>(q), e);
    for (auto& [g, ord] : unit_group_generators(f))
      gv_.push_back({g, ord, 1, 0, f});
  }
}

DirichletCharacter DirichletCharacter::from_gen_values(
    long M, const std::vector<std::array<long, 3>>& triples) {
  DirichletCharacter chi(M);
  if (triples.size() != chi.gv_.size())
    throw std::runtime_error("wrong number of generator values for modulus");
  for (size_t i = 0; i < triples.size(); ++i) {
    auto& gv = chi.gv_[i];
    if (triples[i][0] % gv.factor != gv.gen % gv.factor)
      throw std::runtime_error("generator list is not the canonical one");
    auto [d, e] = canon_root(triples[i][1], triples[i][2]);
    if (gv.gen_order % d != 0)
      throw std::runtime_error("character value order does not divide generator order");
    gv.zeta_order = d;
    gv.zeta_exp = e;
  }
  return chi;
}

DirichletCharacter DirichletCharacter::from_values(
    long M, const std::function<Cyclo(long)>& eval) {
  DirichletCharacter chi(M);
  for (auto& gv : chi.gv_) {
    long lift = (M == gv.factor)
                    ? gv.gen % M
                    : crt_pair(gv.gen, gv.factor, 1, M / gv.factor);
    Cyclo w = eval(lift);
    bool found = false;
    for (long t = 0; t < gv.gen_order; ++t) {
      if (w == Cyclo::zeta(gv.gen_order, t)) {
        auto [d, e] = canon_root(gv.gen_order, t);
        gv.zeta_order = d;
        gv.zeta_exp = e;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error("value on generator is not a root of unity of admissible order");
  }
  return chi;
}

DirichletCharacter DirichletCharacter::quadratic(long q) {
  if (q == 2 || !is_prime(q)) throw std::runtime_error("quadratic() wants an odd prime");
  DirichletCharacter chi(q);
  chi.gv_[0].zeta_order = 2;
  chi.gv_[0].zeta_exp = 1;
  return chi;
}

Cyclo DirichletCharacter::eval_uncached(long n) const {
  Cyclo out(Rat(1));
  size_t i = 0;
  while (i < gv_.size()) {
    long f = gv_[i].factor;
    size_t j = i;
    while (j < gv_.size() && gv_[j].factor == f) ++j;
    long nf = n % f;
    if (j - i == 1) {
      long x = dlog_brute(gv_[i].gen % f, nf, gv_[i].gen_order, f);
      long d = gv_[i].zeta_order;
      out = out * Cyclo::zeta(d, gv_[i].zeta_exp * (x % d));
    } else {
      // The 2^e factor, e >= 3: residues are (-1)^s 5^k.
      const auto& sg = gv_[i];      // -1, order 2
      const auto& kg = gv_[i + 1];  // 5, order 2^{e-2}
      bool done = false;
      for (long s = 0; s < 2 && !done; ++s) {
        long target = s ? (f - nf) % f : nf;
        long acc = 1;
        for (long k = 0; k < kg.gen_order; ++k) {
          if (acc == target) {
            out = out * Cyclo::zeta(sg.zeta_order, sg.zeta_exp * (s % sg.zeta_order));
            out = out * Cyclo::zeta(kg.zeta_order, kg.zeta_exp * (k % kg.zeta_order));
            done = true;
            break;
          }
          acc = acc * 5 % f;
        }
      }
      if (!done) throw std::runtime_error("discrete log failed in 2-power factor");
    }
    i = j;
  }
  return out;
}

Cyclo DirichletCharacter::operator()(long n) const {
  n %= M_;
  if (n < 0) n += M_;
  if (M_ == 1) return Cyclo(Rat(1));
  if (std::gcd(n, M_) != 1) return Cyclo();
  if (table_.empty()) {
    table_.assign(M_, Cyclo());
    table_set_.assign(M_, 0);
  }
  if (!table_set_[n]) {
    table_[n] = eval_uncached(n);
    table_set_[n] = 1;
  }
  return table_[n];
}

Cyclo DirichletCharacter::operator()(const Int& n) const {
  return (*this)(static_cast<long>(mod_reduce(n, Int(M_))));
}

long DirichletCharacter::order() const {
  long d = 1;
  for (auto& gv : gv_) d = std::lcm(d, gv.zeta_order);
  return d;
}

long DirichletCharacter::parity() const {
  Cyclo w = (*this)(M_ - 1);
  if (!w.is_rational()) throw std::runtime_error("value at -1 must be rational");
  return w.rational_part() == 1 ? 1 : -1;
}

long DirichletCharacter::conductor() const {
  for (long d = 1; d <= M_; ++d) {
    if (M_ % d != 0) continue;
    bool ok = true;
    for (long n = 1; n <= M_ && ok; ++n) {
      if ((n - 1) % d != 0 || std::gcd(n, M_) != 1) continue;
      Cyclo w = (*this)(n);
      if (!(w == Cyclo(Rat(1)))) ok = false;
    }
    if (ok) return d;
  }
  throw std::logic_error("conductor search fell through");
}

DirichletCharacter DirichletCharacter::inverse() const {
  DirichletCharacter chi = *this;
  for (auto& gv : chi.gv_) {
    auto [d, e] = canon_root(gv.zeta_order, -gv.zeta_exp);
    gv.zeta_order = d;
    gv.zeta_exp = e;
  }
  chi.table_.clear();
  chi.table_set_.clear();
  return chi;
}

DirichletCharacter DirichletCharacter::primitive() const {
  long f = conductor();
  if (f == M_) return *this;
  return from_values(f, [&](long n) {
    long step = f == 1 ? 1 : f;
    long a = n % step;
    if (step == 1) a = 1;
    while (std::gcd(a, M_) != 1) a += step;
    return (*this)(a);
  });
}

DirichletCharacter DirichletCharacter::lift_to(long L) const {
  if (L % M_ != 0) throw std::runtime_error("lift target is not a multiple of the modulus");
  if (L == M_) return *this;
  return from_values(L, [&](long n) { return (*this)(n); });
}

DirichletCharacter DirichletCharacter::times(const DirichletCharacter& o) const {
  long L = std::lcm(M_, o.M_);
  return from_values(L, [&](long n) { return (*this)(n) * o(n); });
}

DirichletCharacter DirichletCharacter::at_factor(long Q) const {
  if (Q <= 0 || M_ % Q != 0 || std::gcd(Q, M_ / Q) != 1)
    throw std::runtime_error("factor must divide the modulus exactly once");
  long C = M_ / Q;
  if (Q == M_) return *this;
  return from_values(Q, [&](long n) {
    return (*this)(crt_pair(n, Q, 1, C));
  });
}

bool DirichletCharacter::operator==(const DirichletCharacter& o) const {
  if (M_ != o.M_ || gv_.size() != o.gv_.size()) return false;
  for (size_t i = 0; i < gv_.size(); ++i)
    if (gv_[i].gen != o.gv_[i].gen || gv_[i].zeta_order != o.gv_[i].zeta_order ||
        gv_[i].zeta_exp != o.gv_[i].zeta_exp)
      return false;
  return true;
}

std::string DirichletCharacter::str() const {
  std::ostringstream os;
  os << "chi mod " << M_ << " [";
  for (size_t i = 0; i < gv_.size(); ++i) {
    if (i) os << ", ";
    os << gv_[i].gen << " -> z" << gv_[i].zeta_order << "^" << gv_[i].zeta_exp;
  }
  os << "]";
  return os.str();
}

std::vector<DirichletCharacter> all_characters(long M) {
  DirichletCharacter base(M);
  const auto& gv = base.gen_values();
  std::vector<DirichletCharacter> out;
  std::vector<long> t(gv.size(), 0);
  while (true) {
    std::vector<std::array<long, 3>> triples;
    for (size_t i = 0; i < gv.size(); ++i)
      triples.push_back({gv[i].gen, gv[i].gen_order, t[i]});
    out.push_back(DirichletCharacter::from_gen_values(M, triples));
    size_t i = gv.size();
    while (i > 0) {
      --i;
      if (++t[i] < gv[i].gen_order) break;
      t[i] = 0;
      if (i == 0) return out;
    }
    if (gv.empty()) return out;
  }
}

Cyclo gauss_sum(const DirichletCharacter& chi) {
  long M = chi.modulus();
  Cyclo out;
  for (long a = 1; a <= M; ++a) {
    if (std::gcd(a, M) != 1) continue;
    out = out + chi(a) * Cyclo::zeta(M, a);
  }
  return out;
}

}  // namespace prs
