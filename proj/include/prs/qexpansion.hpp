#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "prs/ring.hpp"

namespace prs {

// Truncated q-expansion: coefficients a_0 .. a_prec of sum a_n q^n are known.
// Operators track how far the result is determined by the input:
//   scaling/depletion/theta/twist keep prec,
//   products and sums take the min,
//   U_d divides prec by d, V_d multiplies it (inserted gaps are known zero).
template <class R>
class QExpansion {
public:
  QExpansion(long prec, const R& like) : a_(prec + 1, ring_zero(like)) {
    if (prec < 0) throw std::runtime_error("negative q-precision");
  }
  explicit QExpansion(std::vector<R> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty()) throw std::runtime_error("empty q-expansion");
  }

  long prec() const { return static_cast<long>(a_.size()) - 1; }
  const R& exemplar() const { return a_[0]; }
  const R& coeff(long n) const {
    if (n < 0 || n > prec()) throw std::runtime_error("coefficient beyond precision");
    return a_[n];
  }
  R& coeff(long n) {
    if (n < 0 || n > prec()) throw std::runtime_error("coefficient beyond precision");
    return a_[n];
  }
  void set_coeff(long n, const R& v) {
    if (n < 0 || n > prec()) throw std::runtime_error("coefficient beyond precision");
    a_[n] = v;
  }

  QExpansion truncated(long newprec) const {
    if (newprec > prec()) throw std::runtime_error("cannot extend by truncation");
    std::vector<R> c(a_.begin(), a_.begin() + newprec + 1);
    return QExpansion(std::move(c));
  }

  QExpansion operator+(const QExpansion& o) const {
    long p = std::min(prec(), o.prec());
    QExpansion out(p, exemplar());
    for (long n = 0; n <= p; ++n) out.a_[n] = a_[n] + o.a_[n];
    return out;
  }
  QExpansion operator-(const QExpansion& o) const {
    long p = std::min(prec(), o.prec());
    QExpansion out(p, exemplar());
    for (long n = 0; n <= p; ++n) out.a_[n] = a_[n] - o.a_[n];
    return out;
  }
  QExpansion operator*(const QExpansion& o) const {
    long p = std::min(prec(), o.prec());
    QExpansion out(p, exemplar());
    for (long i = 0; i <= p; ++i) {
      if (ring_is_zero(a_[i])) continue;
      for (long j = 0; i + j <= p; ++j)
        out.a_[i + j] = out.a_[i + j] + a_[i] * o.a_[j];
    }
    return out;
  }
  QExpansion scaled(const R& s) const {
    QExpansion out = *this;
    for (auto& x : out.a_) x = x * s;
    return out;
  }

  bool agrees_with(const QExpansion& o) const {
    long p = std::min(prec(), o.prec());
    for (long n = 0; n <= p; ++n)
      if (!ring_eq(a_[n], o.a_[n])) return false;
    return true;
  }

  bool is_zero() const {
    for (auto& x : a_)
      if (!ring_is_zero(x)) return false;
    return true;
  }

private:
  std::vector<R> a_;
};

// a_n -> a_{nd}; the result is determined through floor(prec/d).
template <class R>
QExpansion<R> u_operator(const QExpansion<R>& f, long d) {
  if (d <= 0) throw std::runtime_error("u_operator wants d >= 1");
  QExpansion<R> out(f.prec() / d, f.exemplar());
  for (long n = 0; n <= out.prec(); ++n) out.set_coeff(n, f.coeff(n * d));
  return out;
}

// q -> q^d; gaps are exact zeros, so the result is determined through prec*d.
template <class R>
QExpansion<R> v_operator(const QExpansion<R>& f, long d) {
  if (d <= 0) throw std::runtime_error("v_operator wants d >= 1");
  QExpansion<R> out(f.prec() * d, f.exemplar());
  for (long n = 0; n <= f.prec(); ++n) out.set_coeff(n * d, f.coeff(n));
  return out;
}

// Drop the coefficients with d | n (n > 0 and n = 0 alike): f minus its
// d-divisible part.  Constant term is removed as well, matching
// deplete = 1 - V_d U_d on expansions with a_0 handled by the caller.
template <class R>
QExpansion<R> deplete(const QExpansion<R>& f, long d) {
  QExpansion<R> out = f;
  for (long n = 0; n <= f.prec(); n += d) out.set_coeff(n, ring_zero(f.exemplar()));
  return out;
}

// a_n -> n^t a_n; each application raises the weight by 2.
template <class R>
QExpansion<R> theta_operator(const QExpansion<R>& f, long t) {
  if (t < 0) throw std::runtime_error("theta power must be nonnegative");
  QExpansion<R> out = f;
  for (long n = 0; n <= f.prec(); ++n) {
    R m = ring_from_rat(rat_pow(Rat(n), t), f.exemplar());
    out.set_coeff(n, m * f.coeff(n));
  }
  return out;
}

// a_n -> chi(n) a_n for a coefficient-ring-valued character function.
template <class R>
QExpansion<R> twist_naive(const QExpansion<R>& f,
                          const std::function<R(long)>& chi) {
  QExpansion<R> out = f;
  for (long n = 0; n <= f.prec(); ++n) out.set_coeff(n, chi(n) * f.coeff(n));
  return out;
}

// Hecke operator at a prime l on level-M weight-k expansions with character:
// a_n -> a_{nl} + chi(l) l^{k-1} a_{n/l}.
template <class R>
QExpansion<R> hecke_operator(const QExpansion<R>& f, long l, long k,
                             const std::function<R(long)>& chi) {
  QExpansion<R> out(f.prec() / l, f.exemplar());
  R mult = chi(l) * ring_from_rat(rat_pow(Rat(l), k - 1), f.exemplar());
  for (long n = 0; n <= out.prec(); ++n) {
    R v = f.coeff(n * l);
    if (n % l == 0) v = v + mult * f.coeff(n / l);
    out.set_coeff(n, v);
  }
  return out;
}

// Coefficient bound determining a modular form of weight k on Gamma1(M):
// ceil(k * mu / 12) with mu the index M^2 prod_{l | M} (1 - 1/l^2).
inline long sturm_bound(long k, long M) {
  Rat mu(M * M);
  for (auto& [l, e] : factorize(M)) {
    (void)e;
    mu *= Rat(l * l - 1) / Rat(l * l);
  }
  Rat b = Rat(k) * mu / 12;
  Int num = numerator(b), den = denominator(b);
  Int q = num / den;
  if (q * den != num) q += 1;
  return static_cast<long>(q);
}

}  // namespace prs
