#pragma once

#include <stdexcept>
#include <vector>

#include "prs/ring.hpp"

namespace prs {

// Dense polynomial over R, coefficient i is of X^i.  Trailing zeros allowed;
// degree() ignores them.  An empty coefficient vector is not allowed: every
// polynomial carries at least its constant term, which doubles as the ring
// exemplar.
template <class R>
class Poly {
public:
  explicit Poly(const R& c0) : c_(1, c0) {}
  explicit Poly(std::vector<R> c) : c_(std::move(c)) {
    if (c_.empty()) throw std::runtime_error("empty polynomial");
  }

  static Poly zero(const R& like) { return Poly(ring_zero(like)); }
  static Poly one(const R& like) { return Poly(ring_one(like)); }
  static Poly monomial(const R& coeff, long deg) {
    std::vector<R> c(deg + 1, ring_zero(coeff));
    c[deg] = coeff;
    return Poly(std::move(c));
  }

  const R& exemplar() const { return c_[0]; }
  long size() const { return static_cast<long>(c_.size()); }
  long degree() const {
    for (long i = size() - 1; i >= 0; --i)
      if (!ring_is_zero(c_[i])) return i;
    return -1;
  }
  const R& coeff(long i) const {
    if (i < 0 || i >= size()) {
      if (zero_cache_.empty()) zero_cache_.push_back(ring_zero(c_[0]));
      return zero_cache_[0];
    }
    return c_[i];
  }
  void set_coeff(long i, const R& v) {
    while (size() <= i) c_.push_back(ring_zero(c_[0]));
    c_[i] = v;
  }

  R eval(const R& x) const {
    R acc = ring_zero(x);
    for (long i = size() - 1; i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  Poly operator+(const Poly& o) const {
    std::vector<R> c(std::max(size(), o.size()), ring_zero(c_[0]));
    for (long i = 0; i < static_cast<long>(c.size()); ++i)
      c[i] = coeff(i) + o.coeff(i);
    return Poly(std::move(c));
  }
  Poly operator-(const Poly& o) const {
    std::vector<R> c(std::max(size(), o.size()), ring_zero(c_[0]));
    for (long i = 0; i < static_cast<long>(c.size()); ++i)
      c[i] = coeff(i) - o.coeff(i);
    return Poly(std::move(c));
  }
  Poly operator*(const Poly& o) const {
    std::vector<R> c(size() + o.size() - 1, ring_zero(c_[0]));
    for (long i = 0; i < size(); ++i) {
      if (ring_is_zero(c_[i])) continue;
      for (long j = 0; j < o.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
    }
    return Poly(std::move(c));
  }
  Poly scaled(const R& s) const {
    std::vector<R> c = c_;
    for (auto& x : c) x = x * s;
    return Poly(std::move(c));
  }
  // P(cX): coefficient i picks up c^i.
  Poly subst_scaled_var(const R& s) const {
    std::vector<R> c = c_;
    R pw = ring_one(s);
    for (long i = 0; i < size(); ++i) {
      c[i] = c[i] * pw;
      pw = pw * s;
    }
    return Poly(std::move(c));
  }

  bool eq(const Poly& o) const {
    long n = std::max(size(), o.size());
    for (long i = 0; i < n; ++i)
      if (!ring_eq(coeff(i), o.coeff(i))) return false;
    return true;
  }

private:
  std::vector<R> c_;
  mutable std::vector<R> zero_cache_;
};

// Product truncated to degree < bound; cheaper than full multiply for long
// series comparisons.
template <class R>
Poly<R> poly_mul_trunc(const Poly<R>& a, const Poly<R>& b, long bound) {
  std::vector<R> c(bound, ring_zero(a.exemplar()));
  for (long i = 0; i < std::min(a.size(), bound); ++i) {
    if (ring_is_zero(a.coeff(i))) continue;
    for (long j = 0; j < b.size() && i + j < bound; ++j)
      c[i + j] = c[i + j] + a.coeff(i) * b.coeff(j);
  }
  return Poly<R>(std::move(c));
}

// Power series inverse of p (p(0) must be invertible) to degree < bound.
template <class R>
Poly<R> poly_series_inv(const Poly<R>& p, long bound) {
  R c0 = p.coeff(0);
  if (ring_is_zero(c0)) throw std::runtime_error("series inverse needs a unit constant term");
  std::vector<R> c(bound, ring_zero(c0));
  R inv0 = ring_inv(c0);
  c[0] = inv0;
  for (long n = 1; n < bound; ++n) {
    R acc = ring_zero(c0);
    for (long i = 1; i <= std::min<long>(n, p.size() - 1); ++i)
      acc = acc + p.coeff(i) * c[n - i];
    c[n] = ring_zero(c0) - acc * inv0;
  }
  return Poly<R>(std::move(c));
}

// Laurent polynomial: coeffs[i] multiplies X^{low + i}.
template <class R>
struct LaurentPoly {
  long low;
  std::vector<R> coeffs;

  R coeff(long e) const {
    if (e < low || e >= low + static_cast<long>(coeffs.size()))
      return ring_zero(coeffs.at(0));
    return coeffs[e - low];
  }

  // The part with exponents >= 0, as an ordinary polynomial.
  Poly<R> nonnegative_part(const R& like) const {
    long top = low + static_cast<long>(coeffs.size()) - 1;
    std::vector<R> c(std::max<long>(top + 1, 1), ring_zero(like));
    for (long e = std::max<long>(low, 0); e <= top; ++e) c[e] = coeff(e);
    return Poly<R>(std::move(c));
  }
};

}  // namespace prs
