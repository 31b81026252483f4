#pragma once

#include <climits>
#include <string>

#include "prs/cyclotomic.hpp"
#include "prs/padic.hpp"
#include "prs/rational.hpp"

// Exemplar-based ring helpers.  Constants are materialised "like" an existing
// element so that context-carrying scalars (p, precision cap) propagate.

namespace prs {

inline long padic_cap_of(const PadicScalar& like) {
  return like.rel_prec() > 0 ? like.rel_prec() : like.abs_prec();
}

inline Rat ring_zero(const Rat&) { return Rat(0); }
inline Cyclo ring_zero(const Cyclo&) { return Cyclo(); }
inline PadicScalar ring_zero(const PadicScalar& like) {
  return PadicScalar::zero_at(like.p(), padic_cap_of(like));
}

inline Rat ring_one(const Rat&) { return Rat(1); }
inline Cyclo ring_one(const Cyclo&) { return Cyclo(Rat(1)); }
inline PadicScalar ring_one(const PadicScalar& like) {
  return PadicScalar::from_int(like.p(), Int(1), padic_cap_of(like));
}

inline Rat ring_from_rat(const Rat& x, const Rat&) { return x; }
inline Cyclo ring_from_rat(const Rat& x, const Cyclo&) { return Cyclo(x); }
inline PadicScalar ring_from_rat(const Rat& x, const PadicScalar& like) {
  return PadicScalar::from_rat(like.p(), x, padic_cap_of(like));
}

template <class R>
inline R ring_from_long(long n, const R& like) {
  return ring_from_rat(Rat(n), like);
}

inline bool ring_is_zero(const Rat& x) { return x == 0; }

inline Rat ring_inv(const Rat& x);
inline Cyclo ring_inv(const Cyclo& x);
inline PadicScalar ring_inv(const PadicScalar& x);

// x^e by squaring; negative e through the inverse.
template <class R>
inline R ring_pow(const R& x, long e) {
  if (e < 0) return ring_pow(ring_inv(x), -e);
  R acc = ring_one(x);
  R base = x;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}
inline bool ring_is_zero(const Cyclo& x) { return x.is_zero(); }
inline bool ring_is_zero(const PadicScalar& x) { return x.is_zero_at_prec(); }

// Equality in the exact rings, agreement at the joint precision for p-adics.
inline bool ring_eq(const Rat& a, const Rat& b) { return a == b; }
inline bool ring_eq(const Cyclo& a, const Cyclo& b) { return a == b; }
inline bool ring_eq(const PadicScalar& a, const PadicScalar& b) {
  return a.agrees_with(b);
}

inline Rat ring_inv(const Rat& x) { return Rat(1) / x; }
inline Cyclo ring_inv(const Cyclo& x) { return x.inv(); }
inline PadicScalar ring_inv(const PadicScalar& x) { return x.inv(); }

// Pivot preference for elimination: lower is better, LONG_MAX means unusable.
inline long ring_pivot_score(const Rat& x) { return x == 0 ? LONG_MAX : 0; }
inline long ring_pivot_score(const Cyclo& x) { return x.is_zero() ? LONG_MAX : 0; }
inline long ring_pivot_score(const PadicScalar& x) {
  return x.known_nonzero() ? x.valuation() : LONG_MAX;
}

inline std::string ring_str(const Rat& x) { return rat_to_string(x); }
inline std::string ring_str(const Cyclo& x) { return x.str(); }
inline std::string ring_str(const PadicScalar& x) { return x.str(); }

}  // namespace prs
