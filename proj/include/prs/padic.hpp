#pragma once

#include <string>
#include <vector>

#include "prs/cyclotomic.hpp"
#include "prs/rational.hpp"

namespace prs {

// Element of Q_p known to finite relative precision.
//
// Represented as p^v * u where u is a unit stored mod p^r, together with the
// relative precision r.  A "zero at precision" element has u = 0, r = 0 and v
// equal to the absolute precision bound: it stands for any element of
// valuation >= v.  Precision bookkeeping is pessimistic:
//   add: absolute precisions meet (min),
//   mul: valuations add, relative precisions meet,
//   inv: valuation negates, relative precision preserved.
class PadicScalar {
public:
  PadicScalar() : p_(0), v_(0), r_(0), u_(0) {}

  // Exact small integers and rationals, capped at relative precision cap.
  static PadicScalar from_int(long p, const Int& n, long cap);
  static PadicScalar from_rat(long p, const Rat& x, long cap);
  static PadicScalar zero_at(long p, long absprec);
  static PadicScalar unit(long p, const Int& u, long v, long r);

  long p() const { return p_; }
  long valuation() const;  // throws on zero-at-precision with no witness
  long rel_prec() const { return r_; }
  long abs_prec() const { return is_zero_at_prec() ? v_ : v_ + r_; }
  const Int& unit_part() const { return u_; }
  bool is_zero_at_prec() const { return r_ == 0; }

  // True if the element is known nonzero (i.e. carries a genuine unit part).
  bool known_nonzero() const { return r_ > 0; }

  PadicScalar operator-() const;
  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar inv() const;
  PadicScalar operator/(const PadicScalar& o) const;
  PadicScalar pow(const Int& e) const;  // negative e allowed for units

  // Equality at the meet of the two absolute precisions.
  bool agrees_with(const PadicScalar& o) const;

  // Value mod p^k as an integer in [0, p^k); requires v >= 0 and k <= absprec.
  Int residue(long k) const;

  std::string str() const;

private:
  PadicScalar(long p, long v, long r, Int u) : p_(p), v_(v), r_(r), u_(std::move(u)) {}
  void normalise();

  long p_;
  long v_;
  long r_;
  Int u_;  // unit mod p^r, in [0, p^r); 0 iff r == 0
};

// Teichmueller lift of a mod p, computed mod p^r by x -> x^p iteration.
Int teichmuller(long p, const Int& a, long r);

// Fixed embedding of a cyclotomic field Q(zeta_M) into Q_p.  Requires
// M | p - 1, so the image lies in Q_p itself.  zeta_M is pinned to
// omega(g^{(p-1)/M}) where g is the smallest primitive root mod p and omega
// the Teichmueller character; this makes embeddings at different M coherent.
class PadicEmbedding {
public:
  PadicEmbedding(long p, long cap);

  long p() const { return p_; }
  long cap() const { return cap_; }

  PadicScalar embed(const Rat& x) const;
  PadicScalar embed(const Cyclo& z) const;

  // The image of zeta_M; cached per conductor.
  PadicScalar root_of_unity(long M) const;

private:
  long p_;
  long cap_;
  Int g_;  // smallest primitive root mod p
  mutable std::vector<std::pair<long, PadicScalar>> roots_;
};

}  // namespace prs
