#ifndef PRS_CYCLOTOMIC_HPP
#define PRS_CYCLOTOMIC_HPP

#include <vector>

#include "prs/rational.hpp"

namespace prs {

// Element of Q(zeta_M) in the power basis 1, z, ..., z^{phi(M)-1} of the
// M-th cyclotomic field, z a fixed primitive M-th root of unity.  Mixed
// conductors are combined by lifting both operands to the lcm.
class Cyclo {
 public:
  Cyclo() : m_(1), c_(1, Rat(0)) {}
  explicit Cyclo(const Rat& x) : m_(1), c_(1, x) {}
  Cyclo(long conductor, std::vector<Rat> coords);

  static Cyclo zeta(long M, long exponent);  // z_M^exponent
  static Cyclo from_rat(const Rat& x) { return Cyclo(x); }

  long conductor() const { return m_; }
  const std::vector<Rat>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;  // requires is_rational()

  Cyclo lift_to(long M) const;    // m_ | M
  Cyclo reduced() const;          // smallest conductor representation
  Cyclo conj() const;             // z -> z^{-1}
  Cyclo galois(long t) const;     // z -> z^t, gcd(t, m_) = 1
  Cyclo inv() const;
  Cyclo pow(long e) const;

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Rat& a, const Cyclo& b);
  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

  std::string str() const;

 private:
  long m_;
  std::vector<Rat> c_;  // length phi(m_)
};

// Coefficients of the M-th cyclotomic polynomial (ascending, monic).
const std::vector<Rat>& cyclotomic_poly(long M);

}  // namespace prs

#endif
