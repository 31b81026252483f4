#ifndef PRS_RATIONAL_HPP
#define PRS_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace prs {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int numerator(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int denominator(const Rat& x) { return boost::multiprecision::denominator(x); }

Int int_pow(const Int& b, long e);
Rat rat_pow(const Rat& b, long e);

// Largest e with p^e | n.  v_p(0) is an error.
long int_val(const Int& n, const Int& p);
// v_p(num) - v_p(den); x must be nonzero.
long rat_val(const Rat& x, const Int& p);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
long lcm_long(long a, long b);

// Extended gcd: returns g = gcd(a,b) and sets s,t with s*a + t*b = g.
Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t);
// Inverse of a mod m (m > 0, gcd(a,m) = 1).
Int inv_mod(const Int& a, const Int& m);
Int pow_mod(Int b, Int e, const Int& m);
Int mod_reduce(const Int& a, const Int& m);  // representative in [0, m)

bool is_prime(long n);
std::vector<std::pair<long, int>> factorize(long n);
long euler_phi(long n);
long mul_order(long a, long m);          // order of a in (Z/m)^*, gcd(a,m)=1
long smallest_primitive_root(long p);    // p odd prime

Rat binomial(long n, long k);
// Bernoulli numbers with B_1 = -1/2 (the generating-function convention
// t/(e^t - 1)); cached internally.
Rat bernoulli_number(long k);
// Bernoulli polynomial B_m(x) = sum_j C(m,j) B_j x^{m-j}.
Rat bernoulli_poly(long m, const Rat& x);

std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

}  // namespace prs

#endif
