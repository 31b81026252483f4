#include "prs/rational.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace prs {

Int int_pow(const Int& b, long e) {
  if (e < 0) throw std::invalid_argument("int_pow: negative exponent");
  Int r = 1, base = b;
  long n = e;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

Rat rat_pow(const Rat& b, long e) {
  if (e >= 0) {
    Rat r = 1, base = b;
    long n = e;
    while (n > 0) {
      if (n & 1) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }
  if (b == 0) throw std::domain_error("rat_pow: 0 to negative power");
  return rat_pow(Rat(1) / b, -e);
}

long int_val(const Int& n, const Int& p) {
  if (n == 0) throw std::domain_error("int_val: v(0) undefined");
  Int m = abs(n);
  long v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

long rat_val(const Rat& x, const Int& p) {
  if (x == 0) throw std::domain_error("rat_val: v(0) undefined");
  return int_val(numerator(x), p) - int_val(denominator(x), p);
}

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

long lcm_long(long a, long b) {
  Int l = lcm(Int(a), Int(b));
  return static_cast<long>(l);
}

Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int old_r = a, r = b;
  Int old_s = 1, ss = 0;
  Int old_t = 0, tt = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * ss; old_s = ss; ss = tmp;
    tmp = old_t - q * tt; old_t = tt; tt = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  s = old_s;
  t = old_t;
  return old_r;
}

Int inv_mod(const Int& a, const Int& m) {
  Int s, t;
  Int g = ext_gcd(mod_reduce(a, m), m, s, t);
  if (g != 1) throw std::domain_error("inv_mod: not invertible");
  return mod_reduce(s, m);
}

Int pow_mod(Int b, Int e, const Int& m) {
  if (e < 0) return pow_mod(inv_mod(b, m), -e, m);
  Int r = 1;
  b = mod_reduce(b, m);
  while (e > 0) {
    if (e % 2 == 1) r = mod_reduce(r * b, m);
    b = mod_reduce(b * b, m);
    e /= 2;
  }
  return r;
}

Int mod_reduce(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n <= 0) throw std::invalid_argument("factorize: need n > 0");
  std::vector<std::pair<long, int>> f;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) { n /= d; ++e; }
      f.push_back({d, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

long euler_phi(long n) {
  long r = 1;
  for (auto [p, e] : factorize(n)) {
    long pe = 1;
    for (int i = 0; i < e - 1; ++i) pe *= p;
    r *= pe * (p - 1);
  }
  return n == 1 ? 1 : r;
}

long mul_order(long a, long m) {
  a %= m;
  if (a < 0) a += m;
  if (std::gcd(a, m) != 1) throw std::domain_error("mul_order: not a unit");
  long x = a % m, ord = 1;
  while (x != 1 % m) {
    x = (long)((Int(x) * a) % m);
    ++ord;
    if (ord > m) throw std::logic_error("mul_order: runaway");
  }
  return ord;
}

long smallest_primitive_root(long p) {
  for (long g = 2; g < p; ++g)
    if (mul_order(g, p) == p - 1) return g;
  throw std::domain_error("smallest_primitive_root: none found");
}

Rat binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Rat r = 1;
  for (long i = 0; i < k; ++i) r *= Rat(n - i) / Rat(i + 1);
  return r;
}

Rat bernoulli_number(long k) {
  static std::map<long, Rat> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  if (auto it = cache.find(k); it != cache.end()) return it->second;
  // B_0..B_k from sum_{j<=m} C(m+1,j) B_j = 0 for m >= 1.
  long top = k;
  std::vector<Rat> b(top + 1);
  b[0] = 1;
  for (long m = 1; m <= top; ++m) {
    Rat s = 0;
    for (long j = 0; j < m; ++j) s += binomial(m + 1, j) * b[j];
    b[m] = -s / Rat(m + 1);
  }
  for (long j = 0; j <= top; ++j) cache[j] = b[j];
  return cache[k];
}

Rat bernoulli_poly(long m, const Rat& x) {
  Rat s = 0;
  for (long j = 0; j <= m; ++j)
    s += binomial(m, j) * bernoulli_number(j) * rat_pow(x, m - j);
  return s;
}

std::string rat_to_string(const Rat& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

Rat rat_from_string(const std::string& s) {
  auto pos = s.find('/');
  if (pos == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, pos))) / Rat(Int(s.substr(pos + 1)));
}

}  // namespace prs
