#include "prs/padic.hpp"

#include <sstream>
#include <stdexcept>

namespace prs {

namespace {

Int pk(long p, long k) { return int_pow(Int(p), k); }

}  // namespace

void PadicScalar::normalise() {
  if (r_ <= 0) {
    u_ = 0;
    r_ = 0;
    return;
  }
  Int mod = pk(p_, r_);
  u_ = mod_reduce(u_, mod);
  if (u_ == 0) {
    // All stored digits vanished: only the absolute bound v + r survives.
    v_ += r_;
    r_ = 0;
    return;
  }
  // Shift any factors of p out of u into v, at the cost of relative precision.
  while (u_ % p_ == 0) {
    u_ /= p_;
    v_ += 1;
    r_ -= 1;
    if (r_ == 0) {
      u_ = 0;
      return;
    }
    u_ = mod_reduce(u_, pk(p_, r_));
    if (u_ == 0) {
      v_ += r_;
      r_ = 0;
      return;
    }
  }
}

PadicScalar PadicScalar::from_int(long p, const Int& n, long cap) {
  if (n == 0) return zero_at(p, cap);
  Int m = n;
  long v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  PadicScalar out(p, v, cap, mod_reduce(m, pk(p, cap)));
  out.normalise();
  return out;
}

PadicScalar PadicScalar::from_rat(long p, const Rat& x, long cap) {
  if (x == 0) return zero_at(p, cap);
  Int num = numerator(x), den = denominator(x);
  long v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  Int mod = pk(p, cap);
  Int u = mod_reduce(num * inv_mod(mod_reduce(den, mod), mod), mod);
  PadicScalar out(p, v, cap, u);
  out.normalise();
  return out;
}

PadicScalar PadicScalar::zero_at(long p, long absprec) {
  return PadicScalar(p, absprec, 0, Int(0));
}

PadicScalar PadicScalar::unit(long p, const Int& u, long v, long r) {
  PadicScalar out(p, v, r, u);
  out.normalise();
  return out;
}

long PadicScalar::valuation() const {
  if (is_zero_at_prec())
    throw std::runtime_error("valuation of element indistinguishable from zero");
  return v_;
}

PadicScalar PadicScalar::operator-() const {
  if (is_zero_at_prec()) return *this;
  return PadicScalar(p_, v_, r_, pk(p_, r_) - u_);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  if (p_ == 0) return o;
  if (o.p_ == 0) return *this;
  if (p_ != o.p_) throw std::runtime_error("p mismatch in p-adic addition");
  long ap = std::min(abs_prec(), o.abs_prec());
  if (is_zero_at_prec() && o.is_zero_at_prec()) return zero_at(p_, ap);
  if (is_zero_at_prec()) {
    if (o.v_ >= ap) return zero_at(p_, ap);
    PadicScalar out(p_, o.v_, ap - o.v_, o.u_);
    out.normalise();
    return out;
  }
  if (o.is_zero_at_prec()) return o + *this;
  long v = std::min(v_, o.v_);
  if (v >= ap) return zero_at(p_, ap);
  Int sum = u_ * pk(p_, v_ - v) + o.u_ * pk(p_, o.v_ - v);
  PadicScalar out(p_, v, ap - v, sum);
  out.normalise();
  return out;
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  if (p_ == 0 || o.p_ == 0) {
    // Multiplying by a default-constructed scalar is a programming error.
    throw std::runtime_error("uninitialised p-adic scalar in multiplication");
  }
  if (p_ != o.p_) throw std::runtime_error("p mismatch in p-adic multiplication");
  if (is_zero_at_prec() || o.is_zero_at_prec()) {
    // v(xy) >= v(x) + v(y); use the known lower bounds.
    long lv = is_zero_at_prec() ? v_ : v_;
    long rv = o.is_zero_at_prec() ? o.v_ : o.v_;
    return zero_at(p_, lv + rv);
  }
  long r = std::min(r_, o.r_);
  PadicScalar out(p_, v_ + o.v_, r, mod_reduce(u_ * o.u_, pk(p_, r)));
  out.normalise();
  return out;
}

PadicScalar PadicScalar::inv() const {
  if (is_zero_at_prec())
    throw std::runtime_error("inverse of element indistinguishable from zero");
  Int mod = pk(p_, r_);
  return PadicScalar(p_, -v_, r_, inv_mod(u_, mod));
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const { return *this * o.inv(); }

PadicScalar PadicScalar::pow(const Int& e) const {
  if (e == 0) return unit(p_, Int(1), 0, r_ > 0 ? r_ : 1);
  if (e < 0) return inv().pow(-e);
  if (is_zero_at_prec()) {
    long steps = static_cast<long>(e);
    return zero_at(p_, v_ * steps);
  }
  Int mod = pk(p_, r_);
  long vev = v_ * static_cast<long>(e);
  return PadicScalar(p_, vev, r_, pow_mod(u_, e, mod));
}

bool PadicScalar::agrees_with(const PadicScalar& o) const {
  PadicScalar d = *this - o;
  return d.is_zero_at_prec();
}

Int PadicScalar::residue(long k) const {
  if (is_zero_at_prec()) {
    if (v_ < k) throw std::runtime_error("residue requested beyond known precision");
    return Int(0);
  }
  if (v_ < 0) throw std::runtime_error("residue of non-integral element");
  if (v_ + r_ < k) throw std::runtime_error("residue requested beyond known precision");
  return mod_reduce(u_ * pk(p_, v_), pk(p_, k));
}

std::string PadicScalar::str() const {
  std::ostringstream os;
  if (is_zero_at_prec()) {
    os << "O(" << p_ << "^" << v_ << ")";
    return os.str();
  }
  os << u_ << "*" << p_ << "^" << v_ << " + O(" << p_ << "^" << (v_ + r_) << ")";
  return os.str();
}

Int teichmuller(long p, const Int& a, long r) {
  Int mod = int_pow(Int(p), r);
  Int x = mod_reduce(a, mod);
  if (x % p == 0) return Int(0);
  // x -> x^p converges to the Teichmueller representative; r iterations
  // suffice since each step at least doubles the agreement depth.
  for (long i = 0; i < r + 1; ++i) x = pow_mod(x, Int(p), mod);
  // Fixed point check: one more step must not move it.
  if (pow_mod(x, Int(p), mod) != x) {
    Int y = pow_mod(x, Int(p), mod);
    while (y != x) {
      x = y;
      y = pow_mod(x, Int(p), mod);
    }
  }
  return x;
}

PadicEmbedding::PadicEmbedding(long p, long cap) : p_(p), cap_(cap) {
  if (!is_prime(p)) throw std::runtime_error("embedding requires prime p");
  g_ = smallest_primitive_root(p);
}

PadicScalar PadicEmbedding::embed(const Rat& x) const {
  return PadicScalar::from_rat(p_, x, cap_);
}

PadicScalar PadicEmbedding::root_of_unity(long M) const {
  for (auto& kv : roots_)
    if (kv.first == M) return kv.second;
  if (M <= 0 || (p_ - 1) % M != 0)
    throw std::runtime_error("no embedding: order of root does not divide p-1");
  Int a = pow_mod(g_, Int((p_ - 1) / M), Int(p_));
  PadicScalar z = PadicScalar::unit(p_, teichmuller(p_, a, cap_), 0, cap_);
  roots_.emplace_back(M, z);
  return z;
}

PadicScalar PadicEmbedding::embed(const Cyclo& z) const {
  long M = z.conductor();
  PadicScalar zeta = root_of_unity(M);
  PadicScalar acc = PadicScalar::zero_at(p_, cap_);
  const auto& c = z.coords();
  PadicScalar zp = PadicScalar::unit(p_, Int(1), 0, cap_);
  for (size_t j = 0; j < c.size(); ++j) {
    if (c[j] != 0) acc = acc + embed(c[j]) * zp;
    zp = zp * zeta;
  }
  return acc;
}

}  // namespace prs
