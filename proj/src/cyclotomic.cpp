#include "prs/cyclotomic.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace prs {

namespace {

// Dense polynomial division a / b over Q, b monic-leading; returns quotient,
// a becomes the remainder.
std::vector<Rat> poly_divmod(std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> q;
  if (a.size() < b.size()) return q;
  q.assign(a.size() - b.size() + 1, Rat(0));
  Rat lead = b.back();
  for (long i = (long)a.size() - 1; i >= (long)b.size() - 1; --i) {
    if (a[i] == 0) continue;
    Rat f = a[i] / lead;
    q[i - (b.size() - 1)] = f;
    for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= f * b[j];
  }
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  return q;
}

struct CycloTable {
  long M;
  long phi;
  std::vector<Rat> poly;                       // Phi_M, ascending
  std::vector<std::vector<Rat>> z_pow;         // z^j for j in [0, 2*phi-1), reduced
};

const CycloTable& table_for(long M) {
  static std::map<long, CycloTable> tables;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = tables.find(M);
  if (it != tables.end()) return it->second;

  CycloTable t;
  t.M = M;
  t.phi = euler_phi(M);
  t.poly = cyclotomic_poly(M);
  t.z_pow.resize(std::max({2 * t.phi - 1, M, 1L}));
  // z^j for j < phi is the basis vector; reduce higher powers by Phi_M.
  for (long j = 0; j < (long)t.z_pow.size(); ++j) {
    std::vector<Rat> x(j + 1, Rat(0));
    x[j] = 1;
    poly_divmod(x, t.poly);
    x.resize(t.phi, Rat(0));
    t.z_pow[j] = std::move(x);
  }
  return tables.emplace(M, std::move(t)).first->second;
}

std::vector<Rat> reduce_power_list(long M, const std::vector<Rat>& raw) {
  // raw is a coefficient list in z^0..z^{len-1}; reduce into the basis.
  const CycloTable& t = table_for(M);
  std::vector<Rat> out(t.phi, Rat(0));
  for (size_t j = 0; j < raw.size(); ++j) {
    if (raw[j] == 0) continue;
    if ((long)j < t.phi) {
      out[j] += raw[j];
    } else if (j < t.z_pow.size()) {
      for (long i = 0; i < t.phi; ++i) out[i] += raw[j] * t.z_pow[j][i];
    } else {
      // exponent >= 2*phi-1: fold by z^M = 1 first
      long jj = (long)j % M;
      std::vector<Rat> one(jj + 1, Rat(0));
      one[jj] = raw[j];
      auto red = reduce_power_list(M, one);
      for (long i = 0; i < t.phi; ++i) out[i] += red[i];
    }
  }
  return out;
}

}  // namespace

const std::vector<Rat>& cyclotomic_poly(long M) {
  static std::map<long, std::vector<Rat>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;

  // Phi_M = (x^M - 1) / prod_{d | M, d < M} Phi_d, built recursively.
  std::function<const std::vector<Rat>&(long)> get = [&](long n) -> const std::vector<Rat>& {
    auto hit = cache.find(n);
    if (hit != cache.end()) return hit->second;
    std::vector<Rat> num(n + 1, Rat(0));
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      const std::vector<Rat>& phid = get(d);
      std::vector<Rat> rem = num;
      std::vector<Rat> quot = poly_divmod(rem, phid);
      if (!(rem.size() == 1 && rem[0] == 0))
        throw std::logic_error("cyclotomic_poly: division not exact");
      num = std::move(quot);
    }
    return cache.emplace(n, std::move(num)).first->second;
  };
  return get(M);
}

Cyclo::Cyclo(long conductor, std::vector<Rat> coords) : m_(conductor), c_(std::move(coords)) {
  if (m_ < 1) throw std::invalid_argument("Cyclo: conductor >= 1");
  long phi = euler_phi(m_);
  if ((long)c_.size() != phi) throw std::invalid_argument("Cyclo: coord length != phi(M)");
}

Cyclo Cyclo::zeta(long M, long exponent) {
  if (M < 1) throw std::invalid_argument("Cyclo::zeta: M >= 1");
  long e = exponent % M;
  if (e < 0) e += M;
  std::vector<Rat> raw(e + 1, Rat(0));
  raw[e] = 1;
  return Cyclo(M, reduce_power_list(M, raw));
}

bool Cyclo::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  Cyclo r = reduced();
  return r.m_ == 1;
}

Rat Cyclo::rational_part() const {
  Cyclo r = reduced();
  if (r.m_ != 1) throw std::domain_error("Cyclo::rational_part: not rational");
  return r.c_[0];
}

Cyclo Cyclo::lift_to(long M) const {
  if (M == m_) return *this;
  if (M % m_ != 0) throw std::invalid_argument("Cyclo::lift_to: not a multiple");
  long s = M / m_;  // zeta_m = zeta_M^s
  std::vector<Rat> raw((euler_phi(m_) - 1) * s + 1, Rat(0));
  for (long j = 0; j < (long)c_.size(); ++j) raw[j * s] = c_[j];
  return Cyclo(M, reduce_power_list(M, raw));
}

Cyclo Cyclo::reduced() const {
  // Try each divisor d of m_ in increasing order; the element lies in
  // Q(zeta_d) iff lifting some Q(zeta_d)-element reproduces it.  Cheap test:
  // compare against the projection built from an explicit basis solve is
  // overkill at our sizes; instead check Galois invariance under the
  // generators of Gal(Q(zeta_m)/Q(zeta_d)).
  for (long d = 1; d <= m_; ++d) {
    if (m_ % d != 0) continue;
    bool inv = true;
    for (long t = 2; t <= m_ && inv; ++t) {
      if (std::gcd(t, m_) != 1) continue;
      if (t % d != 1 % d) continue;  // t fixes zeta_d
      if (galois(t) != *this) inv = false;
    }
    if (!inv) continue;
    // Invariant under Gal(./Q(zeta_d)): express in Q(zeta_d).
    // Solve by linear algebra over the power basis of Q(zeta_d) lifted up.
    long phid = euler_phi(d);
    // Build matrix of lifted basis vectors.
    std::vector<Cyclo> basis;
    for (long j = 0; j < phid; ++j) basis.push_back(Cyclo::zeta(d, j).lift_to(m_));
    // Gaussian solve: coords of *this in terms of basis (phi(m_) x phid system).
    long n = euler_phi(m_);
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(phid + 1, Rat(0)));
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < phid; ++j) A[i][j] = basis[j].coords()[i];
      A[i][phid] = c_[i];
    }
    std::vector<long> pivot_col;
    long row = 0;
    for (long col = 0; col < phid && row < n; ++col) {
      long pr = -1;
      for (long i = row; i < n; ++i)
        if (A[i][col] != 0) { pr = i; break; }
      if (pr < 0) continue;
      std::swap(A[pr], A[row]);
      Rat lead = A[row][col];
      for (long j = col; j <= phid; ++j) A[row][j] /= lead;
      for (long i = 0; i < n; ++i) {
        if (i == row || A[i][col] == 0) continue;
        Rat f = A[i][col];
        for (long j = col; j <= phid; ++j) A[i][j] -= f * A[row][j];
      }
      pivot_col.push_back(col);
      ++row;
    }
    bool consistent = true;
    for (long i = row; i < n; ++i)
      if (A[i][phid] != 0) consistent = false;
    if (!consistent) continue;
    std::vector<Rat> sol(phid, Rat(0));
    for (long i = 0; i < (long)pivot_col.size(); ++i) sol[pivot_col[i]] = A[i][phid];
    return Cyclo(d, sol);
  }
  return *this;
}

Cyclo Cyclo::galois(long t) const {
  long tt = t % m_;
  if (tt < 0) tt += m_;
  if (std::gcd(tt, m_) != 1) throw std::invalid_argument("Cyclo::galois: t not coprime");
  std::vector<Rat> raw(m_, Rat(0));
  // z^j -> z^{jt mod M}; assemble before reduction
  std::vector<Rat> acc((size_t)m_, Rat(0));
  for (long j = 0; j < (long)c_.size(); ++j) {
    if (c_[j] == 0) continue;
    long e = (long)((Int(j) * tt) % m_);
    acc[e] += c_[j];
  }
  (void)raw;
  return Cyclo(m_, reduce_power_list(m_, acc));
}

Cyclo Cyclo::conj() const { return m_ == 1 ? *this : galois(m_ - 1); }

Cyclo Cyclo::inv() const {
  if (is_zero()) throw std::domain_error("Cyclo::inv: zero");
  // Extended Euclid in Q[x] against Phi_M.
  const std::vector<Rat>& phi = cyclotomic_poly(m_);
  std::vector<Rat> a = c_;
  while (a.size() > 1 && a.back() == 0) a.pop_back();
  std::vector<Rat> r0 = phi, r1 = a;
  std::vector<Rat> t0 = {Rat(0)}, t1 = {Rat(1)};
  auto poly_mul = [](const std::vector<Rat>& x, const std::vector<Rat>& y) {
    std::vector<Rat> z(x.size() + y.size() - 1, Rat(0));
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
    return z;
  };
  auto poly_sub = [](std::vector<Rat> x, const std::vector<Rat>& y) {
    if (x.size() < y.size()) x.resize(y.size(), Rat(0));
    for (size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
    while (x.size() > 1 && x.back() == 0) x.pop_back();
    return x;
  };
  while (!(r1.size() == 1 && r1[0] == 0)) {
    std::vector<Rat> rem = r0;
    std::vector<Rat> q = poly_divmod(rem, r1);
    if (q.empty()) q = {Rat(0)};
    std::vector<Rat> t2 = poly_sub(t0, poly_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw std::domain_error("Cyclo::inv: not invertible (shares factor with Phi_M)");
  Rat lead = r0[0];
  std::vector<Rat> raw = t0;
  for (auto& x : raw) x /= lead;
  return Cyclo(m_, reduce_power_list(m_, raw));
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyclo r(Rat(1)), b = *this;
  long n = e;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  long M = lcm_long(a.m_, b.m_);
  Cyclo x = a.lift_to(M), y = b.lift_to(M);
  for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator-(const Cyclo& a) {
  Cyclo x = a;
  for (auto& v : x.c_) v = -v;
  return x;
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  long M = lcm_long(a.m_, b.m_);
  Cyclo x = a.lift_to(M), y = b.lift_to(M);
  std::vector<Rat> raw(x.c_.size() + y.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i] == 0) continue;
    for (size_t j = 0; j < y.c_.size(); ++j) {
      if (y.c_[j] == 0) continue;
      raw[i + j] += x.c_[i] * y.c_[j];
    }
  }
  return Cyclo(M, reduce_power_list(M, raw));
}

Cyclo operator*(const Rat& a, const Cyclo& b) {
  Cyclo x = b;
  for (auto& v : x.c_) v *= a;
  return x;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  long M = lcm_long(a.m_, b.m_);
  Cyclo x = a.lift_to(M), y = b.lift_to(M);
  return x.c_ == y.c_;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  Cyclo r = reduced();
  if (r.m_ == 1) {
    os << rat_to_string(r.c_[0]);
    return os.str();
  }
  os << "[" << r.m_ << ";";
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i) os << ",";
    os << rat_to_string(r.c_[i]);
  }
  os << "]";
  return os.str();
}

}  // namespace prs
