#pragma once

#include <stdexcept>
#include <vector>

#include "prs/poly.hpp"
#include "prs/ring.hpp"

namespace prs {

// Dense matrix over a field R, row-major.  Always holds at least one entry so
// that the ring exemplar is available.
template <class R>
class Matrix {
public:
  Matrix(long rows, long cols, const R& like)
      : rows_(rows), cols_(cols), a_(rows * cols, ring_zero(like)) {
    if (rows <= 0 || cols <= 0) throw std::runtime_error("empty matrix");
  }

  static Matrix identity(long n, const R& like) {
    Matrix m(n, n, like);
    for (long i = 0; i < n; ++i) m.at(i, i) = ring_one(like);
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const R& exemplar() const { return a_[0]; }
  R& at(long i, long j) { return a_[i * cols_ + j]; }
  const R& at(long i, long j) const { return a_[i * cols_ + j]; }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = m.a_[i] + o.a_[i];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = m.a_[i] - o.a_[i];
    return m;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::runtime_error("shape mismatch in matrix product");
    Matrix m(rows_, o.cols_, exemplar());
    for (long i = 0; i < rows_; ++i)
      for (long k = 0; k < cols_; ++k) {
        if (ring_is_zero(at(i, k))) continue;
        for (long j = 0; j < o.cols_; ++j)
          m.at(i, j) = m.at(i, j) + at(i, k) * o.at(k, j);
      }
    return m;
  }
  Matrix scaled(const R& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x = x * s;
    return m;
  }
  Matrix transpose() const {
    Matrix m(cols_, rows_, exemplar());
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Matrix pow(const Int& e) const {
    if (rows_ != cols_) throw std::runtime_error("power of non-square matrix");
    if (e < 0) throw std::runtime_error("negative matrix power");
    Matrix acc = identity(rows_, exemplar());
    Matrix base = *this;
    Int k = e;
    while (k > 0) {
      if (k % 2 == 1) acc = acc * base;
      k /= 2;
      if (k > 0) base = base * base;
    }
    return acc;
  }

  R trace() const {
    R t = ring_zero(exemplar());
    for (long i = 0; i < rows_; ++i) t = t + at(i, i);
    return t;
  }

  bool eq(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (!ring_eq(a_[i], o.a_[i])) return false;
    return true;
  }

  // Row-reduce in place; returns the pivot columns.  Pivots are chosen by
  // ring_pivot_score (lowest valuation first for p-adic entries).
  std::vector<long> rref() {
    std::vector<long> pivots;
    long r = 0;
    for (long c = 0; c < cols_ && r < rows_; ++c) {
      long best = -1;
      long best_score = LONG_MAX;
      for (long i = r; i < rows_; ++i) {
        long s = ring_pivot_score(at(i, c));
        if (s < best_score) {
          best_score = s;
          best = i;
        }
      }
      if (best < 0 || best_score == LONG_MAX) continue;
      swap_rows(r, best);
      R inv = ring_inv(at(r, c));
      for (long j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
      for (long i = 0; i < rows_; ++i) {
        if (i == r || ring_is_zero(at(i, c))) continue;
        R f = at(i, c);
        for (long j = c; j < cols_; ++j) at(i, j) = at(i, j) - f * at(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  long rank() const {
    Matrix m = *this;
    return static_cast<long>(m.rref().size());
  }

  R det() const {
    if (rows_ != cols_) throw std::runtime_error("determinant of non-square matrix");
    Matrix m = *this;
    R d = ring_one(exemplar());
    for (long c = 0; c < cols_; ++c) {
      long best = -1;
      long best_score = LONG_MAX;
      for (long i = c; i < rows_; ++i) {
        long s = ring_pivot_score(m.at(i, c));
        if (s < best_score) {
          best_score = s;
          best = i;
        }
      }
      if (best < 0 || best_score == LONG_MAX) return ring_zero(exemplar());
      if (best != c) {
        m.swap_rows(c, best);
        d = ring_zero(exemplar()) - d;
      }
      d = d * m.at(c, c);
      R inv = ring_inv(m.at(c, c));
      for (long i = c + 1; i < rows_; ++i) {
        if (ring_is_zero(m.at(i, c))) continue;
        R f = m.at(i, c) * inv;
        for (long j = c; j < cols_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(c, j);
      }
    }
    return d;
  }

  // Characteristic polynomial det(X*I - A) by the trace-of-powers recurrence;
  // divides by 1..n so R must contain the rationals.
  Poly<R> charpoly() const {
    if (rows_ != cols_) throw std::runtime_error("charpoly of non-square matrix");
    long n = rows_;
    std::vector<R> tr;
    tr.reserve(n);
    Matrix pw = *this;
    for (long i = 1; i <= n; ++i) {
      tr.push_back(pw.trace());
      if (i < n) pw = pw * *this;
    }
    std::vector<R> c(n + 1, ring_zero(exemplar()));
    c[n] = ring_one(exemplar());
    for (long k = 1; k <= n; ++k) {
      R ck = ring_zero(exemplar());
      for (long i = 1; i <= k; ++i) ck = ck + c[n - k + i] * tr[i - 1];
      // c_{n-k} = -(1/k) * sum_{i=1..k} c_{n-k+i} tr(A^i)
      c[n - k] = ring_zero(exemplar()) -
                 ck * ring_inv(ring_from_long<R>(k, exemplar()));
    }
    return Poly<R>(std::move(c));
  }

  // Right kernel basis (columns as vectors), from the rref of the matrix.
  std::vector<std::vector<R>> kernel() const {
    Matrix m = *this;
    std::vector<long> piv = m.rref();
    std::vector<char> is_piv(cols_, 0);
    for (long c : piv) is_piv[c] = 1;
    std::vector<std::vector<R>> out;
    for (long c = 0; c < cols_; ++c) {
      if (is_piv[c]) continue;
      std::vector<R> v(cols_, ring_zero(exemplar()));
      v[c] = ring_one(exemplar());
      for (size_t r = 0; r < piv.size(); ++r)
        v[piv[r]] = ring_zero(exemplar()) - m.at(static_cast<long>(r), c);
      out.push_back(std::move(v));
    }
    return out;
  }

private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::runtime_error("shape mismatch");
  }
  void swap_rows(long i, long j) {
    if (i == j) return;
    for (long c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }
  long rows_, cols_;
  std::vector<R> a_;
};

// Solve the square system A x = b by elimination; throws if A is singular at
// working precision.
template <class R>
std::vector<R> solve_square(const Matrix<R>& A, const std::vector<R>& b) {
  long n = A.rows();
  if (A.cols() != n || static_cast<long>(b.size()) != n)
    throw std::runtime_error("solve_square shape mismatch");
  Matrix<R> m(n, n + 1, A.exemplar());
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, n) = b[i];
  }
  std::vector<long> piv = m.rref();
  if (static_cast<long>(piv.size()) != n)
    throw std::runtime_error("singular system");
  for (long i = 0; i < n; ++i)
    if (piv[i] != i) throw std::runtime_error("singular system");
  std::vector<R> x;
  for (long i = 0; i < n; ++i) x.push_back(m.at(i, n));
  return x;
}

// Matrix-vector product.
template <class R>
std::vector<R> apply(const Matrix<R>& A, const std::vector<R>& v) {
  if (A.cols() != static_cast<long>(v.size()))
    throw std::runtime_error("apply shape mismatch");
  std::vector<R> out(A.rows(), ring_zero(A.exemplar()));
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j) out[i] = out[i] + A.at(i, j) * v[j];
  return out;
}

// Overdetermined solve: pick n independent rows of A (n = cols), solve the
// square subsystem, and check the remaining rows.  residual_ok reports whether
// every leftover row agreed at working precision.
template <class R>
struct OverdeterminedSolution {
  std::vector<R> x;
  bool residual_ok;
  long checked_rows;
};

template <class R>
OverdeterminedSolution<R> solve_overdetermined(const Matrix<R>& A,
                                               const std::vector<R>& b) {
  long n = A.cols();
  if (A.rows() < n || static_cast<long>(b.size()) != A.rows())
    throw std::runtime_error("overdetermined solve needs rows >= cols");
  // Greedily accumulate rows until the chosen block is invertible.
  std::vector<long> chosen;
  for (long r = 0; r < A.rows() && static_cast<long>(chosen.size()) < n; ++r) {
    chosen.push_back(r);
    Matrix<R> t(static_cast<long>(chosen.size()), n, A.exemplar());
    for (size_t i = 0; i < chosen.size(); ++i)
      for (long j = 0; j < n; ++j) t.at(static_cast<long>(i), j) = A.at(chosen[i], j);
    if (t.rank() < static_cast<long>(chosen.size())) chosen.pop_back();
  }
  if (static_cast<long>(chosen.size()) < n)
    throw std::runtime_error("coefficient matrix has deficient rank");
  Matrix<R> S(n, n, A.exemplar());
  std::vector<R> sb;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) S.at(i, j) = A.at(chosen[i], j);
    sb.push_back(b[chosen[i]]);
  }
  OverdeterminedSolution<R> sol{solve_square(S, sb), true, 0};
  for (long r = 0; r < A.rows(); ++r) {
    R acc = ring_zero(A.exemplar());
    for (long j = 0; j < n; ++j) acc = acc + A.at(r, j) * sol.x[j];
    if (!ring_eq(acc, b[r])) sol.residual_ok = false;
    ++sol.checked_rows;
  }
  return sol;
}

}  // namespace prs
