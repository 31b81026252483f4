#include "prs/ordinary.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <string>

namespace prs {

namespace {

template <class R>
long min_basis_prec(const std::vector<QExpansion<R>>& basis) {
  long m = LONG_MAX;
  for (const auto& b : basis) m = std::min(m, b.prec());
  return m;
}

}  // namespace

template <class R>
BasisExpansion<R> expand_in_basis(const std::vector<QExpansion<R>>& basis,
                                  const QExpansion<R>& f) {
  if (basis.empty()) throw std::runtime_error("expansion against an empty basis");
  long d = static_cast<long>(basis.size());
  long rows = std::min(min_basis_prec(basis), f.prec()) + 1;
  if (rows < d) throw std::runtime_error("not enough coefficient rows for the basis");
  Matrix<R> A(rows, d, f.exemplar());
  std::vector<R> rhs;
  rhs.reserve(rows);
  for (long n = 0; n < rows; ++n) {
    for (long j = 0; j < d; ++j) A.at(n, j) = basis[j].coeff(n);
    rhs.push_back(f.coeff(n));
  }
  OverdeterminedSolution<R> sol = solve_overdetermined(A, rhs);
  BasisExpansion<R> out{sol.x, true, LONG_MAX};
  for (long n = 0; n < rows; ++n) {
    R acc = ring_zero(f.exemplar());
    for (long j = 0; j < d; ++j) acc = acc + A.at(n, j) * sol.x[j];
    if (!ring_eq(acc, rhs[n])) {
      out.exact = false;
      long sc = ring_pivot_score(acc - rhs[n]);
      out.residual_floor = std::min(out.residual_floor, sc);
    }
  }
  return out;
}

template <class R>
Matrix<R> fit_operator(const std::vector<QExpansion<R>>& basis,
                       const std::vector<QExpansion<R>>& images) {
  long d = static_cast<long>(basis.size());
  if (static_cast<long>(images.size()) != d)
    throw std::runtime_error("operator image count does not match the basis");
  Matrix<R> M(d, d, basis[0].exemplar());
  for (long j = 0; j < d; ++j) {
    BasisExpansion<R> e = expand_in_basis(basis, images[j]);
    if (!e.exact)
      throw std::runtime_error("operator image leaves the span at working precision");
    for (long i = 0; i < d; ++i) M.at(i, j) = e.coords[i];
  }
  return M;
}

template <class R>
Matrix<R> build_up_matrix(const OrdinarySpace<R>& S) {
  long sturm = sturm_bound(S.weight, S.level);
  long avail = min_basis_prec(S.basis) / S.p;
  if (avail < sturm)
    throw std::runtime_error("basis precision below p times the sturm bound");
  std::vector<QExpansion<R>> trunc, images;
  for (const auto& b : S.basis) {
    trunc.push_back(b.truncated(sturm));
    images.push_back(u_operator(b, S.p).truncated(sturm));
  }
  return fit_operator(trunc, images);
}

template <class R>
Matrix<R> build_hecke_matrix(const OrdinarySpace<R>& S, long l,
                             const std::function<R(long)>& chi) {
  long sturm = sturm_bound(S.weight, S.level);
  long avail = min_basis_prec(S.basis) / l;
  if (avail < sturm)
    throw std::runtime_error("basis precision below l times the sturm bound");
  std::vector<QExpansion<R>> trunc, images;
  for (const auto& b : S.basis) {
    trunc.push_back(b.truncated(sturm));
    images.push_back(hecke_operator(b, l, S.weight, chi).truncated(sturm));
  }
  return fit_operator(trunc, images);
}

Int unit_root_exponent(long p, long dim) {
  Int L = 1;
  Int q = 1;
  for (long f = 1; f <= dim; ++f) {
    q *= p;
    L = lcm(L, Int(q - 1));
  }
  return L;
}

template <class R>
Matrix<R> ordinary_projector(const Matrix<R>& up, long p, long budget) {
  Int L = unit_root_exponent(p, up.rows());
  Matrix<R> prev = up.pow(L);
  for (long j = 1; j <= budget; ++j) {
    Matrix<R> cur = prev.pow(Int(p));
    if (cur.eq(prev) && (cur * cur).eq(cur)) return cur;
    prev = cur;
  }
  throw std::runtime_error("ordinary projector did not stabilise within budget");
}

long newton_unit_count(const Matrix<PadicScalar>& up) {
  Poly<PadicScalar> cp = up.charpoly();
  long n = up.rows();
  long first_unit = n;
  for (long i = 0; i < n; ++i) {
    const PadicScalar& c = cp.coeff(i);
    if (c.known_nonzero() && c.valuation() == 0) {
      first_unit = i;
      break;
    }
  }
  return n - first_unit;
}

template <class R>
std::vector<R> dual_eigen_functional(const Matrix<R>& up, const R& alpha,
                                     const std::vector<R>& target) {
  long n = up.rows();
  Matrix<R> shifted =
      up.transpose() - Matrix<R>::identity(n, ring_one(alpha)).scaled(alpha);
  std::vector<std::vector<R>> ker = shifted.kernel();
  if (ker.size() != 1)
    throw std::runtime_error("transpose eigenspace has dimension " +
                             std::to_string(ker.size()) + ", want 1");
  std::vector<R> row = ker[0];
  R dot = ring_zero(alpha);
  for (long i = 0; i < n; ++i) dot = dot + row[i] * target[i];
  if (ring_is_zero(dot))
    throw std::runtime_error("functional annihilates the normalization target");
  R s = ring_inv(dot);
  for (auto& x : row) x = x * s;
  return row;
}

EigenFunctional dual_functional(const OrdinarySpace<PadicScalar>& S,
                                const Matrix<PadicScalar>& up,
                                const std::map<long, Matrix<PadicScalar>>& hecke,
                                const NewformData& target, bool conjugated,
                                const PadicEmbedding& emb) {
  NewformData tf = conjugated ? target.star() : target;
  HeckeRoots roots = hecke_roots(tf, emb);
  QExpansion<PadicScalar> stab =
      p_stabilise(tf, emb, roots.beta, min_basis_prec(S.basis));
  BasisExpansion<PadicScalar> coords = expand_in_basis(S.basis, stab);
  if (!coords.exact)
    throw std::runtime_error("target stabilisation is not in the basis span");
  std::vector<PadicScalar> row =
      dual_eigen_functional(up, roots.alpha, coords.coords);
  EigenFunctional out{row, roots.alpha, roots.beta, coords.coords, {}};
  for (const auto& [l, Tl] : hecke) {
    PadicScalar al = emb.embed(tf.coefficient(l));
    std::vector<PadicScalar> lhs = prs::apply(Tl.transpose(), row);
    for (size_t j = 0; j < row.size(); ++j)
      if (!ring_eq(lhs[j], al * row[j]))
        throw std::runtime_error(
            "functional is not a transpose eigenvector at l = " +
            std::to_string(l));
    out.checked_eigenvalues[l] = al;
  }
  return out;
}

template <class R>
OrdinarySpace<R> synthesize_up_stable_space(
    long p, long weight, long level, const Matrix<R>& up,
    const std::function<std::vector<R>(long)>& seed_row, long prec) {
  long d = up.rows();
  Matrix<R> upt = up.transpose();
  std::vector<std::vector<R>> rows(prec + 1);
  rows[0] = seed_row(0);
  if (static_cast<long>(rows[0].size()) != d)
    throw std::runtime_error("seed row width does not match the matrix");
  std::vector<R> fixed = prs::apply(upt, rows[0]);
  for (long j = 0; j < d; ++j)
    if (!ring_eq(fixed[j], rows[0][j]))
      throw std::runtime_error("constant seed row must be fixed by the operator");
  for (long n = 1; n <= prec; ++n) {
    if (n % p != 0) {
      rows[n] = seed_row(n);
      if (static_cast<long>(rows[n].size()) != d)
        throw std::runtime_error("seed row width does not match the matrix");
    } else {
      rows[n] = prs::apply(upt, rows[n / p]);
    }
  }
  OrdinarySpace<R> S{p, weight, level, DirichletCharacter(level), {}};
  for (long j = 0; j < d; ++j) {
    QExpansion<R> b(prec, up.exemplar());
    for (long n = 0; n <= prec; ++n) b.set_coeff(n, rows[n][j]);
    S.basis.push_back(std::move(b));
  }
  return S;
}

template <class R>
R product_coefficient(const QExpansion<R>& a, const QExpansion<R>& b, long m) {
  if (m > a.prec() + b.prec())
    throw std::runtime_error("product coefficient beyond precision");
  R acc = ring_zero(a.exemplar());
  long lo = std::max(0L, m - b.prec());
  long hi = std::min(m, a.prec());
  for (long i = lo; i <= hi; ++i) {
    if (ring_is_zero(a.coeff(i))) continue;
    acc = acc + a.coeff(i) * b.coeff(m - i);
  }
  return acc;
}

template <class R>
QExpansion<R> up_product_rows(const QExpansion<R>& a, const QExpansion<R>& b,
                              long p, long iters, long rows) {
  long pw = 1;
  for (long i = 0; i < iters; ++i) {
    if (pw > (LONG_MAX - 1) / p) throw std::runtime_error("U_p stride overflow");
    pw *= p;
  }
  QExpansion<R> out(rows, a.exemplar());
  for (long n = 0; n <= rows; ++n)
    out.set_coeff(n, product_coefficient(a, b, n * pw));
  return out;
}

PadicScalar pair_after_projection(const OrdinarySpace<PadicScalar>& S,
                                  const Matrix<PadicScalar>& proj,
                                  const EigenFunctional& lam, long iters,
                                  const QExpansion<PadicScalar>& rows) {
  long d = proj.rows();
  // Expand against a column basis of the projector image: the smaller span
  // keeps the row count needed for full rank independent of p.
  std::vector<long> picks;
  {
    for (long c = 0; c < d; ++c) {
      Matrix<PadicScalar> trial(d, static_cast<long>(picks.size()) + 1,
                                rows.exemplar());
      for (size_t j = 0; j < picks.size(); ++j)
        for (long i = 0; i < d; ++i)
          trial.at(i, static_cast<long>(j)) = proj.at(i, picks[j]);
      for (long i = 0; i < d; ++i)
        trial.at(i, static_cast<long>(picks.size())) = proj.at(i, c);
      if (trial.rank() == static_cast<long>(picks.size()) + 1) picks.push_back(c);
    }
  }
  if (picks.empty()) return PadicScalar::zero_at(rows.exemplar().p(), rows.exemplar().abs_prec());
  std::vector<QExpansion<PadicScalar>> pb;
  for (long c : picks) {
    QExpansion<PadicScalar> q(rows.prec(), rows.exemplar());
    for (long n = 0; n <= rows.prec(); ++n) {
      PadicScalar v = ring_zero(rows.exemplar());
      for (long j = 0; j < d; ++j) v = v + proj.at(j, c) * S.basis[j].coeff(n);
      q.set_coeff(n, v);
    }
    pb.push_back(std::move(q));
  }
  BasisExpansion<PadicScalar> e = expand_in_basis(pb, rows);
  PadicScalar acc = ring_zero(rows.exemplar());
  for (size_t i = 0; i < picks.size(); ++i) {
    PadicScalar lam_p = ring_zero(rows.exemplar());
    for (long j = 0; j < d; ++j) lam_p = lam_p + lam.row[j] * proj.at(j, picks[i]);
    acc = acc + e.coords[i] * lam_p;
  }
  acc = acc * lam.alpha.pow(Int(-iters));
  // The neglected non-ordinary tail caps the usable precision.
  if (!e.exact)
    acc = acc + PadicScalar::zero_at(acc.p(), e.residual_floor);
  return acc;
}

namespace {

std::map<long, Matrix<PadicScalar>> working_hecke(
    const OrdinarySpace<PadicScalar>& S, const NewformData& f,
    const PadicEmbedding& emb) {
  std::map<long, Matrix<PadicScalar>> out;
  long sturm = sturm_bound(S.weight, S.level);
  long avail = min_basis_prec(S.basis);
  std::function<PadicScalar(long)> chi = [&S, &emb](long n) {
    return emb.embed(S.character(n));
  };
  for (long l : {2L, 3L, 5L, 7L}) {
    if (S.level % l == 0 || f.prime_coeffs().count(l) == 0) continue;
    if (avail / l < sturm) continue;
    try {
      out.emplace(l, build_hecke_matrix<PadicScalar>(S, l, chi));
    } catch (const std::runtime_error&) {
      // span not stable under this operator; the eigen checks run on the rest
    }
  }
  return out;
}

// Component of chi at the prime q, trivial when q does not divide the modulus.
DirichletCharacter local_component(const DirichletCharacter& chi, long q) {
  long part = 1;
  long m = chi.modulus();
  while (m % q == 0) {
    part *= q;
    m /= q;
  }
  if (part == 1) return DirichletCharacter(1);
  return chi.at_factor(part);
}

// theta^t of the [pN]-depletion of the eigen-expansion of g, optionally
// twisted, embedded coefficient by coefficient to avoid a cyclotomic copy of
// the full series.  Coefficients are assembled multiplicatively from embedded
// prime-power values via a smallest-prime-factor table.
QExpansion<PadicScalar> depleted_theta_factor(const NewformData& g, long p,
                                              long N, long t,
                                              const DirichletCharacter* twist,
                                              const PadicEmbedding& emb,
                                              long qprec) {
  std::vector<long> bad;
  for (const auto& [q, e] : factorize(p * N)) {
    (void)e;
    bad.push_back(q);
  }
  std::vector<int> spf(qprec + 1, 0);
  for (long i = 2; i <= qprec; ++i) {
    if (spf[i] != 0) continue;
    for (long j = i; j <= qprec; j += i)
      if (spf[j] == 0) spf[j] = static_cast<int>(i);
  }
  std::map<long, PadicScalar> ppow;
  std::vector<PadicScalar> tw;
  if (twist) {
    long M = twist->modulus();
    for (long r = 0; r < M; ++r) tw.push_back(emb.embed((*twist)(r)));
  }
  PadicScalar one = emb.embed(Rat(1));
  QExpansion<PadicScalar> out(qprec, PadicScalar::zero_at(p, emb.cap()));
  for (long n = 1; n <= qprec; ++n) {
    bool dead = false;
    for (long q : bad)
      if (n % q == 0) {
        dead = true;
        break;
      }
    if (dead) continue;
    PadicScalar c = one;
    long m = n;
    while (m > 1) {
      long l = spf[m];
      long key = 1;
      while (m % l == 0) {
        m /= l;
        key *= l;
      }
      auto it = ppow.find(key);
      if (it == ppow.end())
        it = ppow.emplace(key, emb.embed(g.coefficient(key))).first;
      c = c * it->second;
    }
    if (twist) c = c * tw[n % twist->modulus()];
    if (t > 0)
      c = c * PadicScalar::from_int(p, int_pow(Int(n), t), emb.cap());
    out.set_coeff(n, c);
  }
  return out;
}

PadicScalar point_value(const PointSpec& pt, const OrdinarySpace<PadicScalar>& S,
                        const PrecBudgets& budgets,
                        const QExpansion<PadicScalar>* perturb, bool dual) {
  long k = pt.f.weight();
  long l = pt.g.weight();
  if (pt.t < 0 || pt.t > k - l - 1)
    throw std::runtime_error("t outside the critical range");
  long m = k - l - 2 * pt.t;
  PadicEmbedding emb(pt.p, budgets.pprec);
  Matrix<PadicScalar> up = build_up_matrix(S);
  std::map<long, Matrix<PadicScalar>> hecke = working_hecke(S, pt.f, emb);
  Matrix<PadicScalar> proj = ordinary_projector(up, pt.p, budgets.pprec + 5);
  EigenFunctional lam = dual_functional(S, up, hecke, pt.f, !dual, emb);

  long qprec = budgets.qrows;
  for (long i = 0; i < budgets.up_iters; ++i) {
    if (qprec > (LONG_MAX - 1) / pt.p) throw std::runtime_error("q-precision overflow");
    qprec *= pt.p;
  }
  DirichletCharacter eps_inv = pt.eps.inverse();
  QExpansion<PadicScalar> left = depleted_theta_factor(
      pt.g, pt.p, pt.N, pt.t, dual ? nullptr : &eps_inv, emb, qprec);
  QExpansion<PadicScalar> right =
      dual ? embed_qexp(eis_E(m, pt.N, pt.p, qprec), emb)
           : embed_qexp(
                 eis_F(m,
                       local_component(pt.f.character(), pt.p)
                           .times(local_component(pt.eps, pt.p).inverse()),
                       pt.N, pt.p, qprec),
                 emb);
  if (perturb) {
    long upto = std::min(right.prec(), perturb->prec());
    for (long n = 0; n <= upto; ++n)
      if (!ring_is_zero(perturb->coeff(n)))
        right.set_coeff(n, right.coeff(n) + perturb->coeff(n));
  }
  QExpansion<PadicScalar> rows =
      up_product_rows(left, right, pt.p, budgets.up_iters, budgets.qrows);
  return pair_after_projection(S, proj, lam, budgets.up_iters, rows);
}

}  // namespace

PadicScalar padic_L_at(const PointSpec& pt, const OrdinarySpace<PadicScalar>& S,
                       const PrecBudgets& budgets,
                       const QExpansion<PadicScalar>* perturb) {
  return point_value(pt, S, budgets, perturb, false);
}

PadicScalar dual_padic_L_at(const PointSpec& pt,
                            const OrdinarySpace<PadicScalar>& S,
                            const PrecBudgets& budgets,
                            const QExpansion<PadicScalar>* perturb) {
  return point_value(pt, S, budgets, perturb, true);
}

template <class R>
InterpRhs<R> interp_rhs_algebraic(const CrystallinePoint<R>& c,
                                  const InterpContext<R>& ctx) {
  InterpRhs<R> out{ring_one(c.alpha), ring_one(c.alpha), ring_one(c.alpha),
                   ring_one(c.alpha)};
  out.p_euler_block = interpolation_ratio(c);
  out.adjoint = adjoint_factor(ctx.a, ctx.p_part_trivial, ctx.psi_of_p,
                               ctx.gauss, c.alpha, c.beta, c.pp, c.k);
  R base = ring_pow(c.pp, c.t + 1) * ring_inv(c.alpha);
  out.stab = ring_pow(base, ctx.b);
  out.algebraic = ctx.front * ctx.al_pseudo * out.stab * out.p_euler_block *
                  ring_inv(out.adjoint);
  return out;
}

#define PRS_INSTANTIATE_ORDINARY(R)                                             \
  template BasisExpansion<R> expand_in_basis<R>(                                \
      const std::vector<QExpansion<R>>&, const QExpansion<R>&);                 \
  template Matrix<R> fit_operator<R>(const std::vector<QExpansion<R>>&,         \
                                     const std::vector<QExpansion<R>>&);        \
  template Matrix<R> build_up_matrix<R>(const OrdinarySpace<R>&);               \
  template Matrix<R> build_hecke_matrix<R>(const OrdinarySpace<R>&, long,       \
                                           const std::function<R(long)>&);      \
  template Matrix<R> ordinary_projector<R>(const Matrix<R>&, long, long);       \
  template std::vector<R> dual_eigen_functional<R>(const Matrix<R>&, const R&,  \
                                                   const std::vector<R>&);      \
  template OrdinarySpace<R> synthesize_up_stable_space<R>(                      \
      long, long, long, const Matrix<R>&,                                       \
      const std::function<std::vector<R>(long)>&, long);                        \
  template R product_coefficient<R>(const QExpansion<R>&, const QExpansion<R>&, \
                                    long);                                      \
  template QExpansion<R> up_product_rows<R>(const QExpansion<R>&,               \
                                            const QExpansion<R>&, long, long,   \
                                            long);                              \
  template InterpRhs<R> interp_rhs_algebraic<R>(const CrystallinePoint<R>&,     \
                                                const InterpContext<R>&);

PRS_INSTANTIATE_ORDINARY(Rat)
PRS_INSTANTIATE_ORDINARY(Cyclo)
PRS_INSTANTIATE_ORDINARY(PadicScalar)

#undef PRS_INSTANTIATE_ORDINARY

}  // namespace prs
