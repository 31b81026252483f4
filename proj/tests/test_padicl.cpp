#include "doctest.h"

#include <fstream>

#include "prs/oldspace.hpp"
#include "prs/ordinary.hpp"
#include "prs/shellio.hpp"

using namespace prs;

namespace {

PadicScalar pad(long p, long n, long cap = 20) {
  return PadicScalar::from_int(p, n, cap);
}

NewformData load_form(const std::string& path, long bound) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return newform_from_json(Json::parse(in), bound);
}

// U_p matrix with one unit eigenvalue and prime-to-p rows fed by the
// eigendata of f, so the first basis vector is exactly the stabilisation.
OrdinarySpace<PadicScalar> tiny_space(long p, long cap, const NewformData& f,
                                      const Matrix<PadicScalar>& up, long prec) {
  PadicEmbedding emb(p, cap);
  PadicScalar z = PadicScalar::zero_at(p, cap);
  // the extra coordinates get unit markers at small prime-to-p indices so the
  // basis separates within the determining rows; column 0 stays the
  // stabilised eigenform
  std::function<std::vector<PadicScalar>(long)> seed =
      [&, z, p](long n) -> std::vector<PadicScalar> {
    std::vector<PadicScalar> row(up.rows(), z);
    if (n > 0) row[0] = emb.embed(f.coefficient(n));
    for (long j = 1; j < up.rows(); ++j)
      if (n == 2 * j) row[j] = PadicScalar::from_int(p, 1, cap);
    return row;
  };
  return synthesize_up_stable_space<PadicScalar>(p, f.weight(), p, up, seed, prec);
}

NewformData synthetic_weight8(long prime_bound) {
  std::map<long, Cyclo> ap;
  for (long l = 2; l <= prime_bound; ++l) {
    if (!is_prime(l)) continue;
    ap[l] = Cyclo(Rat((l % 7) - 3));
  }
  // unit root alpha = 2 of X^2 - a_3 X + 3^7, exactly
  ap[3] = Cyclo(Rat(2191, 2));
  return NewformData(8, 1, DirichletCharacter(1), ap);
}

}  // namespace

TEST_SUITE("padicl") {

TEST_CASE("unit root exponents") {
  CHECK(unit_root_exponent(3, 1) == 2);
  CHECK(unit_root_exponent(3, 2) == 8);
  CHECK(unit_root_exponent(3, 4) == 1040);
  CHECK(unit_root_exponent(5, 2) == 24);
}

TEST_CASE("ordinary projector on a hand triangular matrix") {
  long p = 3, prec = 20;
  Matrix<PadicScalar> up(2, 2, pad(p, 0, prec));
  up.at(0, 0) = pad(p, 1, prec);
  up.at(0, 1) = pad(p, 1, prec);
  up.at(1, 1) = pad(p, 3, prec);
  Matrix<PadicScalar> e = ordinary_projector(up, p, prec + 5);
  CHECK((e * e).eq(e));
  CHECK((e * up).eq(up * e));
  CHECK(e.trace().agrees_with(pad(p, 1, prec)));
  CHECK(e.at(0, 0).agrees_with(pad(p, 1, prec)));
  CHECK(e.at(1, 0).agrees_with(pad(p, 0, prec)));
  CHECK(e.at(0, 1).agrees_with(PadicScalar::from_rat(p, Rat(-1, 2), prec)));
  // the unit eigenvector is fixed
  std::vector<PadicScalar> v{pad(p, 1, prec), pad(p, 0, prec)};
  auto ev = prs::apply(e, v);
  CHECK(ev[0].agrees_with(v[0]));
  CHECK(ev[1].agrees_with(v[1]));
}

TEST_CASE("newton unit counts") {
  long p = 3, prec = 20;
  auto diag = [&](std::vector<long> d) {
    Matrix<PadicScalar> m(d.size(), d.size(), pad(p, 0, prec));
    for (size_t i = 0; i < d.size(); ++i) m.at(i, i) = pad(p, d[i], prec);
    return m;
  };
  CHECK(newton_unit_count(diag({1, 3, 9})) == 1);
  CHECK(newton_unit_count(diag({1, 1})) == 2);
  CHECK(newton_unit_count(diag({3, 9})) == 0);
  Matrix<PadicScalar> m(2, 2, pad(p, 0, prec));
  m.at(0, 0) = pad(p, 2, prec);
  m.at(0, 1) = pad(p, 1, prec);
  m.at(1, 1) = pad(p, 3, prec);
  CHECK(newton_unit_count(m) == 1);
}

TEST_CASE("dual eigen functional") {
  long p = 3, prec = 20;
  Matrix<PadicScalar> up(2, 2, pad(p, 0, prec));
  up.at(0, 0) = pad(p, 2, prec);
  up.at(0, 1) = pad(p, 1, prec);
  up.at(1, 1) = pad(p, 3, prec);
  std::vector<PadicScalar> target{pad(p, 1, prec), pad(p, 0, prec)};
  auto row = dual_eigen_functional(up, pad(p, 2, prec), target);
  CHECK(row[0].agrees_with(pad(p, 1, prec)));
  CHECK(row[1].agrees_with(pad(p, -1, prec)));
}

TEST_CASE("basis expansion reports the residual valuation") {
  long p = 3, prec = 20;
  QExpansion<PadicScalar> b0(2, pad(p, 0, prec));
  b0.set_coeff(0, pad(p, 1, prec));
  QExpansion<PadicScalar> b1(2, pad(p, 0, prec));
  b1.set_coeff(1, pad(p, 1, prec));
  std::vector<QExpansion<PadicScalar>> basis{b0, b1};

  QExpansion<PadicScalar> f(2, pad(p, 0, prec));
  f.set_coeff(0, pad(p, 1, prec));
  f.set_coeff(1, pad(p, 1, prec));
  f.set_coeff(2, pad(p, 2187, prec));  // 3^7 off the span
  auto ex = expand_in_basis(basis, f);
  CHECK(!ex.exact);
  CHECK(ex.residual_floor == 7);

  f.set_coeff(2, pad(p, 0, prec));
  auto ok = expand_in_basis(basis, f);
  CHECK(ok.exact);
  CHECK(ok.residual_floor == LONG_MAX);
}

TEST_CASE("synthesised space reproduces its matrix") {
  long p = 3, cap = 20;
  Matrix<PadicScalar> m(2, 2, pad(p, 0, cap));
  m.at(0, 0) = pad(p, 2, cap);
  m.at(0, 1) = pad(p, 1, cap);
  m.at(1, 1) = pad(p, 9, cap);
  PadicScalar z = PadicScalar::zero_at(p, cap);
  std::function<std::vector<PadicScalar>(long)> seed =
      [&, z](long n) -> std::vector<PadicScalar> {
    std::vector<PadicScalar> row(2, z);
    if (n > 0) {
      row[0] = pad(p, n + 1, cap);
      row[1] = pad(p, 2 * n + 1, cap);
    }
    return row;
  };
  auto S = synthesize_up_stable_space<PadicScalar>(p, 8, p, m, seed, 30);
  REQUIRE(S.basis.size() == 2);
  CHECK(S.basis[0].prec() == 30);
  CHECK(build_up_matrix(S).eq(m));
}

TEST_CASE("depleted involution series against the oldspace matrix route") {
  struct Inst {
    const char* path;
    long p;
    long l;
  };
  for (Inst inst : {Inst{"tests/data/f11.json", 3, 2},
                    Inst{"tests/data/delta.json", 11, 12}}) {
    NewformData f = load_form(inst.path, 60);
    Rat ap = f.prime_coeffs().at(inst.p).rational_part();
    LocalEigenData<Rat> h{inst.l, ap, Rat(1), Rat(inst.p)};
    Rat e = local_ec(h);
    std::vector<Rat> dep{Rat(1), -ap, e};

    for (long c = 0; c <= 3; ++c) {
      Poly<Rat> series = depleted_w_series(h, c, 8);
      CHECK(series.eq(keylemma_closed_form(h, h, Rat(1), c, 8)));

      // independent route: involution scalars against the actual prime-power
      // coefficients of the form
      Matrix<Rat> w = oldspace_w_matrix(h, std::max(c, 2L));
      for (long n = 0; n < 8; ++n) {
        Rat acc(0);
        for (long j = 0; j < 3; ++j) {
          long src = n - c + j;
          if (src < 0) continue;
          Rat wsc = (c >= 2 && c - j >= 0) ? w.at(c - j, j) : w_scalar(h, c, j);
          long ppow = 1;
          for (long i = 0; i < src; ++i) ppow *= inst.p;
          acc += dep[j] * wsc * f.coefficient(ppow).rational_part();
        }
        CHECK(series.coeff(n) == acc);
      }
    }
  }
}

TEST_CASE("synthetic pipeline value is blind to multiples of the dilation") {
  long p = 3, cap = 30;
  PadicScalar z = pad(p, 0, cap);
  Matrix<PadicScalar> m(3, 3, z);
  m.at(0, 0) = pad(p, 2, cap);
  m.at(0, 1) = pad(p, 1, cap);
  m.at(0, 2) = pad(p, 2, cap);
  m.at(1, 1) = pad(p, 9, cap);
  m.at(1, 2) = pad(p, 1, cap);
  m.at(2, 2) = pad(p, 27, cap);

  NewformData f = synthetic_weight8(60);
  auto S = tiny_space(p, cap, f, m, 60);
  CHECK(build_up_matrix(S).eq(m));

  PointSpec pt{f, sigma_eigendata(4, 60), p, 1, 1, DirichletCharacter(1)};
  PrecBudgets bud{6, cap, 2};
  PadicScalar base = padic_L_at(pt, S, bud);
  CHECK(base.known_nonzero());

  // junk supported on exponents divisible by p dies under the depletion
  QExpansion<PadicScalar> junk(18, z);
  for (long n = 0; n <= 18; ++n) junk.set_coeff(n, pad(p, (n % 5) - 2, cap));
  auto perturb = v_operator(junk, p);
  PadicScalar shifted = padic_L_at(pt, S, bud, &perturb);
  CHECK(shifted.str() == base.str());

  PadicScalar dual = dual_padic_L_at(pt, S, bud);
  PadicScalar dual_shifted = dual_padic_L_at(pt, S, bud, &perturb);
  CHECK(dual_shifted.str() == dual.str());
}

TEST_CASE("synthetic pipeline value survives budget increases") {
  long p = 3, cap = 30;
  PadicScalar z = pad(p, 0, cap);
  Matrix<PadicScalar> m(3, 3, z);
  m.at(0, 0) = pad(p, 2, cap);
  m.at(0, 1) = pad(p, 1, cap);
  m.at(0, 2) = pad(p, 2, cap);
  m.at(1, 1) = pad(p, 9, cap);
  m.at(1, 2) = pad(p, 1, cap);
  m.at(2, 2) = pad(p, 27, cap);

  NewformData f = synthetic_weight8(200);
  auto S = tiny_space(p, cap, f, m, 60);
  PointSpec pt{f, sigma_eigendata(4, 200), p, 1, 1, DirichletCharacter(1)};

  PadicScalar v1 = padic_L_at(pt, S, PrecBudgets{6, cap, 2});
  PadicScalar v2 = padic_L_at(pt, S, PrecBudgets{12, cap, 2});
  PadicScalar v3 = padic_L_at(pt, S, PrecBudgets{6, cap, 3});
  CHECK(v2.agrees_with(v1));
  CHECK(v3.agrees_with(v1));
  CHECK(v2.abs_prec() >= v1.abs_prec());
  CHECK(v1.known_nonzero());
  CHECK(v1.valuation() == v2.valuation());
}

}  // TEST_SUITE
