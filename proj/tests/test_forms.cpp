#include "doctest.h"

#include <fstream>

#include "prs/newform.hpp"
#include "prs/shellio.hpp"

using namespace prs;

namespace {

NewformData load_form(const std::string& path, long bound) {
  std::ifstream in(path);
  REQUIRE(in.good());
  Json doc = Json::parse(in);
  return newform_from_json(doc, bound);
}

// Affine points of y^2 + y = x^3 - x^2 - 10x - 20 over F_p, plus the point
// at infinity.
long curve_count(long p) {
  long count = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) {
      long lhs = (y * y + y) % p;
      long rhs = ((x * x * x - x * x - 10 * x - 20) % p + p * 20) % p;
      if (lhs == rhs % p) ++count;
    }
  return count;
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("level-eleven coefficients match point counts") {
  NewformData f = load_form("tests/data/f11.json", 30);
  CHECK(f.weight() == 2);
  CHECK(f.level() == 11);
  for (long p : {2L, 3L, 5L, 7L, 13L, 17L, 19L}) {
    long ap = p + 1 - curve_count(p);
    CHECK(f.prime_coeffs().at(p) == Cyclo(Rat(ap)));
  }
  CHECK(f.prime_coeffs().at(11) == Cyclo(Rat(1)));
}

TEST_CASE("coefficient recursion and multiplicativity") {
  NewformData f = load_form("tests/data/f11.json", 150);
  CHECK(f.coefficient(1) == Cyclo(Rat(1)));
  CHECK(f.coefficient(4) == Cyclo(Rat(2)));
  CHECK(f.coefficient(6) == Cyclo(Rat(2)));
  CHECK(f.coefficient(9) == Cyclo(Rat(-2)));
  CHECK(f.coefficient(12) == Cyclo(Rat(-2)));
  CHECK(f.coefficient(22) == Cyclo(Rat(-2)));
  CHECK(f.coefficient(121) == Cyclo(Rat(1)));  // a_11^2 at the bad prime
  CHECK_THROWS_AS(f.coefficient(101), std::runtime_error);

  NewformData s = f.star();
  CHECK(s.coefficient(6) == f.coefficient(6));
  CHECK(s.character() == f.character().inverse());
}

TEST_CASE("eigen property under a hecke operator") {
  NewformData f = load_form("tests/data/f11.json", 50);
  auto fq = f.q_expansion(40);
  auto chi = [&](long n) { return f.character()(n); };
  auto t2 = hecke_operator<Cyclo>(fq, 2, 2, chi);
  CHECK(t2.agrees_with(fq.truncated(20).scaled(Cyclo(Rat(-2)))));
}

TEST_CASE("weight-twelve discriminant series") {
  auto dq = delta_qexp(12);
  long expect[] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643,
                   -115920, 534612, -370944};
  for (long n = 1; n <= 12; ++n) CHECK(dq.coeff(n) == Rat(expect[n]));
  CHECK(dq.coeff(0) == 0);

  // independent route: q prod (1 - q^n)^24 by direct multiplication
  long prec = 30;
  QExpansion<Rat> prod(prec, Rat(0));
  prod.set_coeff(1, Rat(1));
  for (long n = 1; n <= prec; ++n) {
    QExpansion<Rat> fac(prec, Rat(0));
    fac.set_coeff(0, Rat(1));
    if (n <= prec) fac.set_coeff(n, Rat(-1));
    for (int e = 0; e < 24; ++e) prod = prod * fac;
  }
  CHECK(prod.agrees_with(delta_qexp(prec)));
}

TEST_CASE("eisenstein series of level one") {
  auto e4 = eisenstein_series_qexp(4, 10);
  CHECK(e4.coeff(0) == Rat(1, 240));
  CHECK(e4.coeff(1) == 1);
  CHECK(e4.coeff(2) == 9);
  CHECK(e4.coeff(3) == 28);
  CHECK(e4.coeff(4) == 73);
  CHECK(e4.coeff(6) == 252);
  auto e12 = eisenstein_series_qexp(12, 2);
  CHECK(e12.coeff(0) == Rat(691, 65520));
  CHECK(e12.coeff(2) == 2049);
}

TEST_CASE("divisor-sum eigendata matches the sieve route") {
  NewformData se = sigma_eigendata(4, 60);
  auto e4 = eisenstein_series_qexp(4, 30);
  for (long n = 1; n <= 30; ++n) CHECK(se.coefficient(n) == Cyclo(e4.coeff(n)));
  CHECK(se.coefficient(4) == Cyclo(Rat(73)));
  CHECK(se.coefficient(6) == Cyclo(Rat(252)));
}

TEST_CASE("hecke roots at an ordinary prime") {
  NewformData f = load_form("tests/data/f11.json", 30);
  PadicEmbedding emb(3, 20);
  HeckeRoots r = hecke_roots(f, emb);
  CHECK((r.alpha + r.beta).agrees_with(PadicScalar::from_int(3, -1, 20)));
  CHECK((r.alpha * r.beta).agrees_with(PadicScalar::from_int(3, 3, 20)));
  CHECK(r.alpha.valuation() == 0);
  CHECK(r.beta.valuation() == 1);
  CHECK(r.alpha.residue(1) == 2);
}

TEST_CASE("hecke roots for the discriminant form") {
  NewformData d = load_form("tests/data/delta.json", 30);
  PadicEmbedding emb(11, 30);
  HeckeRoots r = hecke_roots(d, emb);
  CHECK((r.alpha + r.beta).agrees_with(PadicScalar::from_int(11, 534612, 30)));
  CHECK((r.alpha * r.beta).agrees_with(
      PadicScalar::from_int(11, int_pow(Int(11), 11), 30)));
  CHECK(r.alpha.valuation() == 0);
  CHECK(r.beta.valuation() == 11);
  CHECK(r.alpha.residue(1) == 1);
}

TEST_CASE("stabilisation is a u-eigenvector") {
  NewformData f = load_form("tests/data/f11.json", 70);
  PadicEmbedding emb(3, 20);
  HeckeRoots r = hecke_roots(f, emb);
  auto fa = p_stabilise(f, emb, r.beta, 60);
  CHECK(u_operator(fa, 3).agrees_with(fa.truncated(20).scaled(r.alpha)));

  NewformData d = load_form("tests/data/delta.json", 50);
  PadicEmbedding emb11(11, 20);
  HeckeRoots rd = hecke_roots(d, emb11);
  auto da = p_stabilise(d, emb11, rd.beta, 44);
  CHECK(u_operator(da, 11).agrees_with(da.truncated(4).scaled(rd.alpha)));
}

TEST_CASE("embedding a cyclotomic expansion") {
  NewformData f = load_form("tests/data/f11.json", 20);
  PadicEmbedding emb(3, 15);
  auto e = embed_qexp(f.q_expansion(10), emb);
  CHECK(e.coeff(2).agrees_with(PadicScalar::from_int(3, -2, 15)));
  CHECK(e.coeff(9).agrees_with(PadicScalar::from_int(3, -2, 15)));
}

}  // TEST_SUITE
