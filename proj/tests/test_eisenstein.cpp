#include "doctest.h"

#include "prs/eisenstein.hpp"

using namespace prs;

TEST_SUITE("eisenstein") {

TEST_CASE("constant term") {
  KatoEisenstein e(2, Rat(1, 3), Rat(1, 4));
  CHECK(e.constant_term() == Rat(1, 18));
  // integral parameter falls back to the (0,1] representative
  KatoEisenstein z(4, Rat(0), Rat(1, 3));
  CHECK(z.constant_term() == -Rat(1, 2) * bernoulli_number(4));
}

TEST_CASE("slash action composes") {
  KatoEisenstein e(3, Rat(1, 5), Rat(2, 7));
  KatoEisenstein lhs = e.slash(1, 1, 0, 1).slash(1, 0, 1, 1);
  KatoEisenstein rhs = e.slash(2, 1, 1, 1);
  CHECK(lhs.alpha() == rhs.alpha());
  CHECK(lhs.beta() == rhs.beta());
  CHECK(lhs.weight() == 3);
}

TEST_CASE("parameter negation flips odd weights") {
  KatoEisenstein pos(3, Rat(1, 4), Rat(1, 3));
  KatoEisenstein neg(3, Rat(-1, 4), Rat(-1, 3));
  auto a = pos.render_after_dilation(4, 24);
  auto b = neg.render_after_dilation(4, 24);
  CHECK((a + b).is_zero());
}

TEST_CASE("distribution relation across one level of dilation") {
  // p = 3, r = 1: the three lifts of c/3 to ninths assemble the coarser
  // series, scaled by 3^{1-m}.
  long m = 2, p = 3, N = 4, prec = 30;
  for (long c : {1L, 2L}) {
    QExpansion<Cyclo> sum(prec, Cyclo());
    for (long j = 0; j < p; ++j) {
      KatoEisenstein lift(m, Rat(c + 3 * j, 9), Rat(1, N));
      sum = sum + lift.render_after_dilation(9, prec);
    }
    KatoEisenstein coarse(m, Rat(c, 3), Rat(1, N));
    auto rhs = coarse.render_after_dilation(3, prec).scaled(Cyclo(Rat(1, 3)));
    CHECK(sum.agrees_with(rhs));
  }
}

TEST_CASE("depleted family coefficients at level one") {
  auto f = eis_F(2, DirichletCharacter(1), 1, 2, 10);
  CHECK(f.coeff(0).is_zero());
  CHECK(f.coeff(1) == Cyclo(Rat(2)));
  CHECK(f.coeff(3) == Cyclo(Rat(8)));
  CHECK(f.coeff(5) == Cyclo(Rat(12)));
  CHECK(f.coeff(7) == Cyclo(Rat(16)));
  CHECK(f.coeff(9) == Cyclo(Rat(26)));
  CHECK(f.coeff(2).is_zero());
  CHECK(f.coeff(4).is_zero());
  CHECK(f.coeff(8).is_zero());
}

TEST_CASE("companion family at level four") {
  auto e = eis_E(2, 4, 3, 9);
  CHECK(e.coeff(0).is_zero());
  CHECK(e.coeff(1).is_zero());  // zeta_4^d + zeta_4^{-d} vanishes for odd d
  CHECK(e.coeff(2) == Cyclo(Rat(-4)));
  CHECK(e.coeff(4) == Cyclo(Rat(4)));
  CHECK(e.coeff(8) == Cyclo(Rat(20)));
  CHECK(e.coeff(3).is_zero());
  CHECK(e.coeff(6).is_zero());
}

TEST_CASE("partially depleted parent") {
  DirichletCharacter triv3(3);
  auto ft = eis_F_tilde(2, triv3, 4, 3, 1, 30);
  CHECK(ft.coeff(0) == Cyclo(Rat(1, 3)));
  CHECK(deplete(ft, 3).agrees_with(eis_F(2, triv3, 4, 3, 30)));

  DirichletCharacter leg3 = DirichletCharacter::quadratic(3);
  auto fl = eis_F_tilde(2, leg3, 4, 3, 1, 30);
  CHECK(deplete(fl, 3).agrees_with(eis_F(2, leg3, 4, 3, 30)));
}

TEST_CASE("parent assembles from dilated symbols") {
  for (const DirichletCharacter& chi :
       {DirichletCharacter(3), DirichletCharacter::quadratic(3)}) {
    auto direct = eis_F_tilde(2, chi, 4, 3, 1, 40);
    auto assembled = eis_F_tilde_from_symbols(2, chi, 4, 3, 1, 40);
    CHECK(direct.agrees_with(assembled));
  }
}

TEST_CASE("involution block") {
  AtkinLehnerBlock b = make_w_block(3, 1, 4);
  CHECK(b.x == -3);
  CHECK(b.y == -1);
  CHECK(b.z == 7);
  CHECK(b.w == 1);
  CHECK(9 * b.x * b.w - 4 * b.y * b.z == 1);
  CHECK_THROWS_AS(make_w_block(3, 1, 3), std::invalid_argument);
}

TEST_CASE("involution image routes agree") {
  for (const DirichletCharacter& chi :
       {DirichletCharacter(3), DirichletCharacter::quadratic(3)}) {
    auto closed = eis_F_tilde_w_image(2, chi, 4, 3, 1, 24);
    auto chained = eis_F_tilde_w_image_chain(2, chi, 4, 3, 1, 24);
    CHECK(closed.agrees_with(chained));
    CHECK(!closed.is_zero());
  }
}

}  // TEST_SUITE
