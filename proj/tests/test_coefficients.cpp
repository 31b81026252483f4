#include "doctest.h"

#include "prs/cyclotomic.hpp"
#include "prs/dirichlet.hpp"
#include "prs/padic.hpp"
#include "prs/rational.hpp"

using namespace prs;

TEST_SUITE("coefficients") {

TEST_CASE("integer utilities") {
  CHECK(int_pow(Int(3), 5) == 243);
  CHECK(int_val(Int(2016), Int(2)) == 5);
  CHECK(rat_val(Rat(9, 8), Int(2)) == -3);
  CHECK(rat_val(Rat(9, 8), Int(3)) == 2);
  CHECK(gcd(Int(48), Int(36)) == 12);
  CHECK(lcm(Int(4), Int(6)) == 12);
  Int s, t;
  Int g = ext_gcd(Int(240), Int(46), s, t);
  CHECK(g == 2);
  CHECK(s * 240 + t * 46 == g);
  CHECK(inv_mod(Int(3), Int(40)) == 27);
  CHECK(pow_mod(Int(5), Int(117), Int(19)) == pow_mod(Int(5), Int(117 % 18), Int(19)));
  CHECK(mod_reduce(Int(-3), Int(7)) == 4);
}

TEST_CASE("multiplicative structure") {
  CHECK(is_prime(97));
  CHECK(!is_prime(91));
  CHECK(!is_prime(1));
  auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<long, int>{2, 3});
  CHECK(f[1] == std::pair<long, int>{3, 2});
  CHECK(f[2] == std::pair<long, int>{5, 1});
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(49) == 42);
  CHECK(mul_order(2, 11) == 10);
  CHECK(mul_order(3, 11) == 5);
  CHECK(smallest_primitive_root(11) == 2);
  CHECK(smallest_primitive_root(41) == 6);
}

TEST_CASE("bernoulli numbers and polynomials") {
  CHECK(bernoulli_number(0) == 1);
  CHECK(bernoulli_number(1) == Rat(-1, 2));
  CHECK(bernoulli_number(2) == Rat(1, 6));
  CHECK(bernoulli_number(3) == 0);
  CHECK(bernoulli_number(4) == Rat(-1, 30));
  CHECK(bernoulli_number(12) == Rat(-691, 2730));
  CHECK(bernoulli_poly(2, Rat(1, 3)) == Rat(1, 9) - Rat(1, 3) + Rat(1, 6));
  // sum_{j<p} B_m((x+j)/p) = p^{1-m} B_m(x)
  for (long m : {2L, 3L, 5L}) {
    for (long p : {3L, 5L}) {
      Rat x(1, 4);
      Rat lhs(0);
      for (long j = 0; j < p; ++j) lhs += bernoulli_poly(m, (x + j) / p);
      CHECK(lhs == rat_pow(Rat(p), 1 - m) * bernoulli_poly(m, x));
    }
  }
}

TEST_CASE("binomial and string forms") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 0) == 1);
  CHECK(rat_to_string(Rat(-7, 3)) == "-7/3");
  CHECK(rat_to_string(Rat(4)) == "4");
  CHECK(rat_from_string("22/7") == Rat(22, 7));
  CHECK(rat_from_string("-5") == Rat(-5));
}

TEST_CASE("cyclotomic arithmetic") {
  Cyclo z5 = Cyclo::zeta(5, 1);
  Cyclo s = Cyclo(Rat(1));
  for (long i = 1; i < 5; ++i) s += z5.pow(i);
  CHECK(s.is_zero());
  CHECK(Cyclo::zeta(12, 1).pow(12) == Cyclo(Rat(1)));
  CHECK(Cyclo::zeta(12, 6) == Cyclo(Rat(-1)));
  CHECK(z5 * z5.conj() == Cyclo(Rat(1)));
  CHECK(z5.galois(2) == z5.pow(2));
  CHECK(Cyclo::zeta(4, 2).is_rational());
  CHECK(Cyclo::zeta(4, 2).rational_part() == -1);
}

TEST_CASE("cyclotomic reduction and inverse") {
  Cyclo z6 = Cyclo::zeta(6, 1);
  CHECK(z6.reduced().conductor() == 3);
  CHECK(z6 == -Cyclo::zeta(3, 2));
  Cyclo a = Cyclo(Rat(1)) + Cyclo::zeta(3, 1);
  CHECK(a * a.inv() == Cyclo(Rat(1)));
  CHECK(a.inv() == Cyclo(Rat(1)) + Cyclo::zeta(3, 2));
  // conductor mixing goes through the lcm
  Cyclo m = Cyclo::zeta(3, 1) * Cyclo::zeta(4, 1);
  CHECK(m.pow(12) == Cyclo(Rat(1)));
  CHECK(m.pow(6) != Cyclo(Rat(1)));
  const auto& phi8 = cyclotomic_poly(8);
  REQUIRE(phi8.size() == 5);
  CHECK(phi8[0] == 1);
  CHECK(phi8[4] == 1);
  CHECK(phi8[1] == 0);
}

TEST_CASE("p-adic scalar precision tracking") {
  PadicScalar one = PadicScalar::from_int(5, 1, 10);
  PadicScalar third = PadicScalar::from_rat(5, Rat(1, 3), 10);
  CHECK((third * PadicScalar::from_int(5, 3, 10)).agrees_with(one));
  CHECK(third.rel_prec() == 10);
  CHECK(third.valuation() == 0);

  PadicScalar x = PadicScalar::from_int(5, 50, 8);
  CHECK(x.valuation() == 2);
  CHECK(x.abs_prec() == 10);
  PadicScalar y = PadicScalar::from_int(5, 10, 8);
  CHECK((x * y).valuation() == 3);

  // addition meets absolute precisions
  PadicScalar a = PadicScalar::from_int(5, 2, 4);
  PadicScalar b = PadicScalar::from_int(5, 25, 10);
  CHECK((a + b).abs_prec() == 4);

  PadicScalar z = x - x;
  CHECK(z.is_zero_at_prec());
  CHECK(z.abs_prec() == 10);
  CHECK(!z.known_nonzero());

  PadicScalar inv2 = PadicScalar::from_int(5, 2, 6).inv();
  CHECK((inv2 * PadicScalar::from_int(5, 2, 6)).agrees_with(PadicScalar::from_int(5, 1, 6)));
  CHECK(PadicScalar::from_int(5, 2, 6).pow(-1).agrees_with(inv2));
  // non-unit inverse negates the valuation
  CHECK(PadicScalar::from_int(5, 50, 8).inv().valuation() == -2);

  CHECK(PadicScalar::from_rat(5, Rat(1, 2), 6).residue(2) == 13);
  CHECK(PadicScalar::from_int(5, -1, 4).residue(2) == 24);
}

TEST_CASE("p-adic agreement respects the precision meet") {
  PadicScalar coarse = PadicScalar::from_int(7, 3, 2);
  PadicScalar fine = PadicScalar::from_int(7, 3 + 49 * 5, 10);
  CHECK(coarse.agrees_with(fine));     // equal mod 7^2
  CHECK(!fine.agrees_with(PadicScalar::from_int(7, 3 + 49, 10)));
  PadicScalar z = PadicScalar::zero_at(7, 3);
  CHECK(z.agrees_with(PadicScalar::from_int(7, 343, 5)));
  CHECK(!z.agrees_with(PadicScalar::from_int(7, 49, 5)));
}

TEST_CASE("teichmuller lift") {
  Int w = teichmuller(5, Int(2), 8);
  CHECK(mod_reduce(w, Int(5)) == 2);
  CHECK(pow_mod(w, Int(4), int_pow(Int(5), 8)) == 1);
  CHECK(teichmuller(5, Int(1), 8) == 1);
}

TEST_CASE("dirichlet characters") {
  DirichletCharacter leg5 = DirichletCharacter::quadratic(5);
  CHECK(leg5(1) == Cyclo(Rat(1)));
  CHECK(leg5(2) == Cyclo(Rat(-1)));
  CHECK(leg5(3) == Cyclo(Rat(-1)));
  CHECK(leg5(4) == Cyclo(Rat(1)));
  CHECK(leg5(5).is_zero());
  CHECK(leg5.order() == 2);
  CHECK(leg5.parity() == 1);
  CHECK(leg5.conductor() == 5);

  Cyclo g = gauss_sum(leg5);
  CHECK(g * g == Cyclo(Rat(5)));

  CHECK(all_characters(8).size() == 4);
  auto mod9 = all_characters(9);
  REQUIRE(mod9.size() == 6);
  long ord_count[7] = {0, 0, 0, 0, 0, 0, 0};
  for (auto& chi : mod9) ord_count[chi.order()]++;
  CHECK(ord_count[1] == 1);
  CHECK(ord_count[2] == 1);
  CHECK(ord_count[3] == 2);
  CHECK(ord_count[6] == 2);
}

TEST_CASE("character factorisation and products") {
  DirichletCharacter leg3 = DirichletCharacter::quadratic(3);
  DirichletCharacter lifted = leg3.lift_to(12);
  CHECK(lifted.modulus() == 12);
  CHECK(lifted.conductor() == 3);
  DirichletCharacter at3 = lifted.at_factor(3);
  DirichletCharacter at4 = lifted.at_factor(4);
  CHECK(at3 == leg3);
  CHECK(at4.is_trivial());
  for (long n : {1L, 5L, 7L, 11L}) CHECK(lifted(n) == at3(n) * at4(n));

  DirichletCharacter prod = leg3.times(DirichletCharacter::quadratic(5));
  CHECK(prod.modulus() == 15);
  CHECK(prod(2) == Cyclo(Rat(1)));
  CHECK(prod(7) == Cyclo(Rat(-1)));

  DirichletCharacter chi4 = DirichletCharacter::from_gen_values(4, {{3, 2, 1}});
  CHECK(chi4.parity() == -1);
  CHECK(chi4(3) == Cyclo(Rat(-1)));

  // round trip through the stored generator values
  std::vector<std::array<long, 3>> triples;
  for (auto& gv : lifted.gen_values())
    triples.push_back({gv.gen, gv.zeta_order, gv.zeta_exp});
  CHECK(DirichletCharacter::from_gen_values(12, triples) == lifted);

  CHECK(leg3.inverse() == leg3);
  CHECK(lifted.primitive() == leg3);
}

TEST_CASE("p-adic embedding of cyclotomic scalars") {
  PadicEmbedding emb(5, 12);
  PadicScalar i = emb.root_of_unity(4);
  PadicScalar m1 = PadicScalar::from_int(5, -1, 12);
  CHECK((i * i).agrees_with(m1));
  CHECK(emb.embed(Cyclo::zeta(4, 1)).agrees_with(i));
  CHECK(emb.embed(Cyclo::zeta(2, 1)).agrees_with(m1));
  CHECK(emb.embed(Cyclo::zeta(4, 1) * Cyclo::zeta(4, 1)).agrees_with(i * i));
  CHECK((emb.embed(Rat(7, 3)) * PadicScalar::from_int(5, 3, 12))
            .agrees_with(PadicScalar::from_int(5, 7, 12)));
  // embedding a sum matches the sum of embeddings
  Cyclo mix = Cyclo(Rat(2)) + Cyclo::zeta(4, 3);
  CHECK(emb.embed(mix).agrees_with(PadicScalar::from_int(5, 2, 12) + emb.embed(Cyclo::zeta(4, 3))));
}

}  // TEST_SUITE
