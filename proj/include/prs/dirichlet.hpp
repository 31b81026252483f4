#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "prs/cyclotomic.hpp"
#include "prs/rational.hpp"

namespace prs {

// One cyclic factor of (Z/M)^x together with the character's value on its
// generator, stored as zeta_{zeta_order}^{zeta_exp}.
struct GenValue {
  long gen;
  long gen_order;
  long zeta_order;  // exact order of the value
  long zeta_exp;    // coprime to zeta_order unless the value is 1
  long factor;      // the prime power q^e || M this generator lives in
};

// Canonical generator list for (Z/M)^x: for each prime power q^e || M in
// increasing q, the smallest primitive root mod q^e if q is odd; nothing for
// q^e = 2; the class of 3 for q^e = 4; the classes of -1 and 5 for q^e >= 8.
std::vector<std::pair<long, long>> unit_group_generators(long M);  // (gen, order)

class DirichletCharacter {
public:
  // Trivial character mod M.
  explicit DirichletCharacter(long M = 1);

  // From values on the canonical generators, as (gen, zeta_order, zeta_exp)
  // triples in canonical order.  Throws if the generators are not the
  // canonical list or a value order does not divide the generator order.
  static DirichletCharacter from_gen_values(
      long M, const std::vector<std::array<long, 3>>& triples);

  // From an arbitrary evaluation rule on units mod M; values must be roots of
  // unity of order dividing the generator orders.
  static DirichletCharacter from_values(long M,
                                        const std::function<Cyclo(long)>& eval);

  static DirichletCharacter quadratic(long q);  // odd prime q, the order-2 character

  long modulus() const { return M_; }
  const std::vector<GenValue>& gen_values() const { return gv_; }

  Cyclo operator()(long n) const;
  Cyclo operator()(const Int& n) const;

  long order() const;                  // order in the character group
  bool is_trivial() const { return order() == 1; }
  long parity() const;                 // chi(-1) as +1 or -1
  long conductor() const;

  DirichletCharacter inverse() const;  // = complex conjugate
  DirichletCharacter primitive() const;            // attached character mod conductor
  DirichletCharacter lift_to(long L) const;        // L a multiple of modulus
  DirichletCharacter times(const DirichletCharacter& o) const;  // at lcm of moduli

  // Split chi = chi_Q * chi_C for Q || M, C = M/Q: returns the factor mod Q.
  DirichletCharacter at_factor(long Q) const;

  bool operator==(const DirichletCharacter& o) const;

  std::string str() const;

private:
  long M_;
  std::vector<GenValue> gv_;
  mutable std::vector<Cyclo> table_;  // chi on residues, built on first use
  mutable std::vector<char> table_set_;

  Cyclo eval_uncached(long n) const;
};

// All characters mod M, trivial first, in lexicographic exponent order.
std::vector<DirichletCharacter> all_characters(long M);

// Gauss sum at the character's own modulus: sum over units a mod M of
// chi(a) zeta_M^a.  For primitive chi, G(chi) G(chi-bar) = chi(-1) M.
Cyclo gauss_sum(const DirichletCharacter& chi);

}  // namespace prs
