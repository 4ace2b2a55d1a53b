#include <doctest.h>

#include <random>

#include "qblock/cyclo.hpp"
#include "qblock/gf2.hpp"
#include "qblock/quad.hpp"
#include "qblock/rational.hpp"
#include "qblock/value.hpp"

using namespace qblock;

namespace {

Rational rand_rational(std::mt19937_64& rng, int num_range = 40,
                       int den_range = 24) {
  std::uniform_int_distribution<int> nd(-num_range, num_range);
  std::uniform_int_distribution<int> dd(1, den_range);
  return Rational(nd(rng), dd(rng));
}

Quad rand_quad(std::mt19937_64& rng, long long q) {
  return Quad(q, rand_rational(rng), rand_rational(rng));
}

Cyclo rand_cyclo(std::mt19937_64& rng, int m) {
  Cyclo x(m);
  std::uniform_int_distribution<int> nd(-4, 4);
  std::uniform_int_distribution<int> dd(1, 4);
  for (int i = 0; i < x.dim(); ++i) x.coord(i) = Rational(nd(rng), dd(rng));
  return x;
}

bool gf2_dot(const Gf2Vec& a, const Gf2Vec& b) {
  bool p = false;
  for (int i = 0; i < a.size(); ++i) p ^= (a.get(i) && b.get(i));
  return p;
}

}  // namespace

TEST_CASE("integer two-adic valuation") {
  CHECK(v2(Integer(1)) == 0);
  CHECK(v2(Integer(2)) == 1);
  CHECK(v2(Integer(-48)) == 4);
  CHECK(v2(Integer(2816)) == 8);
  CHECK_THROWS_AS(v2(Integer(0)), std::invalid_argument);
  CHECK(TwoVal::infinite().at_least(1000000));
  CHECK(min(TwoVal::of(3), TwoVal::infinite()) == TwoVal::of(3));
  CHECK((TwoVal::of(2) + TwoVal::of(5)) == TwoVal::of(7));
  CHECK((TwoVal::of(2) + TwoVal::infinite()).inf);
}

TEST_CASE("primality helper") {
  CHECK(is_prime(2));
  CHECK(is_prime(47));
  CHECK(is_prime(191));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(51));
}

TEST_CASE("rational reduction and arithmetic") {
  Rational r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(3, 4) * Rational(8, 9) == Rational(2, 3));
  CHECK(Rational(3, 4) / Rational(9, 8) == Rational(2, 3));
  CHECK(Rational(5, 3) > Rational(3, 2));
  CHECK(Rational(-5, 3) < Rational(-3, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
  CHECK(Rational(8, 3).two_val() == TwoVal::of(3));
  CHECK(Rational(3, 8).two_val() == TwoVal::of(-3));
  CHECK(Rational(0).two_val().inf);
}

TEST_CASE("rational ring axioms on random inputs") {
  std::mt19937_64 rng(0x5EED0001);
  for (int it = 0; it < 300; ++it) {
    Rational a = rand_rational(rng), b = rand_rational(rng),
             c = rand_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - b + b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("quadratic field arithmetic") {
  Quad x(7, Rational(-1, 2), Rational(1, 2));
  CHECK(x.norm() == Rational(2));
  CHECK(x * x.conj() == Quad(7, Rational(2), Rational(0)));
  CHECK(x + x.conj() == Quad(7, Rational(-1), Rational(0)));
  // minimal polynomial t^2 + t + 2
  Quad zero = x * x + x + Quad(7, Rational(2), Rational(0));
  CHECK(zero.is_zero());
  CHECK_THROWS_AS(Quad(7, 1, 0) + Quad(11, 1, 0), std::logic_error);
  CHECK_THROWS_AS(Quad(6, 1, 0), std::invalid_argument);

  std::mt19937_64 rng(0x5EED0002);
  for (int it = 0; it < 120; ++it) {
    Quad a = rand_quad(rng, 7), b = rand_quad(rng, 7);
    CHECK((a * b).norm() == a.norm() * b.norm());
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK((a + b).conj() == a.conj() + b.conj());
  }
}

TEST_CASE("hensel square root of -7") {
  CHECK(hensel_sqrt_minus_q(7, 8) == 53);
  CHECK(hensel_sqrt_minus_q(7, 9) == 181);
  CHECK(hensel_sqrt_minus_q(7, 16) == 16565);
  for (std::int64_t prec : {10, 20, 40, 80}) {
    Integer s = hensel_sqrt_minus_q(47, prec);
    CHECK((s * s + 47) % pow2(prec) == 0);
    CHECK(s % 4 == 1);
  }
  CHECK_THROWS_AS(hensel_sqrt_minus_q(3, 16), std::invalid_argument);
}

TEST_CASE("quad valuation, inert case (q = 3 mod 8)") {
  // (1+sqrt(-3))/2 is a unit: its norm is 1
  Quad w(3, Rational(1, 2), Rational(1, 2));
  CHECK(w.norm() == Rational(1));
  CHECK(quad_two_valuation(w) == TwoVal::of(0));
  CHECK(quad_two_valuation(Quad(3, 1, 1)) == TwoVal::of(1));
  CHECK(quad_two_valuation(Quad(3, 0, 1)) == TwoVal::of(0));
  CHECK(quad_two_valuation(Quad(3, 0, 0)).inf);

  // the valuation doubles in the norm and is additive
  std::mt19937_64 rng(0x5EED0003);
  for (int it = 0; it < 120; ++it) {
    Quad a = rand_quad(rng, 11), b = rand_quad(rng, 11);
    if (!a.is_zero())
      CHECK(a.norm().two_val() ==
            quad_two_valuation(a) + quad_two_valuation(a));
    if (!a.is_zero() && !b.is_zero())
      CHECK(quad_two_valuation(a * b) ==
            quad_two_valuation(a) + quad_two_valuation(b));
  }
}

TEST_CASE("quad valuation, split case (q = 7 mod 8)") {
  Quad x(7, Rational(-1, 2), Rational(1, 2));
  CHECK(quad_two_valuation_embedding(x) == TwoVal::of(1));
  CHECK(quad_two_valuation_embedding(x.conj()) == TwoVal::of(0));
  CHECK(quad_two_valuation(x) == TwoVal::of(0));
  CHECK_FALSE(quad_two_integral(x, 3));
  CHECK(quad_two_integral(x, 0));

  Quad y(7, 181, -1);
  CHECK(y.norm() == Rational(32768));
  CHECK(quad_two_valuation_embedding(y) == TwoVal::of(14));
  CHECK(quad_two_valuation_embedding(y.conj()) == TwoVal::of(1));
  CHECK(quad_two_valuation(y) == TwoVal::of(1));

  // high valuation forces the precision doubling path
  Quad p = Quad(7, 1, 0);
  for (int i = 0; i < 30; ++i) p = p * x;
  CHECK(quad_two_valuation_embedding(p) == TwoVal::of(30));
  CHECK(quad_two_valuation(p) == TwoVal::of(0));

  Quad z(47, Rational(1, 2), Rational(1, 2));
  CHECK(z.norm() == Rational(12));
  TwoVal v1 = quad_two_valuation_embedding(z);
  TwoVal v2e = quad_two_valuation_embedding(z.conj());
  CHECK((v1 + v2e) == TwoVal::of(2));
  CHECK(min(v1, v2e) == quad_two_valuation(z));
  CHECK(quad_two_valuation(z) == TwoVal::of(0));

  std::mt19937_64 rng(0x5EED0004);
  for (long long q : {7LL, 23LL, 47LL}) {
    for (int it = 0; it < 60; ++it) {
      Quad a = rand_quad(rng, q);
      if (a.is_zero()) continue;
      TwoVal va = quad_two_valuation_embedding(a);
      TwoVal vc = quad_two_valuation_embedding(a.conj());
      CHECK((va + vc) == a.norm().two_val());
      CHECK(min(va, vc) == quad_two_valuation(a));
      Quad b = rand_quad(rng, q);
      if (b.is_zero()) continue;
      CHECK(quad_two_valuation_embedding(a * b) ==
            (va + quad_two_valuation_embedding(b)));
    }
  }

  CHECK(quad_two_valuation(Quad(7, 12, 0)) == TwoVal::of(2));
  CHECK_THROWS_AS(quad_two_valuation(Quad(5, 1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(quad_two_valuation_embedding(Quad(11, 1, 1)),
                  std::invalid_argument);
}

TEST_CASE("cyclotomic basics at level 8") {
  Cyclo z = Cyclo::zeta_pow(3, 1);
  CHECK(Cyclo::zeta_pow(3, 4) == Cyclo::from_rational(3, Rational(-1)));
  CHECK(Cyclo::zeta_pow(3, 8) == Cyclo::from_rational(3, Rational(1)));
  CHECK(Cyclo::zeta_pow(3, -1) == Cyclo::zeta_pow(3, 7));
  Cyclo one = Cyclo::from_rational(3, Rational(1));
  Cyclo allones = one + z + z * z + z * z * z;
  CHECK((one - z) * allones == Cyclo::from_rational(3, Rational(2)));
  CHECK(z.galois(3) == Cyclo::zeta_pow(3, 3));
  CHECK(z.conj() == Cyclo::zeta_pow(3, 7));
  CHECK(z.conj().conj() == z);

  std::mt19937_64 rng(0x5EED0005);
  for (int it = 0; it < 60; ++it) {
    Cyclo a = rand_cyclo(rng, 3);
    CHECK(a.galois(3).galois(5) == a.galois(15));
    CHECK(a.galois(5).galois(5) == a.galois(25));
    CHECK(a.conj().conj() == a);
  }
}

TEST_CASE("cyclotomic norms") {
  for (int m = 2; m <= 5; ++m) {
    CHECK(Cyclo(m) - Cyclo(m) == Cyclo(m));
    Cyclo one_minus_z =
        Cyclo::from_rational(m, Rational(1)) - Cyclo::zeta_pow(m, 1);
    CHECK(one_minus_z.norm() == Rational(2));
  }
  // norm of a rational is its dim-th power
  CHECK(Cyclo::from_rational(3, Rational(3)).norm() == Rational(81));
  CHECK(Cyclo::from_rational(2, Rational(-2)).norm() == Rational(4));

  std::mt19937_64 rng(0x5EED0006);
  for (int it = 0; it < 40; ++it) {
    Cyclo a = rand_cyclo(rng, 3), b = rand_cyclo(rng, 3);
    CHECK((a * b).norm() == a.norm() * b.norm());
  }
}

TEST_CASE("cyclotomic 2-adic valuation") {
  Cyclo two = Cyclo::from_rational(3, Rational(2));
  CHECK(cyclo_pi_valuation(two) == TwoVal::of(4));
  Cyclo z = Cyclo::zeta_pow(3, 1);
  Cyclo one = Cyclo::from_rational(3, Rational(1));
  CHECK(cyclo_pi_valuation(one - z) == TwoVal::of(1));
  CHECK(cyclo_pi_valuation(one + z) == TwoVal::of(1));
  CHECK(cyclo_pi_valuation(one - z * z) == TwoVal::of(2));
  CHECK(cyclo_pi_valuation((one - z) * (one - z) * Rational(3)) ==
        TwoVal::of(2));
  CHECK(cyclo_pi_valuation(Cyclo::zeta_pow(3, 5)) == TwoVal::of(0));
  CHECK(cyclo_pi_valuation(Cyclo(3)).inf);
  CHECK(cyclo_two_integral(two, 1));
  CHECK_FALSE(cyclo_two_integral((one - z) * Rational(1, 2), 0));
  CHECK(cyclo_two_integral(one - z, 0));
  CHECK_FALSE(cyclo_two_integral(one - z, 1));
  CHECK(cyclo_two_integral(Cyclo(4), 50));

  // big coefficients take the arbitrary-precision path
  Cyclo big = (one - z) * Rational(pow2(60));
  CHECK(cyclo_pi_valuation(big) == TwoVal::of(241));

  std::mt19937_64 rng(0x5EED0007);
  for (int m : {2, 3, 4}) {
    for (int it = 0; it < 40; ++it) {
      Cyclo a = rand_cyclo(rng, m), b = rand_cyclo(rng, m);
      if (a.is_zero() || b.is_zero()) continue;
      CHECK(cyclo_pi_valuation(a) == a.norm().two_val());
      CHECK(cyclo_pi_valuation(a * b) ==
            (cyclo_pi_valuation(a) + cyclo_pi_valuation(b)));
      CHECK(cyclo_pi_valuation(a.galois(5)) == cyclo_pi_valuation(a));
    }
  }
}

TEST_CASE("cyclotomic tower embedding") {
  std::mt19937_64 rng(0x5EED0008);
  for (int it = 0; it < 40; ++it) {
    Cyclo a = rand_cyclo(rng, 3), b = rand_cyclo(rng, 3);
    CHECK(a.embed(5) * b.embed(5) == (a * b).embed(5));
    CHECK(a.embed(5) + b.embed(5) == (a + b).embed(5));
    if (!a.is_zero()) {
      TwoVal v = cyclo_pi_valuation(a);
      CHECK(cyclo_pi_valuation(a.embed(4)) == TwoVal::of(2 * v.v));
      CHECK(cyclo_pi_valuation(a.embed(5)) == TwoVal::of(4 * v.v));
    }
  }
  CHECK(Cyclo::zeta_pow(2, 1).embed(4) == Cyclo::zeta_pow(4, 4));
}

TEST_CASE("full character sums of a cyclic 2-group") {
  for (int n = 2; n <= 7; ++n) {
    long long half = 1LL << (n - 1);
    for (long long j = 0; j < 2 * half; ++j) {
      Integer expect = (j % half == 0) ? Integer(half) : Integer(0);
      CHECK(galois_power_sum(n, j) == expect);
    }
  }
}

TEST_CASE("value demotion to the minimal field") {
  CHECK(Value(Quad(7, Rational(3), Rational(0))).is_rational());
  CHECK(Value(Quad(7, Rational(3), Rational(1))).is_quad());
  Value v4 = Value(Cyclo::zeta_pow(4, 4));  // a 16th root that is really i
  CHECK(v4.is_cyclo());
  CHECK(v4.as_cyclo().m() == 2);
  CHECK(Value(Cyclo::zeta_pow(4, 8)) == Value(-1));
  CHECK(Value(Cyclo::zeta_pow(3, 2)) == Value(Cyclo::zeta_pow(2, 1)));
  // theta + conj(theta) for an order-4 character is rational
  Value t = Value(Cyclo::zeta_pow(2, 1));
  CHECK(t + t.conj() == Value(0));
  Value z8 = Value(Cyclo::zeta_pow(3, 1));
  CHECK(z8 + (-z8) == Value(0));
  CHECK((z8 + z8.conj()).is_cyclo());  // z8 + z8^7 is irrational
}

TEST_CASE("value promotion and mixing rules") {
  Value half(Rational(1, 2));
  Value sq7(Quad(7, Rational(0), Rational(1)));
  Value z8(Cyclo::zeta_pow(3, 1));
  CHECK((half + sq7).is_quad());
  CHECK((half * sq7).is_quad());
  CHECK((half + z8).is_cyclo());
  CHECK((z8 * z8 + z8).is_cyclo());
  CHECK_THROWS_AS(sq7 + z8, mixed_value_error);
  CHECK_THROWS_AS(sq7 * z8, mixed_value_error);
  CHECK_THROWS_AS(sq7 + Value(Quad(23, Rational(0), Rational(1))),
                  mixed_value_error);
  // cyclotomic values of different levels embed into the larger field
  Value i4(Cyclo::zeta_pow(2, 1));
  Value s = z8 + i4;
  CHECK(s.is_cyclo());
  CHECK(s.as_cyclo().m() == 3);
  CHECK(s - i4 == z8);
  // rational slipping through quad arithmetic demotes on the way out
  CHECK((sq7 * sq7) == Value(-7));
}

TEST_CASE("value integrality") {
  CHECK(Value(Rational(8, 3)).two_integral(3));
  CHECK_FALSE(Value(Rational(8, 3)).two_integral(4));
  CHECK(Value(0).two_integral(1000));
  Value x(Quad(7, Rational(-1, 2), Rational(1, 2)));
  CHECK(x.two_integral(0));
  CHECK_FALSE(x.two_integral(1));
  Value om(Quad(3, Rational(1, 2), Rational(1, 2)));
  CHECK(om.two_integral(0));
  CHECK_FALSE(om.two_integral(1));
  Value pi = Value(1) - Value(Cyclo::zeta_pow(3, 1));
  CHECK(pi.two_integral(0));
  CHECK_FALSE(pi.two_integral(1));
  auto [v, unit] = pi.two_valuation_with_unit();
  CHECK(v == TwoVal::of(1));
  CHECK(unit == 4);
  auto [vr, ur] = Value(Rational(12)).two_valuation_with_unit();
  CHECK(vr == TwoVal::of(2));
  CHECK(ur == 1);
}

TEST_CASE("gf2 rank and nullspace") {
  std::vector<Gf2Vec> id5;
  for (int i = 0; i < 5; ++i) {
    Gf2Vec v(5);
    v.set(i, true);
    id5.push_back(v);
  }
  CHECK(gf2_rank(id5) == 5);
  CHECK(gf2_nullspace(id5, 5).empty());

  std::vector<Gf2Vec> rows;
  Gf2Vec r1(3), r2(3), r3(3);
  r1.set(0, true);
  r1.set(1, true);
  r2.set(1, true);
  r2.set(2, true);
  r3.set(0, true);
  r3.set(2, true);  // r3 = r1 + r2
  rows = {r1, r2, r3};
  CHECK(gf2_rank(rows) == 2);
  auto ns = gf2_nullspace(rows, 3);
  REQUIRE(ns.size() == 1);
  for (const auto& row : rows) CHECK_FALSE(gf2_dot(row, ns[0]));

  std::mt19937_64 rng(0x5EED0009);
  for (int it = 0; it < 20; ++it) {
    std::vector<Gf2Vec> m;
    for (int r = 0; r < 20; ++r) {
      Gf2Vec v(30);
      for (int c = 0; c < 30; ++c) v.set(c, rng() & 1);
      m.push_back(v);
    }
    int rank = gf2_rank(m);
    auto basis = gf2_nullspace(m, 30);
    CHECK(rank + static_cast<int>(basis.size()) == 30);
    for (const auto& v : basis)
      for (const auto& row : m) CHECK_FALSE(gf2_dot(row, v));
    CHECK(gf2_rank(basis) == static_cast<int>(basis.size()));
  }
}
