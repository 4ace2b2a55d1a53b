#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "qblock/cyclo.hpp"
#include "qblock/quad.hpp"
#include "qblock/sl2char.hpp"

using namespace qblock;

namespace {

// slow independent search: first prime in the residue class, checking
// every smaller prime really misses the congruence
long long find_q_reference(int n) {
  long long mod = 1LL << n, res = (1LL << (n - 1)) - 1;
  for (long long q = 3;; q += 2) {
    if (!is_prime(Integer(q))) continue;
    if (q % mod == res) return q;
  }
}

Rational rat(const Value& v) {
  REQUIRE(v.is_rational());
  return v.as_rational();
}

}  // namespace

TEST_CASE("prime search per valuation profile") {
  CHECK(find_q(3) == 3);
  CHECK(find_q(4) == 7);
  CHECK(find_q(5) == 47);
  CHECK(find_q(6) == 31);
  CHECK(find_q(7) == 191);
  for (int n = 3; n <= 9; ++n) {
    long long q = find_q(n);
    CHECK(q == find_q_reference(n));
    CHECK(q % 4 == 3);
    CHECK(is_prime(Integer(q)));
    CHECK(v2(Integer(q + 1)) == n - 1);
    CHECK(v2(Integer(q - 1)) == 1);
    GroupParams P = make_group_params(q);
    CHECK(P.n == n);
  }
  CHECK_THROWS_AS(find_q(2), std::invalid_argument);
}

TEST_CASE("group parameter validation") {
  GroupParams P = make_group_params(7);
  CHECK(P.n == 4);
  CHECK(P.group_order == 336);
  CHECK_THROWS_AS(make_group_params(5), std::invalid_argument);   // 1 mod 4
  CHECK_THROWS_AS(make_group_params(9), std::invalid_argument);   // composite
  CHECK_THROWS_AS(make_group_params(15), std::invalid_argument);  // composite
  CHECK_THROWS_AS(make_group_params(2), std::invalid_argument);
}

TEST_CASE("conjugacy class enumeration") {
  for (long long q : {3LL, 7LL, 11LL, 23LL, 47LL}) {
    GroupParams P = make_group_params(q);
    auto classes = enumerate_classes(P);
    CHECK(static_cast<long long>(classes.size()) == q + 4);
    Integer total = 0;
    std::map<ClassKind, int> counts;
    for (const auto& c : classes) {
      total += c.size;
      counts[c.kind]++;
      CHECK(c.size * c.centralizer_order == P.group_order);
    }
    CHECK(total == P.group_order);
    CHECK(counts[ClassKind::CentralI] == 2);
    CHECK(counts[ClassKind::Split] == (q - 3) / 2);
    CHECK(counts[ClassKind::NonSplit] == (q - 1) / 2);
    CHECK(counts[ClassKind::Unipotent] == 4);
  }

  GroupParams P7 = make_group_params(7);
  auto cl = enumerate_classes(P7);
  CHECK(cl.size() == 11);
  for (const auto& c : cl) {
    if (c.kind == ClassKind::Unipotent) {
      CHECK(c.centralizer_order == 14);
      CHECK(c.element_order == (c.eps == 1 ? 7 : 14));
    }
    if (c.kind == ClassKind::CentralI)
      CHECK(c.element_order == (c.eps == 1 ? 1 : 2));
    if (c.kind == ClassKind::Split && c.param == 1) CHECK(c.element_order == 6);
    if (c.kind == ClassKind::Split && c.param == 2) CHECK(c.element_order == 3);
    if (c.kind == ClassKind::NonSplit && c.param == 1)
      CHECK(c.element_order == 8);
    if (c.kind == ClassKind::NonSplit && c.param == 2)
      CHECK(c.element_order == 4);
  }
}

TEST_CASE("order-two torus characters") {
  for (long long q : {7LL, 23LL, 47LL}) {
    GroupParams P = make_group_params(q);
    for (const auto& c : enumerate_classes(P)) {
      if (c.kind == ClassKind::NonSplit) {
        int t = theta0(P, c);
        CHECK(t == (c.param % 2 ? -1 : 1));
        CHECK((t == -1) == (v2(c.element_order) == P.n - 1));
      }
      if (c.kind == ClassKind::Split) {
        int a = alpha0(P, c);
        CHECK(a == (c.param % 2 ? -1 : 1));
        CHECK((a == -1) == (c.element_order % 2 == 0));
      }
    }
  }
  GroupParams P = make_group_params(7);
  auto cl = enumerate_classes(P);
  CHECK_THROWS_AS(theta0(P, cl[0]), std::invalid_argument);
  CHECK_THROWS_AS(alpha0(P, cl[0]), std::invalid_argument);
  for (const auto& c : cl)
    if (c.kind == ClassKind::NonSplit && c.element_order == 8)
      CHECK(theta0(P, c) == -1);
}

TEST_CASE("block character table shape and frozen entries") {
  GroupParams P = make_group_params(7);
  CharacterTable T = build_block_table(P);
  CHECK(T.l == 3);
  CHECK(T.chars.size() == 9);
  CHECK(T.classes.size() == 11);

  // identity column is class 0
  CHECK(T.classes[0].kind == ClassKind::CentralI);
  CHECK(T.classes[0].eps == 1);
  CHECK(rat(T.at(1, 0)) == Rational(3));  // (q-1)/2

  std::multiset<Rational> degrees;
  for (size_t i = 0; i < T.chars.size(); ++i) degrees.insert(rat(T.at(static_cast<int>(i), 0)));
  std::multiset<Rational> expected = {Rational(1), Rational(3), Rational(3),
                                      Rational(7), Rational(4), Rational(4),
                                      Rational(6), Rational(6), Rational(6)};
  CHECK(degrees == expected);

  for (size_t j = 0; j < T.classes.size(); ++j) {
    if (T.classes[j].kind == ClassKind::Split) CHECK(rat(T.at(3, j)) == Rational(1));
    if (T.classes[j].kind == ClassKind::NonSplit) CHECK(rat(T.at(3, j)) == Rational(-1));
    if (T.classes[j].kind == ClassKind::Unipotent) CHECK(rat(T.at(3, j)) == Rational(0));
  }

  // theta rows: orders (4,1), (8,1), (8,3)
  CHECK(T.chars[6].theta_order == 4);
  CHECK(T.chars[6].theta_exp == 1);
  CHECK(T.chars[7].theta_order == 8);
  CHECK(T.chars[7].theta_exp == 1);
  CHECK(T.chars[8].theta_order == 8);
  CHECK(T.chars[8].theta_exp == 3);

  // sigma*: identity on rows 1..6 and the order-4 row, swaps the order-8 pair
  CHECK(T.theta0_partner ==
        std::vector<int>{0, 1, 2, 3, 4, 5, 6, 8, 7});

  GroupParams P3 = make_group_params(3);
  CharacterTable T3 = build_block_table(P3);
  CHECK(T3.l == 1);
  CHECK(T3.chars.size() == 7);
  std::multiset<Rational> deg3;
  for (size_t i = 0; i < T3.chars.size(); ++i) deg3.insert(rat(T3.at(static_cast<int>(i), 0)));
  CHECK(deg3 == std::multiset<Rational>{Rational(1), Rational(1), Rational(1),
                                        Rational(3), Rational(2), Rational(2),
                                        Rational(2)});
  CHECK(T3.theta0_partner == std::vector<int>{0, 1, 2, 3, 4, 5, 6});

  GroupParams P47 = make_group_params(47);
  CharacterTable T47 = build_block_table(P47);
  CHECK(T47.l == 7);
  CHECK(T47.chars.size() == 13);
  CHECK(T47.classes.size() == 51);
  // sigma* has order 2 with fixed rows exactly 1..6 and the order-4 row
  int moved = 0;
  for (size_t i = 0; i < T47.chars.size(); ++i) {
    int p = T47.theta0_partner[i];
    CHECK(T47.theta0_partner[static_cast<size_t>(p)] == static_cast<int>(i));
    if (p != static_cast<int>(i)) ++moved;
  }
  CHECK(moved == 6);
}

TEST_CASE("unipotent values are half-integral quadratic irrationalities") {
  for (long long q : {3LL, 7LL, 47LL}) {
    GroupParams P = make_group_params(q);
    CharacterTable T = build_block_table(P);
    for (size_t j = 0; j < T.classes.size(); ++j) {
      if (T.classes[j].kind != ClassKind::Unipotent) continue;
      for (int i : {1, 2, 4, 5}) {
        const Value& v = T.at(i, static_cast<int>(j));
        CHECK_FALSE(v.is_rational());
        CHECK(v.two_integral(0));
        const Quad& w = v.as_quad();
        CHECK(w.q() == q);
        // 2 chi = +-1 +- sqrt(-q)
        Quad two_chi = w * Rational(2);
        CHECK(two_chi.a().den() == 1);
        CHECK(two_chi.b().den() == 1);
        CHECK(iabs(two_chi.a().num()) == 1);
        CHECK(iabs(two_chi.b().num()) == 1);
      }
    }
  }
}

TEST_CASE("values at inverse classes are complex conjugates") {
  for (long long q : {3LL, 7LL, 23LL, 47LL}) {
    GroupParams P = make_group_params(q);
    CharacterTable T = build_block_table(P);
    for (size_t j = 0; j < T.classes.size(); ++j) {
      int jinv = T.inverse_class[j];
      CHECK(T.classes[static_cast<size_t>(jinv)].element_order ==
            T.classes[j].element_order);
      for (size_t i = 0; i < T.chars.size(); ++i)
        CHECK(T.at(static_cast<int>(i), jinv) ==
              T.at(static_cast<int>(i), static_cast<int>(j)).conj());
    }
  }
}

TEST_CASE("conjugate theta exponents give the same row") {
  GroupParams P = make_group_params(47);
  CharacterTable T = build_block_table(P);
  for (const auto& ch : T.chars) {
    if (ch.family != BlockCharacter::Family::RTheta) continue;
    BlockCharacter mirror = ch;
    mirror.theta_exp = ch.theta_order - ch.theta_exp;
    for (const auto& c : T.classes) CHECK(mirror.eval(P, c) == ch.eval(P, c));
  }
}

TEST_CASE("central character congruence across the block") {
  // omega_chi(class sum) = |class| chi(g) / chi(1) must be 2-integral and
  // congruent to the trivial character's value modulo the radical -- the
  // defining property of belonging to the principal 2-block.
  for (long long q : {3LL, 7LL, 23LL, 47LL}) {
    GroupParams P = make_group_params(q);
    CharacterTable T = build_block_table(P);
    for (size_t j = 0; j < T.classes.size(); ++j) {
      Rational sz(T.classes[j].size);
      Value omega1 = T.at(0, static_cast<int>(j)) * Value(sz);
      for (size_t i = 0; i < T.chars.size(); ++i) {
        Rational deg = rat(T.at(static_cast<int>(i), 0));
        Value omega = T.at(static_cast<int>(i), static_cast<int>(j)) *
                      Value(sz / deg);
        CHECK(omega.two_integral(0));
        auto [val, unit] = (omega - omega1).two_valuation_with_unit();
        CHECK(val.at_least(1));
      }
    }
  }
}
