#include <doctest.h>

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qblock/quiver.hpp"

using namespace qblock;

namespace {

std::string power_word(const std::string& block, long long times,
                       const std::string& tail) {
  std::string s;
  for (long long i = 0; i < times; ++i) s += block;
  return s + tail;
}

// Formal GF(2) combination of basis elements, as a sorted set of indices.
using Formal = std::set<int>;

Formal formal_mul(const QuiverAlgebra& A, const Formal& x, const Formal& y) {
  std::map<int, int> acc;
  for (int i : x)
    for (int j : y) {
      int p = A.product(i, j);
      if (p >= 0) acc[p] ^= 1;
    }
  Formal out;
  for (auto& [k, v] : acc)
    if (v) out.insert(k);
  return out;
}

bool is_central(const QuiverAlgebra& A, const Formal& z) {
  for (int a = 0; a < 6; ++a) {
    Formal ga = {A.gen[static_cast<size_t>(a)]};
    if (formal_mul(A, z, ga) != formal_mul(A, ga, z)) return false;
  }
  return true;
}

std::vector<std::string> corner_words(const QuiverAlgebra& A, int s, int t) {
  std::vector<std::string> out;
  for (int i = 0; i < A.dim; ++i)
    if (A.src[static_cast<size_t>(i)] == s && A.tgt[static_cast<size_t>(i)] == t)
      out.push_back(A.basis[static_cast<size_t>(i)]);
  return out;
}

void check_defining_relations(const QuiverAlgebra& A) {
  long long c = A.c;
  CHECK(A.reduce_word("bd") >= 0);
  CHECK(A.reduce_word("bd") == A.reduce_word("klk"));
  CHECK(A.reduce_word("hg") == A.reduce_word("lkl"));
  CHECK(A.reduce_word("hg") >= 0);
  CHECK(A.reduce_word("dl") == A.reduce_word("gbg"));
  CHECK(A.reduce_word("dl") >= 0);
  CHECK(A.reduce_word("kh") == A.reduce_word("bgb"));
  CHECK(A.reduce_word("kh") >= 0);
  CHECK(A.reduce_word("lb") == A.reduce_word(power_word("hd", c - 1, "h")));
  CHECK(A.reduce_word("lb") >= 0);
  CHECK(A.reduce_word("gk") == A.reduce_word(power_word("dh", c - 1, "d")));
  CHECK(A.reduce_word("gk") >= 0);
  CHECK(A.reduce_word("gbd") == -1);
  CHECK(A.reduce_word("dhg") == -1);
  CHECK(A.reduce_word("lkh") == -1);
}

void check_vanishing_triples(const QuiverAlgebra& A) {
  for (const char* w : {"lbg", "bgk", "gbd", "hgb", "bdh", "dhg", "hdl", "khd",
                        "dlk", "lkh", "klb", "gkl"})
    CHECK_MESSAGE(A.reduce_word(w) == -1, "triple should vanish: ", w);
}

void check_associativity(const QuiverAlgebra& A) {
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j)
      for (int k = 0; k < A.dim; ++k)
        REQUIRE(A.product(A.product(i, j), k) == A.product(i, A.product(j, k)));
}

// Independent bounded reconstruction: every relation instance p*r*q whose
// terms fit under the cap is materialized over the full unpruned word set.
struct BoundedWordAlgebra {
  std::vector<std::pair<int, std::string>> elems;
  std::map<std::pair<int, std::string>, int> index;
  std::vector<int> ufp;
  std::vector<char> dead;

  static int word_tgt(int src, const std::string& w) {
    return w.empty() ? src : arrow_tgt[static_cast<size_t>(arrow_of_letter(w.back()))];
  }

  int find(int x) {
    while (ufp[static_cast<size_t>(x)] != x) {
      ufp[static_cast<size_t>(x)] = ufp[static_cast<size_t>(ufp[static_cast<size_t>(x)])];
      x = ufp[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return;
    ufp[static_cast<size_t>(rb)] = ra;
    dead[static_cast<size_t>(ra)] =
        static_cast<char>(dead[static_cast<size_t>(ra)] | dead[static_cast<size_t>(rb)]);
  }

  int add(int src, const std::string& w) {
    auto key = std::make_pair(src, w);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(elems.size());
    elems.push_back(key);
    index.emplace(key, id);
    ufp.push_back(id);
    dead.push_back(0);
    return id;
  }

  BoundedWordAlgebra(long long c, int cap) {
    for (int v = 0; v < 3; ++v) add(v, "");
    size_t first_of_level = 0;
    for (int len = 1; len <= cap; ++len) {
      size_t end = elems.size();
      for (size_t i = first_of_level; i < end; ++i) {
        auto [src, w] = elems[i];
        if (static_cast<int>(w.size()) != len - 1) continue;
        int t = word_tgt(src, w);
        for (int a = 0; a < 6; ++a)
          if (arrow_src[static_cast<size_t>(a)] == t)
            add(src, w + arrow_letter[static_cast<size_t>(a)]);
      }
      first_of_level = end;
    }

    std::vector<std::array<std::string, 2>> pairs = {
        {"bd", "klk"}, {"hg", "lkl"}, {"dl", "gbg"}, {"kh", "bgb"},
        {"lb", power_word("hd", c - 1, "h")},
        {"gk", power_word("dh", c - 1, "d")}};
    std::vector<std::string> zeros = {"gbd", "dhg", "lkh"};

    auto src_of_word = [](const std::string& w) {
      return arrow_src[static_cast<size_t>(arrow_of_letter(w.front()))];
    };
    for (auto& [u, v] : pairs) {
      int us = src_of_word(u), ut = word_tgt(us, u);
      for (auto& [psrc, pw] : elems) {
        if (word_tgt(psrc, pw) != us) continue;
        for (auto& [qsrc, qw] : elems) {
          if (qsrc != ut) continue;
          std::string wu = pw + u + qw, wv = pw + v + qw;
          if (static_cast<int>(wu.size()) > cap ||
              static_cast<int>(wv.size()) > cap)
            continue;
          unite(index.at({psrc, wu}), index.at({psrc, wv}));
        }
      }
    }
    for (auto& z : zeros) {
      int zs = src_of_word(z), zt = word_tgt(zs, z);
      for (auto& [psrc, pw] : elems) {
        if (word_tgt(psrc, pw) != zs) continue;
        for (auto& [qsrc, qw] : elems) {
          if (qsrc != zt) continue;
          std::string wz = pw + z + qw;
          if (static_cast<int>(wz.size()) > cap) continue;
          int i = index.at({psrc, wz});
          dead[static_cast<size_t>(find(i))] = 1;
        }
      }
    }
  }

  bool is_dead(int src, const std::string& w) {
    return dead[static_cast<size_t>(find(index.at({src, w})))];
  }
  int cls(int src, const std::string& w) { return find(index.at({src, w})); }
};

}  // namespace

TEST_CASE("quiver algebra at n=3") {
  QuiverAlgebra A = build_quiver_algebra(3);
  CHECK(A.dim == 24);
  CHECK(A.c == 2);
  CHECK(A.spanning_level == 5);
  CHECK(A.max_basis_length == 4);
  CHECK(A.center_dim == 7);
  std::array<std::array<int, 3>, 3> cartan = {{{4, 2, 2}, {2, 4, 2}, {2, 2, 4}}};
  CHECK(A.cartan == cartan);
  for (int a = 0; a < 6; ++a)
    CHECK(A.basis[static_cast<size_t>(A.gen[static_cast<size_t>(a)])] ==
          std::string(1, arrow_letter[static_cast<size_t>(a)]));
  for (int v = 0; v < 3; ++v)
    CHECK(A.basis[static_cast<size_t>(A.idem[static_cast<size_t>(v)])] ==
          "e" + std::to_string(v + 1));

  check_defining_relations(A);
  check_vanishing_triples(A);
  check_associativity(A);

  // corner structure
  CHECK(corner_words(A, 0, 0) ==
        std::vector<std::string>{"e1", "bg", "kl", "bgbg"});
  CHECK(corner_words(A, 1, 1) ==
        std::vector<std::string>{"e2", "gb", "dh", "gbgb"});
  CHECK(corner_words(A, 1, 2) == std::vector<std::string>{"d", "dhd"});
  CHECK(A.reduce_word("gbgb") == A.reduce_word("dhdh"));
  CHECK(A.reduce_word("bgbg") == A.reduce_word("klkl"));

  // the three canonical central elements
  CHECK(is_central(A, {A.reduce_word("bg"), A.reduce_word("gb")}));
  CHECK(is_central(A, {A.reduce_word("dh"), A.reduce_word("hd")}));
  CHECK(is_central(A, {A.reduce_word("kl"), A.reduce_word("lk")}));
  // ... and a non-central sanity probe
  CHECK_FALSE(is_central(A, {A.reduce_word("bg")}));

  // idempotent behaviour
  for (int i = 0; i < A.dim; ++i) {
    int e_s = A.idem[static_cast<size_t>(A.src[static_cast<size_t>(i)])];
    int e_t = A.idem[static_cast<size_t>(A.tgt[static_cast<size_t>(i)])];
    CHECK(A.product(e_s, i) == i);
    CHECK(A.product(i, e_t) == i);
  }
}

TEST_CASE("quiver algebra against the exhaustive bounded reconstruction") {
  QuiverAlgebra A = build_quiver_algebra(3);
  BoundedWordAlgebra O(2, 9);

  // gather every word of length <= 4 with its source
  std::vector<std::pair<int, std::string>> shorts;
  for (auto& [src, w] : O.elems)
    if (w.size() <= 4) shorts.emplace_back(src, w);
  CHECK(shorts.size() == 93);

  auto main_index = [&](int src, const std::string& w) {
    return w.empty() ? A.idem[static_cast<size_t>(src)] : A.reduce_word(w);
  };
  for (size_t i = 0; i < shorts.size(); ++i) {
    auto [si, wi] = shorts[i];
    int mi = main_index(si, wi);
    CHECK(O.is_dead(si, wi) == (mi < 0));
    for (size_t j = i + 1; j < shorts.size(); ++j) {
      auto [sj, wj] = shorts[j];
      int mj = main_index(sj, wj);
      if (mi < 0 || mj < 0) continue;
      CHECK((O.cls(si, wi) == O.cls(sj, wj)) == (mi == mj));
    }
  }
}

TEST_CASE("quiver algebra at n=4") {
  QuiverAlgebra A = build_quiver_algebra(4);
  CHECK(A.dim == 32);
  CHECK(A.c == 4);
  CHECK(A.spanning_level == 9);
  CHECK(A.max_basis_length == 7);
  CHECK(A.center_dim == 9);
  std::array<std::array<int, 3>, 3> cartan = {{{4, 2, 2}, {2, 6, 4}, {2, 4, 6}}};
  CHECK(A.cartan == cartan);
  check_defining_relations(A);
  check_vanishing_triples(A);
  check_associativity(A);
  CHECK(corner_words(A, 1, 2) ==
        std::vector<std::string>{"d", "dhd", "dhdhd", "dhdhdhd"});
  CHECK(A.reduce_word("gbgb") == A.reduce_word("dhdhdhdh"));
  CHECK(is_central(A, {A.reduce_word("bg"), A.reduce_word("gb")}));
}

TEST_CASE("quiver algebra at n=5") {
  QuiverAlgebra A = build_quiver_algebra(5);
  CHECK(A.dim == 48);
  CHECK(A.c == 8);
  CHECK(A.spanning_level == 17);
  CHECK(A.max_basis_length == 15);
  CHECK(A.center_dim == 13);
  std::array<std::array<int, 3>, 3> cartan = {
      {{4, 2, 2}, {2, 10, 8}, {2, 8, 10}}};
  CHECK(A.cartan == cartan);
  check_defining_relations(A);
  check_vanishing_triples(A);
  check_associativity(A);
}

TEST_CASE("quiver construction is deterministic") {
  QuiverAlgebra a = build_quiver_algebra(3);
  QuiverAlgebra b = build_quiver_algebra(3);
  CHECK(a.basis == b.basis);
  CHECK(a.mult == b.mult);
}

TEST_CASE("quiver failure modes") {
  QuiverOptions tight;
  tight.max_level = 4;
  CHECK_THROWS_AS(build_quiver_algebra(3, tight), std::runtime_error);
  QuiverOptions tiny;
  tiny.node_budget = 10;
  CHECK_THROWS_AS(build_quiver_algebra(3, tiny), std::runtime_error);
}
