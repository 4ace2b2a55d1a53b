#include "qblock/quiver.hpp"

#include <algorithm>
#include <stdexcept>

#include "qblock/gf2.hpp"
#include "qblock/ints.hpp"

namespace qblock {

int arrow_of_letter(char ch) {
  for (int a = 0; a < 6; ++a)
    if (arrow_letter[static_cast<size_t>(a)] == ch) return a;
  throw std::invalid_argument(std::string("arrow_of_letter: '") + ch + "'");
}

namespace {

constexpr std::array<std::array<int, 2>, 3> out_arrows = {
    {{A_b, A_k}, {A_g, A_d}, {A_h, A_l}}};

int pair_of(int a) {
  switch (a) {
    case A_b:
    case A_g:
      return 0;
    case A_d:
    case A_h:
      return 1;
    default:
      return 2;
  }
}

using Word = std::vector<int8_t>;

std::string word_string(const Word& w) {
  std::string s;
  for (int8_t a : w) s += arrow_letter[static_cast<size_t>(a)];
  return s;
}

struct Relator {
  Word lhs, rhs;
};

// The defining relations: two-term identities plus three vanishing triples.
std::vector<Relator> make_relators(std::int64_t c) {
  auto w = [](std::initializer_list<int> xs) {
    Word r;
    for (int x : xs) r.push_back(static_cast<int8_t>(x));
    return r;
  };
  Word hdh, dhd;  // (hd)^(c-1) h and (dh)^(c-1) d
  for (std::int64_t i = 0; i < c - 1; ++i) {
    hdh.push_back(A_h);
    hdh.push_back(A_d);
    dhd.push_back(A_d);
    dhd.push_back(A_h);
  }
  hdh.push_back(A_h);
  dhd.push_back(A_d);
  return {
      {w({A_b, A_d}), w({A_k, A_l, A_k})},
      {w({A_h, A_g}), w({A_l, A_k, A_l})},
      {w({A_d, A_l}), w({A_g, A_b, A_g})},
      {w({A_k, A_h}), w({A_b, A_g, A_b})},
      {w({A_l, A_b}), hdh},
      {w({A_g, A_k}), dhd},
  };
}

const std::array<Word, 3> kill_triples = {
    Word{A_g, A_b, A_d}, Word{A_d, A_h, A_g}, Word{A_l, A_k, A_h}};

struct Builder {
  int n;
  std::int64_t c;
  int expected_dim;
  int cap;
  std::int64_t budget;
  std::vector<Relator> rels;

  // path tree, one entry per enumerated path
  std::vector<int32_t> par;
  std::vector<int8_t> larr;
  std::vector<int16_t> lev;
  std::vector<int8_t> sv, tv;
  std::vector<uint8_t> pmask;
  std::vector<uint8_t> dirt;
  std::vector<std::array<int32_t, 2>> child;
  // union-find over paths; kflag/rmin/rdisp live at class roots
  std::vector<int32_t> uf;
  std::vector<int32_t> ufsz;
  std::vector<uint8_t> kflag;
  std::vector<int32_t> rmin, rdisp;
  std::vector<std::vector<int32_t>> level_nodes;
  std::array<int32_t, 3> root{};
  Word scratch;

  Builder(int n_, const QuiverOptions& opt) : n(n_) {
    if (n < 3 || n > 20) throw std::invalid_argument("quiver: need 3 <= n <= 20");
    c = std::int64_t(1) << (n - 2);
    Integer dim_i = Integer(16) + pow2(n);
    if (dim_i > 1000000) throw std::invalid_argument("quiver: n too large");
    expected_dim = dim_i.convert_to<int>();
    cap = opt.max_level > 0 ? opt.max_level : static_cast<int>(2 * c + 8);
    budget = opt.node_budget;
    rels = make_relators(c);
    scratch.resize(static_cast<size_t>(cap) + 2 * static_cast<size_t>(c) + 4);
  }

  int find(int x) {
    while (uf[static_cast<size_t>(x)] != x) {
      uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
      x = uf[static_cast<size_t>(x)];
    }
    return x;
  }

  Word word_of(int x) const {
    Word w(static_cast<size_t>(lev[static_cast<size_t>(x)]));
    for (int i = lev[static_cast<size_t>(x)] - 1; i >= 0; --i) {
      w[static_cast<size_t>(i)] = larr[static_cast<size_t>(x)];
      x = par[static_cast<size_t>(x)];
    }
    return w;
  }

  bool word_less(int x, int y) const {
    if (lev[static_cast<size_t>(x)] != lev[static_cast<size_t>(y)])
      return lev[static_cast<size_t>(x)] < lev[static_cast<size_t>(y)];
    return word_of(x) < word_of(y);
  }

  bool shape_bad(int x) const {
    uint8_t m = pmask[static_cast<size_t>(x)];
    return (m & (m - 1)) != 0;  // more than one arrow pair used
  }

  bool disp_less(int x, int y) const {
    bool bx = shape_bad(x), by = shape_bad(y);
    if (bx != by) return by;
    return word_less(x, y);
  }

  void kill(int x) { kflag[static_cast<size_t>(find(x))] = 1; }

  void unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return;
    if (ufsz[static_cast<size_t>(rx)] < ufsz[static_cast<size_t>(ry)]) std::swap(rx, ry);
    uf[static_cast<size_t>(ry)] = rx;
    ufsz[static_cast<size_t>(rx)] += ufsz[static_cast<size_t>(ry)];
    kflag[static_cast<size_t>(rx)] |= kflag[static_cast<size_t>(ry)];
    if (word_less(rmin[static_cast<size_t>(ry)], rmin[static_cast<size_t>(rx)]))
      rmin[static_cast<size_t>(rx)] = rmin[static_cast<size_t>(ry)];
    if (disp_less(rdisp[static_cast<size_t>(ry)], rdisp[static_cast<size_t>(rx)]))
      rdisp[static_cast<size_t>(rx)] = rdisp[static_cast<size_t>(ry)];
  }

  int new_node(int p, int slot) {
    int a = p < 0 ? -1 : out_arrows[static_cast<size_t>(tv[static_cast<size_t>(p)])]
                                   [static_cast<size_t>(slot)];
    int id = static_cast<int>(uf.size());
    par.push_back(p);
    larr.push_back(static_cast<int8_t>(a));
    lev.push_back(p < 0 ? 0 : static_cast<int16_t>(lev[static_cast<size_t>(p)] + 1));
    sv.push_back(p < 0 ? 0 : sv[static_cast<size_t>(p)]);  // caller fixes roots
    tv.push_back(p < 0 ? 0 : static_cast<int8_t>(arrow_tgt[static_cast<size_t>(a)]));
    pmask.push_back(p < 0 ? 0
                          : static_cast<uint8_t>(pmask[static_cast<size_t>(p)] |
                                                 (1u << pair_of(a))));
    child.push_back({-1, -1});
    bool d = false;
    if (p >= 0 && lev.back() >= 3) {
      int y = larr[static_cast<size_t>(p)];
      int x = larr[static_cast<size_t>(par[static_cast<size_t>(p)])];
      for (const Word& t : kill_triples)
        if (x == t[0] && y == t[1] && a == t[2]) {
          d = true;
          break;
        }
    }
    dirt.push_back(d ? 1 : 0);
    uf.push_back(id);
    ufsz.push_back(1);
    kflag.push_back(d ? 1 : 0);
    rmin.push_back(id);
    rdisp.push_back(id);
    if (p >= 0) child[static_cast<size_t>(p)][static_cast<size_t>(slot)] = id;
    level_nodes[static_cast<size_t>(lev.back())].push_back(id);
    return id;
  }

  bool has_kill_triple(const int8_t* w, int len) const {
    for (int i = 0; i + 3 <= len; ++i)
      for (const Word& t : kill_triples)
        if (w[i] == t[0] && w[i + 1] == t[1] && w[i + 2] == t[2]) return true;
    return false;
  }

  int walk(const int8_t* w, int len) const {
    int cur = root[static_cast<size_t>(arrow_src[static_cast<size_t>(w[0])])];
    for (int i = 0; i < len; ++i) {
      int a = w[i];
      const auto& outs = out_arrows[static_cast<size_t>(tv[static_cast<size_t>(cur)])];
      int slot = (a == outs[1]) ? 1 : 0;
      if (outs[static_cast<size_t>(slot)] != a)
        throw std::logic_error("quiver walk: word not composable");
      int nxt = child[static_cast<size_t>(cur)][static_cast<size_t>(slot)];
      if (nxt < 0) throw std::logic_error("quiver walk: missing path node");
      cur = nxt;
    }
    return cur;
  }

  // Applies every relation instance visible inside the path `wnode`.
  // Instances whose rewritten companion is longer are recovered when the
  // companion path is scanned itself; companions containing a vanishing
  // triple force the whole path to zero.
  void scan(int wnode) {
    Word wd = word_of(wnode);
    int L = static_cast<int>(wd.size());
    int8_t* buf = scratch.data();
    for (const Relator& r : rels) {
      for (int sidesel = 0; sidesel < 2; ++sidesel) {
        const Word& u = sidesel ? r.rhs : r.lhs;
        const Word& v = sidesel ? r.lhs : r.rhs;
        int ul = static_cast<int>(u.size()), vl = static_cast<int>(v.size());
        if (ul > L) continue;
        for (int i = 0; i + ul <= L; ++i) {
          bool match = true;
          for (int j = 0; j < ul; ++j)
            if (wd[static_cast<size_t>(i + j)] != u[static_cast<size_t>(j)]) {
              match = false;
              break;
            }
          if (!match) continue;
          int cl = L - ul + vl;
          int pos = 0;
          for (int j = 0; j < i; ++j) buf[pos++] = wd[static_cast<size_t>(j)];
          for (int j = 0; j < vl; ++j) buf[pos++] = v[static_cast<size_t>(j)];
          for (int j = i + ul; j < L; ++j) buf[pos++] = wd[static_cast<size_t>(j)];
          if (has_kill_triple(buf, cl)) {
            kill(wnode);
            continue;
          }
          if (cl < L) unite(wnode, walk(buf, cl));
        }
      }
    }
  }

  bool level_fully_killed(int L) {
    for (int x : level_nodes[static_cast<size_t>(L)])
      if (!kflag[static_cast<size_t>(find(x))]) return false;
    return true;
  }

  // Alive classes among paths shorter than `limit`.
  std::vector<int32_t> alive_roots(int limit) {
    std::vector<int32_t> out;
    std::vector<uint8_t> seen(uf.size(), 0);
    for (int L = 0; L < limit; ++L)
      for (int x : level_nodes[static_cast<size_t>(L)]) {
        int r = find(x);
        if (kflag[static_cast<size_t>(r)] || seen[static_cast<size_t>(r)]) continue;
        seen[static_cast<size_t>(r)] = 1;
        out.push_back(r);
      }
    return out;
  }

  QuiverAlgebra run() {
    level_nodes.assign(static_cast<size_t>(cap) + 1, {});
    for (int v = 0; v < 3; ++v) {
      int id = new_node(-1, 0);
      sv[static_cast<size_t>(id)] = static_cast<int8_t>(v);
      tv[static_cast<size_t>(id)] = static_cast<int8_t>(v);
      root[static_cast<size_t>(v)] = id;
    }
    std::vector<uint8_t> done(static_cast<size_t>(cap) + 1, 0);
    for (int L = 1; L <= cap; ++L) {
      for (int z : level_nodes[static_cast<size_t>(L - 1)]) {
        if (dirt[static_cast<size_t>(z)]) continue;
        new_node(z, 0);
        new_node(z, 1);
      }
      if (static_cast<std::int64_t>(uf.size()) > budget)
        throw std::runtime_error("quiver: path budget exceeded");
      for (int w : level_nodes[static_cast<size_t>(L)])
        if (!dirt[static_cast<size_t>(w)]) scan(w);
      int fk = -1;
      for (int l2 = 1; l2 <= L; ++l2) {
        if (!done[static_cast<size_t>(l2)] && level_fully_killed(l2))
          done[static_cast<size_t>(l2)] = 1;
        if (done[static_cast<size_t>(l2)]) {
          fk = l2;
          break;
        }
      }
      if (fk < 0) continue;
      auto roots_alive = alive_roots(fk);
      int count = static_cast<int>(roots_alive.size());
      if (count < expected_dim)
        throw std::runtime_error(
            "quiver: class count fell below the dimension formula");
      if (count == expected_dim) return extract(fk, roots_alive);
    }
    throw std::runtime_error("quiver: not certified within the level cap");
  }

  QuiverAlgebra extract(int fk, std::vector<int32_t> roots_alive) {
    QuiverAlgebra A;
    A.n = n;
    A.c = c;
    A.dim = expected_dim;
    A.spanning_level = fk;

    std::sort(roots_alive.begin(), roots_alive.end(), [&](int x, int y) {
      int dx = rdisp[static_cast<size_t>(x)], dy = rdisp[static_cast<size_t>(y)];
      if (sv[static_cast<size_t>(dx)] != sv[static_cast<size_t>(dy)])
        return sv[static_cast<size_t>(dx)] < sv[static_cast<size_t>(dy)];
      if (tv[static_cast<size_t>(dx)] != tv[static_cast<size_t>(dy)])
        return tv[static_cast<size_t>(dx)] < tv[static_cast<size_t>(dy)];
      return word_less(dx, dy);
    });

    std::vector<int32_t> index_of(uf.size(), -1);
    for (size_t i = 0; i < roots_alive.size(); ++i)
      index_of[static_cast<size_t>(roots_alive[i])] = static_cast<int32_t>(i);

    A.basis.resize(roots_alive.size());
    A.src.resize(roots_alive.size());
    A.tgt.resize(roots_alive.size());
    A.max_basis_length = 0;
    for (size_t i = 0; i < roots_alive.size(); ++i) {
      int d = rdisp[static_cast<size_t>(roots_alive[i])];
      A.src[i] = sv[static_cast<size_t>(d)];
      A.tgt[i] = tv[static_cast<size_t>(d)];
      if (lev[static_cast<size_t>(d)] == 0)
        A.basis[i] = "e" + std::to_string(sv[static_cast<size_t>(d)] + 1);
      else
        A.basis[i] = word_string(word_of(d));
      A.max_basis_length =
          std::max(A.max_basis_length, static_cast<int>(lev[static_cast<size_t>(d)]));
    }
    for (int v = 0; v < 3; ++v)
      A.idem[static_cast<size_t>(v)] =
          index_of[static_cast<size_t>(find(root[static_cast<size_t>(v)]))];
    for (int a = 0; a < 6; ++a) {
      int8_t wa[1] = {static_cast<int8_t>(a)};
      A.gen[static_cast<size_t>(a)] = index_of[static_cast<size_t>(find(walk(wa, 1)))];
      if (A.gen[static_cast<size_t>(a)] < 0)
        throw std::logic_error("quiver: an arrow reduced to zero");
    }

    // Products by appending one arrow at a time, renormalizing to the
    // shortest class member so every step stays inside the enumerated tree.
    A.mult.assign(roots_alive.size(),
                  std::vector<int>(roots_alive.size(), -1));
    for (size_t i = 0; i < roots_alive.size(); ++i) {
      for (size_t j = 0; j < roots_alive.size(); ++j) {
        if (A.tgt[i] != A.src[j]) continue;
        int cur = roots_alive[i];
        Word wj = word_of(rmin[static_cast<size_t>(roots_alive[j])]);
        bool zero = false;
        for (int8_t a : wj) {
          int node = rmin[static_cast<size_t>(cur)];
          const auto& outs =
              out_arrows[static_cast<size_t>(tv[static_cast<size_t>(node)])];
          int slot = (a == outs[1]) ? 1 : 0;
          int nxt = child[static_cast<size_t>(node)][static_cast<size_t>(slot)];
          if (nxt < 0) throw std::logic_error("quiver: product walk left the tree");
          int r = find(nxt);
          if (kflag[static_cast<size_t>(r)]) {
            zero = true;
            break;
          }
          cur = r;
        }
        if (!zero) A.mult[i][j] = index_of[static_cast<size_t>(cur)];
      }
    }

    for (auto& row : A.cartan) row = {0, 0, 0};
    for (size_t i = 0; i < roots_alive.size(); ++i)
      A.cartan[static_cast<size_t>(A.src[i])][static_cast<size_t>(A.tgt[i])]++;

    A.center_dim = center_dimension(A);
    return A;
  }

  static int center_dimension(const QuiverAlgebra& A) {
    return static_cast<int>(center_basis(A).size());
  }
};

}  // namespace

// Centre as the nullspace of the commutator system: a central element must
// be diagonal (it commutes with the idempotents), so the unknowns range
// over the diagonal basis elements and the equations over the six arrows.
std::vector<std::vector<int>> center_basis(const QuiverAlgebra& A) {
  std::vector<int> diag;
  for (int i = 0; i < A.dim; ++i)
    if (A.src[static_cast<size_t>(i)] == A.tgt[static_cast<size_t>(i)])
      diag.push_back(i);
  int un = static_cast<int>(diag.size());
  std::vector<Gf2Vec> rows;
  for (int a = 0; a < 6; ++a) {
    int ga = A.gen[static_cast<size_t>(a)];
    for (int e = 0; e < A.dim; ++e) {
      Gf2Vec row(un);
      bool any = false;
      for (int t = 0; t < un; ++t) {
        int b = diag[static_cast<size_t>(t)];
        bool bit = (A.product(b, ga) == e) != (A.product(ga, b) == e);
        if (bit) {
          row.set(t, true);
          any = true;
        }
      }
      if (any) rows.push_back(row);
    }
  }
  std::vector<std::vector<int>> out;
  for (const Gf2Vec& v : gf2_nullspace(rows, un)) {
    std::vector<int> elem;
    for (int t = 0; t < un; ++t)
      if (v.get(t)) elem.push_back(diag[static_cast<size_t>(t)]);
    out.push_back(std::move(elem));
  }
  return out;
}

int QuiverAlgebra::reduce_word(const std::string& word) const {
  if (word.empty())
    throw std::invalid_argument("reduce_word: empty word");
  int cur = gen[static_cast<size_t>(arrow_of_letter(word[0]))];
  for (size_t i = 1; i < word.size() && cur >= 0; ++i)
    cur = product(cur, gen[static_cast<size_t>(arrow_of_letter(word[i]))]);
  return cur;
}

QuiverAlgebra build_quiver_algebra(int n, const QuiverOptions& opt) {
  Builder b(n, opt);
  return b.run();
}

}  // namespace qblock
