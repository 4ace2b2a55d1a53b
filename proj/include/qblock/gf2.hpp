#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qblock {

// Dense bit vector over GF(2).
class Gf2Vec {
 public:
  explicit Gf2Vec(int n) : n_(n), w_((n + 63) / 64, 0) {
    if (n < 0) throw std::invalid_argument("Gf2Vec: negative size");
  }

  int size() const { return n_; }

  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool b) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (b)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(int i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  Gf2Vec& operator^=(const Gf2Vec& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }

  bool is_zero() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  // Index of the lowest set bit, -1 when zero.
  int lowest_set() const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) {
        int b = 0;
        std::uint64_t w = w_[k];
        while (!(w & 1)) {
          w >>= 1;
          ++b;
        }
        return static_cast<int>(k) * 64 + b;
      }
    return -1;
  }

  bool operator==(const Gf2Vec& o) const { return n_ == o.n_ && w_ == o.w_; }

 private:
  int n_;
  std::vector<std::uint64_t> w_;
};

// Rank of the row span.
inline int gf2_rank(std::vector<Gf2Vec> rows) {
  int rank = 0;
  size_t nrows = rows.size();
  for (size_t r = 0; r < nrows; ++r) {
    int p = rows[r].lowest_set();
    if (p < 0) continue;
    for (size_t r2 = 0; r2 < nrows; ++r2)
      if (r2 != r && rows[r2].get(p)) rows[r2] ^= rows[r];
    ++rank;
  }
  return rank;
}

// Basis of { v : A v = 0 } for the matrix with the given rows, each of
// length ncols.
inline std::vector<Gf2Vec> gf2_nullspace(std::vector<Gf2Vec> rows, int ncols) {
  for (const auto& r : rows)
    if (r.size() != ncols) throw std::invalid_argument("gf2_nullspace: shape");
  // Row echelon, remembering which column each surviving row pivots on.
  std::vector<int> pivot_col;
  std::vector<Gf2Vec> basis;
  std::vector<Gf2Vec> ech;
  for (auto& row : rows) {
    for (size_t k = 0; k < ech.size(); ++k)
      if (row.get(pivot_col[k])) row ^= ech[k];
    int p = row.lowest_set();
    if (p < 0) continue;
    // Back-eliminate so every pivot column has a single 1.
    for (size_t k = 0; k < ech.size(); ++k)
      if (ech[k].get(p)) ech[k] ^= row;
    ech.push_back(row);
    pivot_col.push_back(p);
  }
  std::vector<int> pivot_of_col(ncols, -1);
  for (size_t k = 0; k < ech.size(); ++k) pivot_of_col[pivot_col[k]] = static_cast<int>(k);
  for (int c = 0; c < ncols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    Gf2Vec v(ncols);
    v.set(c, true);
    for (size_t k = 0; k < ech.size(); ++k)
      if (ech[k].get(c)) v.set(pivot_col[k], true);
    basis.push_back(v);
  }
  return basis;
}

}  // namespace qblock
