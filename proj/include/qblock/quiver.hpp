#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qblock {

// Triangle quiver on vertices 0,1,2 with two arrows between each adjacent
// pair, composed left to right:
//   b:0->1  g:1->0  d:1->2  h:2->1  k:0->2  l:2->0
enum Arrow : int { A_b = 0, A_g, A_d, A_h, A_k, A_l };

constexpr std::array<int, 6> arrow_src = {0, 1, 1, 2, 0, 2};
constexpr std::array<int, 6> arrow_tgt = {1, 0, 2, 1, 2, 0};
constexpr std::array<char, 6> arrow_letter = {'b', 'g', 'd', 'h', 'k', 'l'};

int arrow_of_letter(char ch);

struct QuiverOptions {
  // Hard cap on path length; 0 means the default 2c+8.
  int max_level = 0;
  std::int64_t node_budget = 200000000;
};

// The bound quiver algebra over GF(2) at parameter n >= 3 (c = 2^(n-2)),
// presented by its basis of path classes and their multiplication table.
// The construction enumerates bounded paths, identifies them with
// union-find driven by the defining relations (over GF(2) every relation
// instance is a one- or two-term path vector), and certifies the result:
// some length with every path equal to zero makes the short classes span,
// and the class count matching 16 + 2^n makes them a basis.
struct QuiverAlgebra {
  int n = 0;
  std::int64_t c = 0;
  int dim = 0;             // == 16 + 2^n once certified
  int spanning_level = 0;  // least length at which every path vanishes
  int max_basis_length = 0;
  std::array<std::array<int, 3>, 3> cartan{};
  int center_dim = 0;

  std::vector<std::string> basis;  // canonical words; "e1".."e3" idempotents
  std::vector<int> src, tgt;       // vertex data per basis element
  // mult[i][j]: basis index of the product, -1 when the product is zero
  std::vector<std::vector<int>> mult;
  std::array<int, 3> idem{};  // basis index of each trivial path
  std::array<int, 6> gen{};   // basis index of each arrow

  // Product with -1 propagation.
  int product(int i, int j) const {
    if (i < 0 || j < 0) return -1;
    return mult[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  // Class of a nonempty word over the arrow letters; -1 when zero (or not
  // composable, which is the same thing in the path algebra).
  int reduce_word(const std::string& word) const;
};

QuiverAlgebra build_quiver_algebra(int n, const QuiverOptions& opt = {});

// GF(2) basis of the center, each element given as the sorted set of basis
// indices it sums (all of them diagonal, src == tgt).
std::vector<std::vector<int>> center_basis(const QuiverAlgebra& A);

}  // namespace qblock
