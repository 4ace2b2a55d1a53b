#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "qblock/ints.hpp"

namespace qblock {

using Mat3 = std::array<std::array<long long, 3>, 3>;

// (6+l) x 3 matrix over {0,1}; row order: (100),(010),(001),(111),(110),
// (101), then l copies of (011).
struct DecompositionMatrix {
  long long l = 0;
  std::vector<std::array<int, 3>> rows;
  int height() const { return static_cast<int>(rows.size()); }
};

DecompositionMatrix build_decomposition_matrix(long long l);
Mat3 cartan_of(const DecompositionMatrix& D);
Mat3 cartan_formula(int n);  // [[4,2,2],[2,2+c,c],[2,c,2+c]], c = 2^(n-2)

// All multisets of nonzero {0,1}^3 rows whose Gram matrix is C and whose
// total count is `rows`; each solution is a multiplicity vector over the
// 7 row types in the fixed order (100),(010),(001),(110),(101),(011),(111).
std::vector<std::array<long long, 7>> decomp_solutions(const Mat3& C,
                                                       long long rows);
extern const std::array<std::array<int, 3>, 7> kRowTypes;

// Signed permutation of {1,...,m}: img[i] = s*(j+1) means e_{i+1} -> s*e_{j+1}.
struct SignedPermutation {
  std::vector<int> img;

  int size() const { return static_cast<int>(img.size()); }
  static SignedPermutation identity(int m);
  static SignedPermutation negated_identity(int m);
  // cycles use the convention that (i1,...,ik) sends |i_j| to i_{j+1};
  // block_minus negates every coordinate in [first_minus, m] afterwards.
  static SignedPermutation from_cycles(
      int m, const std::vector<std::vector<int>>& cycles,
      int first_minus = 0);

  SignedPermutation compose(const SignedPermutation& other) const;  // this∘other
  SignedPermutation inverse() const;
  SignedPermutation negate() const;
  std::vector<Integer> apply(const std::vector<Integer>& x) const;
  std::string str() const;  // cycle notation
  bool operator<(const SignedPermutation& o) const { return img < o.img; }
  bool operator==(const SignedPermutation& o) const { return img == o.img; }
};

// Rank-3 sublattice of Z^m spanned by the columns of D, with exact
// membership via a column Hermite normal form.
struct ProjectiveLattice {
  int m = 0;
  std::vector<std::vector<Integer>> basis;  // 3 columns, each length m
  std::vector<std::vector<Integer>> hnf;    // column HNF of the basis
  std::vector<int> pivot_rows;

  bool contains(const std::vector<Integer>& v) const;
};

ProjectiveLattice build_projective_lattice(const DecompositionMatrix& D);
bool preserves_lattice(const SignedPermutation& sp, const ProjectiveLattice& L);

// Every signed permutation of Z^(6+l) mapping the lattice onto itself,
// enumerated through the 3x3 transformations M with M^T C M = C and the
// row transfer condition row_{pi(i)} * M = s_i * row_i.
std::set<SignedPermutation> enumerate_isometry_group(
    const DecompositionMatrix& D);

// Closure of the classification's generator list times the symmetric group
// on the tail coordinates {7,...,6+l}.
std::set<SignedPermutation> generated_isometry_set(long long l);

// The eight catalogued image rows: each entry carries the signed
// permutation and the images of the three projective columns it induces.
struct ImageTableRow {
  SignedPermutation phi;
  std::array<std::array<long long, 3>, 3> images;  // coefficient rows over P1..P3
  std::string description;
};
std::vector<ImageTableRow> image_table(long long l);
bool verify_image_table(const DecompositionMatrix& D, std::string* detail = nullptr);

}  // namespace qblock
