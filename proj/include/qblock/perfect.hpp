#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qblock/isometry.hpp"
#include "qblock/sl2char.hpp"
#include "qblock/value.hpp"

namespace qblock {

// (class x class)-indexed table of exact values attached to a candidate
// isometry of the principal block.
struct VirtualBicharacter {
  int num_classes = 0;
  std::string source;
  std::vector<std::vector<Value>> table;

  static VirtualBicharacter zero(int num_classes);
  Value& at(int g, int h) { return table[g][h]; }
  const Value& at(int g, int h) const { return table[g][h]; }
  bool is_symmetric() const;

  VirtualBicharacter operator+(const VirtualBicharacter& o) const;
  VirtualBicharacter operator-(const VirtualBicharacter& o) const;
  bool operator==(const VirtualBicharacter& o) const;
};

// value at (g,h) = sum_i sign_i * chi_i(g) * chi_{|sp(i)|}(h), accumulated
// in row order 1..6 then the tail; throws mixed_value_error if a genuinely
// mixed quadratic/cyclotomic sum ever arises (it does not for lattice
// isometries, where the quadratic parts cancel before the tail is reached).
VirtualBicharacter bichar_from_signed_perm(const SignedPermutation& sp,
                                           const CharacterTable& T);
VirtualBicharacter identity_bicharacter(const CharacterTable& T);

// the bicharacter of (2,4)(-1,-3)(-6) with identity tail
VirtualBicharacter build_iota0(const CharacterTable& T);

// mu = sum chi_i chi_i - iota0; built both from that definition and from
// the displayed 9-term formula, asserting the two agree entrywise
VirtualBicharacter build_mu(const CharacterTable& T);

// iota1 = sum over tail rows of chi(g)*(chi(h) - chi_twisted(h)) where the
// twist pairs each theta row with the theta*theta0 row; asserts symmetry
// and that entries vanish unless both element orders are divisible by
// 2^(n-1)
VirtualBicharacter build_iota1(const CharacterTable& T);

struct PerfectnessReport {
  struct SeparationViolation {
    int g = 0, h = 0;
    Value value;
  };
  struct IntegralityViolation {
    int g = 0, h = 0;
    char side = 'g';        // which centralizer the quotient used
    std::int64_t need = 0;  // required valuation, in 1/unit steps
    std::int64_t unit = 1;
    Value value;
    std::string have;  // the entry's actual valuation
  };
  std::vector<SeparationViolation> separation;
  std::vector<IntegralityViolation> integrality;
  bool perfect() const { return separation.empty() && integrality.empty(); }
};

// Broué conditions: values vanish across odd/even element-order mixtures,
// and every value divided by either centralizer order is 2-adically
// integral.  Violations are listed in class-pair order.
PerfectnessReport check_perfect(const VirtualBicharacter& b,
                                const CharacterTable& T);

// Survey of mu over all class pairs: mixed parity forces zero, same-parity
// quotients are integral except possibly on doubly-singular NonSplit
// pairs, and every same-parity value matches the displayed 4x4 normalized
// matrix (rows = g side, divided by |C(g)|; one parity-uniform formula
// set, with the (3,3) entry nonzero only when both theta0 values are -1).
struct MuPropertiesReport {
  bool mixed_parity_zero = true;
  bool odd_pairs_integral = true;
  bool even_pairs_integral_outside_exception = true;
  bool matrix_match = true;
  std::vector<std::pair<int, int>> doubly_singular_pairs;
  std::vector<std::pair<int, int>> exceptional_failures;
  std::string detail;
  bool clean() const {
    return mixed_parity_zero && odd_pairs_integral &&
           even_pairs_integral_outside_exception && matrix_match;
  }
};
MuPropertiesReport verify_mu_properties(const CharacterTable& T);

// odd z with theta(h) = theta(g^z) for all two-power theta; both classes
// must be NonSplit with parameter of maximal 2-order
long long doubly_singular_z(const CharacterTable& T, int g, int h);

// 2^(n-1) * (number of j in {1+z, 1-z, -1+z, -1-z} divisible by 2^(n-1)),
// computed through the Galois power sums
Integer n_of_z(int n, long long z);

// row permutation induced by class inversion, recovered from the table by
// matching value vectors (each row composed with inversion must equal a
// signed row)
SignedPermutation inversion_isometry(const CharacterTable& T);

// Factorization check: every group element phi must split as sigma . phi2
// with sigma an unsigned permutation of the tail coordinates and phi2
// perfect.  Left cosets of the tail symmetric group are searched with the
// identity and the theta0-twist pairing tried first.
struct CosetCoverReport {
  struct Family {
    SignedPermutation representative;
    bool covered = false;
    SignedPermutation tail_sigma;  // relative tail permutation that worked
    bool needed_twist = false;     // tail_sigma is not the identity
  };
  bool full_cover = false;
  std::size_t group_size = 0;
  std::vector<Family> families;
};
CosetCoverReport perfect_coset_cover(const std::set<SignedPermutation>& group,
                                     const CharacterTable& T);

}  // namespace qblock
