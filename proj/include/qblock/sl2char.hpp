#pragma once

#include <string>
#include <vector>

#include "qblock/ints.hpp"
#include "qblock/value.hpp"

namespace qblock {

// Parameters of SL2(q) for an odd prime q = 3 mod 4.  n is the 2-adic
// valuation of q^2 - 1; the congruence class of q forces v2(q-1) = 1 and
// v2(q+1) = n - 1.
struct GroupParams {
  long long q = 0;
  int n = 0;
  Integer group_order;  // q(q^2-1)
};

GroupParams make_group_params(long long q);

// Smallest prime q = 2^(n-1) - 1 mod 2^n.  Search cap 10^7.
long long find_q(int n);

enum class ClassKind { CentralI, Split, NonSplit, Unipotent };

// Conjugacy class of SL2(q).  Split/NonSplit parameters are residues in
// Z/(q-1) resp. Z/(q+1), canonicalized into the lower half (x ~ -x under
// inversion).  eps/tau are the two sign parameters of the central and
// unipotent families.
struct ConjClass {
  ClassKind kind = ClassKind::CentralI;
  int eps = 1;
  int tau = 1;
  long long param = 0;
  Integer centralizer_order;
  Integer element_order;
  Integer size;
  std::string label;
};

std::vector<ConjClass> enumerate_classes(const GroupParams& P);

// The order-two characters of the cyclic groups of order q+1 and q-1,
// evaluated by the element-order rule and cross-checked against the
// exponent-parity rule.
int theta0(const GroupParams& P, const ConjClass& nonsplit_class);
int alpha0(const GroupParams& P, const ConjClass& split_class);

struct BlockCharacter {
  enum class Family {
    Trivial,
    RpTheta0,
    RmTheta0,
    Steinberg,
    RpAlpha0,
    RmAlpha0,
    RTheta
  };
  Family family = Family::Trivial;
  int index = 0;  // 1-based row number
  std::string label;
  long long theta_order = 0;  // 2^j >= 4, RTheta only
  long long theta_exp = 0;    // odd exponent u, RTheta only

  Value eval(const GroupParams& P, const ConjClass& c) const;
};

// The 6 + l characters of the principal 2-block, l = 2^(n-2) - 1, with
// exact values on every conjugacy class.
struct CharacterTable {
  GroupParams params;
  long long l = 0;
  std::vector<ConjClass> classes;
  std::vector<BlockCharacter> chars;
  std::vector<std::vector<Value>> values;  // [character][class]
  std::vector<int> inverse_class;   // class index of the inverse elements
  std::vector<int> theta0_partner;  // row index of R'(theta * theta0)

  const Value& at(int chi, int cls) const {
    return values[static_cast<size_t>(chi)][static_cast<size_t>(cls)];
  }
};

CharacterTable build_block_table(const GroupParams& P);

}  // namespace qblock
