#include "qblock/perfect.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qblock/cyclo.hpp"

namespace qblock {

namespace {

bool even_order(const ConjClass& c) { return c.element_order % 2 == 0; }

bool doubly_singular(const ConjClass& c) {
  // parameter odd <=> element order divisible by the full 2-part of q+1
  return c.kind == ClassKind::NonSplit && c.param % 2 != 0;
}

int check_rows(const SignedPermutation& sp, const CharacterTable& T) {
  const int m = static_cast<int>(T.chars.size());
  if (sp.size() != m)
    throw std::invalid_argument("bicharacter: permutation size != block rows");
  return m;
}

long long inv_mod(long long a, long long mod) {
  long long r0 = mod, r1 = ((a % mod) + mod) % mod, s0 = 0, s1 = 1;
  while (r1 != 0) {
    long long q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  if (r0 != 1) throw std::invalid_argument("inv_mod: not invertible");
  return ((s0 % mod) + mod) % mod;
}

// normalized matrix value mu(g,h) / |C(g)|, same-parity pairs only; one
// formula set covers both parities (the NonSplit diagonal self-zeroes
// whenever either theta0 value is +1, which covers every odd-order case)
Value expected_mu_normalized(const CharacterTable& T, const ConjClass& g,
                             const ConjClass& h) {
  const long long q = T.params.q;
  const Integer Q(q);
  auto quad = [&](Rational a, Rational b) {
    return Value(Quad(Q, std::move(a), std::move(b)));
  };
  using K = ClassKind;
  switch (g.kind) {
    case K::CentralI:
      switch (h.kind) {
        case K::CentralI:
          return Value(Rational(q + 1, Integer(q) * (q - 1)));
        case K::Split:
          return Value(Rational(2, Integer(q) * (q - 1)));
        case K::NonSplit:
          return Value(0);
        case K::Unipotent:
          return quad(Rational(1, Integer(q) * (q - 1)),
                      Rational(-h.tau, Integer(q) * (q - 1)));
      }
      break;
    case K::Split:
      switch (h.kind) {
        case K::CentralI:
          return Value(Rational(2 * (q + 1), q - 1));
        case K::Split:
          return Value(Rational(4, q - 1));
        case K::NonSplit:
          return Value(0);
        case K::Unipotent:
          return quad(Rational(2, q - 1), Rational(-2 * h.tau, q - 1));
      }
      break;
    case K::NonSplit: {
      if (h.kind != K::NonSplit) return Value(0);
      const long long tg = theta0(T.params, g), th = theta0(T.params, h);
      return Value(Rational(2 * (tg * th - tg - th + 1), q + 1));
    }
    case K::Unipotent:
      switch (h.kind) {
        case K::CentralI:
          return quad(Rational(q + 1, 2 * q), Rational(-g.tau * (q + 1), 2 * q));
        case K::Split:
          return quad(Rational(1, q), Rational(-g.tau, q));
        case K::NonSplit:
          return Value(0);
        case K::Unipotent:
          return quad(Rational(1 - q * g.tau * h.tau, 2 * q),
                      Rational(-(g.tau + h.tau), 2 * q));
      }
      break;
  }
  throw std::logic_error("expected_mu_normalized: unreachable");
}

}  // namespace

VirtualBicharacter VirtualBicharacter::zero(int num_classes) {
  VirtualBicharacter b;
  b.num_classes = num_classes;
  b.table.assign(static_cast<size_t>(num_classes),
                 std::vector<Value>(static_cast<size_t>(num_classes)));
  return b;
}

bool VirtualBicharacter::is_symmetric() const {
  for (int g = 0; g < num_classes; ++g)
    for (int h = g + 1; h < num_classes; ++h)
      if (table[g][h] != table[h][g]) return false;
  return true;
}

VirtualBicharacter VirtualBicharacter::operator+(
    const VirtualBicharacter& o) const {
  if (num_classes != o.num_classes)
    throw std::invalid_argument("bicharacter sum: size mismatch");
  VirtualBicharacter r = zero(num_classes);
  r.source = "(" + source + ") + (" + o.source + ")";
  for (int g = 0; g < num_classes; ++g)
    for (int h = 0; h < num_classes; ++h)
      r.table[g][h] = table[g][h] + o.table[g][h];
  return r;
}

VirtualBicharacter VirtualBicharacter::operator-(
    const VirtualBicharacter& o) const {
  if (num_classes != o.num_classes)
    throw std::invalid_argument("bicharacter difference: size mismatch");
  VirtualBicharacter r = zero(num_classes);
  r.source = "(" + source + ") - (" + o.source + ")";
  for (int g = 0; g < num_classes; ++g)
    for (int h = 0; h < num_classes; ++h)
      r.table[g][h] = table[g][h] - o.table[g][h];
  return r;
}

bool VirtualBicharacter::operator==(const VirtualBicharacter& o) const {
  return num_classes == o.num_classes && table == o.table;
}

VirtualBicharacter bichar_from_signed_perm(const SignedPermutation& sp,
                                           const CharacterTable& T) {
  const int m = check_rows(sp, T);
  const int nc = static_cast<int>(T.classes.size());
  VirtualBicharacter b = VirtualBicharacter::zero(nc);
  b.source = sp.str();
  // summed in row order: the short rows cancel any quadratic irrationality
  // among themselves before the cyclotomic tail rows contribute
  for (int i = 0; i < m; ++i) {
    const int t = sp.img[static_cast<size_t>(i)];
    const int j = std::abs(t) - 1;
    const bool neg = t < 0;
    for (int g = 0; g < nc; ++g)
      for (int h = 0; h < nc; ++h) {
        Value term = T.at(i, g) * T.at(j, h);
        if (neg)
          b.table[g][h] -= term;
        else
          b.table[g][h] += term;
      }
  }
  return b;
}

VirtualBicharacter identity_bicharacter(const CharacterTable& T) {
  const int m = static_cast<int>(T.chars.size());
  VirtualBicharacter b =
      bichar_from_signed_perm(SignedPermutation::identity(m), T);
  b.source = "identity";
  return b;
}

VirtualBicharacter build_iota0(const CharacterTable& T) {
  const int m = static_cast<int>(T.chars.size());
  VirtualBicharacter b = bichar_from_signed_perm(
      SignedPermutation::from_cycles(m, {{2, 4}, {-1, -3}, {-6}}), T);
  b.source = "iota0";
  return b;
}

VirtualBicharacter build_mu(const CharacterTable& T) {
  VirtualBicharacter a = identity_bicharacter(T) - build_iota0(T);

  // the displayed nine-term expansion, over the short rows only
  static const int terms[][3] = {{1, 1, 1},  {3, 3, 1},  {1, 3, 1},
                                 {3, 1, 1},  {2, 2, 1},  {4, 4, 1},
                                 {2, 4, -1}, {4, 2, -1}, {6, 6, 2}};
  const int nc = static_cast<int>(T.classes.size());
  VirtualBicharacter b = VirtualBicharacter::zero(nc);
  for (const auto& t : terms) {
    const int i = t[0] - 1, j = t[1] - 1;
    const Value coeff(t[2]);
    for (int g = 0; g < nc; ++g)
      for (int h = 0; h < nc; ++h)
        b.table[g][h] += coeff * (T.at(i, g) * T.at(j, h));
  }
  if (!(a == b))
    throw std::logic_error(
        "build_mu: difference construction and nine-term expansion disagree");
  b.source = "mu";
  return b;
}

VirtualBicharacter build_iota1(const CharacterTable& T) {
  const int m = static_cast<int>(T.chars.size());
  const int nc = static_cast<int>(T.classes.size());
  VirtualBicharacter b = VirtualBicharacter::zero(nc);
  b.source = "iota1";
  for (int r = 6; r < m; ++r) {
    const int p = T.theta0_partner[static_cast<size_t>(r)];
    if (p == r) continue;  // self-paired row contributes nothing
    for (int g = 0; g < nc; ++g)
      for (int h = 0; h < nc; ++h)
        b.table[g][h] += T.at(r, g) * (T.at(r, h) - T.at(p, h));
  }
  if (!b.is_symmetric()) throw std::logic_error("iota1: not symmetric");
  for (int g = 0; g < nc; ++g)
    for (int h = 0; h < nc; ++h)
      if (!b.table[g][h].is_zero() &&
          !(doubly_singular(T.classes[static_cast<size_t>(g)]) &&
            doubly_singular(T.classes[static_cast<size_t>(h)])))
        throw std::logic_error("iota1: nonzero outside doubly-singular pairs");
  return b;
}

PerfectnessReport check_perfect(const VirtualBicharacter& b,
                                const CharacterTable& T) {
  const int nc = static_cast<int>(T.classes.size());
  if (b.num_classes != nc)
    throw std::invalid_argument("check_perfect: class count mismatch");
  PerfectnessReport R;
  for (int g = 0; g < nc; ++g) {
    const ConjClass& cg = T.classes[static_cast<size_t>(g)];
    for (int h = 0; h < nc; ++h) {
      const ConjClass& ch = T.classes[static_cast<size_t>(h)];
      const Value& v = b.at(g, h);
      if (v.is_zero()) continue;
      if (even_order(cg) != even_order(ch))
        R.separation.push_back({g, h, v});
      const ConjClass* sides[2] = {&cg, &ch};
      const char names[2] = {'g', 'h'};
      for (int s = 0; s < 2; ++s) {
        const std::int64_t k = v2(sides[s]->centralizer_order);
        if (!v.two_integral(k)) {
          auto [val, unit] = v.two_valuation_with_unit();
          R.integrality.push_back({g, h, names[s], k, unit, v, val.str()});
        }
      }
    }
  }
  return R;
}

MuPropertiesReport verify_mu_properties(const CharacterTable& T) {
  const VirtualBicharacter mu = build_mu(T);
  const int nc = static_cast<int>(T.classes.size());
  MuPropertiesReport R;
  auto note = [&](const std::string& s) {
    if (R.detail.empty()) R.detail = s;
  };
  for (int g = 0; g < nc; ++g) {
    const ConjClass& cg = T.classes[static_cast<size_t>(g)];
    for (int h = 0; h < nc; ++h) {
      const ConjClass& ch = T.classes[static_cast<size_t>(h)];
      const Value& v = mu.at(g, h);
      const bool eg = even_order(cg), eh = even_order(ch);
      if (eg != eh) {
        if (!v.is_zero()) {
          R.mixed_parity_zero = false;
          note("mu nonzero across parity at (" + cg.label + ", " + ch.label +
               "): " + v.str());
        }
        continue;
      }
      // same parity: entry must match the normalized matrix times |C(g)|
      const Value want =
          expected_mu_normalized(T, cg, ch) * Value(Rational(cg.centralizer_order));
      if (v != want) {
        R.matrix_match = false;
        note("mu(" + cg.label + ", " + ch.label + ") = " + v.str() +
             ", matrix gives " + want.str());
      }
      const bool ds = doubly_singular(cg) && doubly_singular(ch);
      if (ds) R.doubly_singular_pairs.emplace_back(g, h);
      const bool ok = v.two_integral(v2(cg.centralizer_order)) &&
                      v.two_integral(v2(ch.centralizer_order));
      if (!ok) {
        if (ds) {
          R.exceptional_failures.emplace_back(g, h);
        } else if (!eg) {
          R.odd_pairs_integral = false;
          note("non-integral mu at odd pair (" + cg.label + ", " + ch.label +
               ")");
        } else {
          R.even_pairs_integral_outside_exception = false;
          note("non-integral mu at even pair (" + cg.label + ", " + ch.label +
               ")");
        }
      }
    }
  }
  return R;
}

long long doubly_singular_z(const CharacterTable& T, int g, int h) {
  const ConjClass& cg = T.classes.at(static_cast<size_t>(g));
  const ConjClass& ch = T.classes.at(static_cast<size_t>(h));
  if (!doubly_singular(cg) || !doubly_singular(ch))
    throw std::invalid_argument("doubly_singular_z: pair is not doubly singular");
  const long long mod = 1LL << (T.params.n - 1);
  return (ch.param % mod) * inv_mod(cg.param, mod) % mod;
}

Integer n_of_z(int n, long long z) {
  return galois_power_sum(n, 1 + z) + galois_power_sum(n, 1 - z) +
         galois_power_sum(n, -1 + z) + galois_power_sum(n, -1 - z);
}

SignedPermutation inversion_isometry(const CharacterTable& T) {
  const int m = static_cast<int>(T.chars.size());
  const int nc = static_cast<int>(T.classes.size());
  SignedPermutation sp;
  sp.img.assign(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    int found = 0;
    for (int j = 0; j < m; ++j)
      for (int s : {1, -1}) {
        bool match = true;
        for (int c = 0; c < nc && match; ++c) {
          Value rhs = T.at(j, c);
          if (s < 0) rhs = -rhs;
          match = T.at(i, T.inverse_class[static_cast<size_t>(c)]) == rhs;
        }
        if (match) {
          sp.img[static_cast<size_t>(i)] = s * (j + 1);
          ++found;
        }
      }
    if (found != 1)
      throw std::logic_error("inversion_isometry: row " + std::to_string(i + 1) +
                             " matched " + std::to_string(found) + " rows");
  }
  return sp;
}

CosetCoverReport perfect_coset_cover(const std::set<SignedPermutation>& group,
                                     const CharacterTable& T) {
  const int m = static_cast<int>(T.chars.size());
  const int l = static_cast<int>(T.l);
  CosetCoverReport R;
  R.group_size = group.size();

  // left cosets of the unsigned tail symmetric group: short-row images and
  // per-source tail signs are coset invariants that determine the coset
  std::map<std::vector<int>, SignedPermutation> reps;
  for (const SignedPermutation& sp : group) {
    check_rows(sp, T);
    std::vector<int> key = sp.img;
    for (int& v : key)
      if (std::abs(v) > 6) v = v > 0 ? m + 1 : -(m + 1);
    // canonical coset member: tail targets reassigned in ascending order
    // over the sources that hit them (signs kept), so the identity/twist
    // candidates below test meaningful arrangements
    SignedPermutation canon = sp;
    int next_target = 7;
    for (size_t i = 0; i < canon.img.size(); ++i)
      if (std::abs(sp.img[i]) > 6) {
        canon.img[i] = sp.img[i] > 0 ? next_target : -next_target;
        ++next_target;
      }
    reps.emplace(std::move(key), std::move(canon));
  }

  const SignedPermutation id = SignedPermutation::identity(m);
  SignedPermutation twist = id;
  for (int r = 6; r < m; ++r)
    twist.img[static_cast<size_t>(r)] = T.theta0_partner[static_cast<size_t>(r)] + 1;

  for (auto& [key, rep] : reps) {
    CosetCoverReport::Family fam;
    fam.representative = rep;
    auto attempt = [&](const SignedPermutation& sigma) {
      if (!check_perfect(bichar_from_signed_perm(sigma.compose(rep), T), T)
               .perfect())
        return false;
      fam.covered = true;
      fam.tail_sigma = sigma;
      fam.needed_twist = !(sigma == id);
      return true;
    };
    if (!attempt(id) && !attempt(twist)) {
      std::vector<int> p(static_cast<size_t>(l));
      std::iota(p.begin(), p.end(), 0);
      do {
        SignedPermutation sigma = id;
        for (int i = 0; i < l; ++i)
          sigma.img[static_cast<size_t>(6 + i)] = 7 + p[static_cast<size_t>(i)];
        if (sigma == id || sigma == twist) continue;
        if (attempt(sigma)) break;
      } while (std::next_permutation(p.begin(), p.end()));
    }
    R.families.push_back(std::move(fam));
  }
  R.full_cover =
      std::all_of(R.families.begin(), R.families.end(),
                  [](const CosetCoverReport::Family& f) { return f.covered; });
  return R;
}

}  // namespace qblock
