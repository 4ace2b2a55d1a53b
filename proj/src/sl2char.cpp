#include "qblock/sl2char.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "qblock/cyclo.hpp"
#include "qblock/quad.hpp"

namespace qblock {

namespace {

long long gcd_ll(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int v2_ll(long long x) {
  int v = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++v;
  }
  return v;
}

// theta(x) for the character of Z/(q+1) of order 2^m with odd exponent u,
// where x is a residue mod q+1.  Lands in the 2^m-th cyclotomic field and
// demotes whenever the value is rational.
Value theta_value(int m, long long u, long long x, long long modulus) {
  long long d = 1LL << m;
  if (modulus % d != 0) throw std::logic_error("order does not divide q+1");
  long long e = ((u % d) * (x % d)) % d;
  if (e < 0) e += d;
  return Value(Cyclo::zeta_pow(m, e));
}

int parity_sign(long long x) { return (x % 2 == 0) ? 1 : -1; }

}  // namespace

GroupParams make_group_params(long long q) {
  if (q < 3 || !is_prime(Integer(q)))
    throw std::invalid_argument("q must be an odd prime");
  if (q % 4 != 3) throw std::invalid_argument("q must be 3 mod 4");
  GroupParams P;
  P.q = q;
  P.n = v2_ll(q - 1) + v2_ll(q + 1);
  P.group_order = Integer(q) * (Integer(q) * q - 1);
  if (P.n < 3 || v2_ll(q - 1) != 1)
    throw std::logic_error("valuation pattern of q^2-1 is broken");
  return P;
}

long long find_q(int n) {
  if (n < 3) throw std::invalid_argument("n must be at least 3");
  if (n > 22) throw std::invalid_argument("n too large for the search cap");
  const long long step = 1LL << n;
  const long long cap = 10'000'000;
  for (long long q = (1LL << (n - 1)) - 1; q < cap; q += step) {
    if (q < 3 || !is_prime(Integer(q))) continue;
    if (v2_ll(q + 1) != n - 1 || v2_ll(q - 1) != 1 || q % 4 != 3)
      throw std::logic_error("congruence did not force the valuations");
    return q;
  }
  throw std::runtime_error("no prime found below the search cap");
}

std::vector<ConjClass> enumerate_classes(const GroupParams& P) {
  const long long q = P.q;
  std::vector<ConjClass> out;
  auto add = [&](ConjClass c) {
    c.size = P.group_order / c.centralizer_order;
    out.push_back(std::move(c));
  };

  for (int eps : {1, -1}) {
    ConjClass c;
    c.kind = ClassKind::CentralI;
    c.eps = eps;
    c.centralizer_order = P.group_order;
    c.element_order = (eps == 1) ? 1 : 2;
    c.label = (eps == 1) ? "I2" : "-I2";
    add(c);
  }
  for (long long a = 1; a <= (q - 3) / 2; ++a) {
    ConjClass c;
    c.kind = ClassKind::Split;
    c.param = a;
    c.centralizer_order = q - 1;
    c.element_order = (q - 1) / gcd_ll(a, q - 1);
    c.label = "d(" + std::to_string(a) + ")";
    add(c);
  }
  for (long long xi = 1; xi <= (q - 1) / 2; ++xi) {
    ConjClass c;
    c.kind = ClassKind::NonSplit;
    c.param = xi;
    c.centralizer_order = q + 1;
    c.element_order = (q + 1) / gcd_ll(xi, q + 1);
    c.label = "d'(" + std::to_string(xi) + ")";
    add(c);
  }
  for (int eps : {1, -1})
    for (int tau : {1, -1}) {
      ConjClass c;
      c.kind = ClassKind::Unipotent;
      c.eps = eps;
      c.tau = tau;
      c.centralizer_order = 2 * q;
      c.element_order = (eps == 1) ? q : 2 * q;
      c.label = std::string(eps == 1 ? "" : "-") + "u" + (tau == 1 ? "+" : "-");
      add(c);
    }

  Integer total = 0;
  for (const auto& c : out) total += c.size;
  if (total != P.group_order)
    throw std::logic_error("class sizes do not sum to the group order");
  return out;
}

int theta0(const GroupParams& P, const ConjClass& c) {
  if (c.kind != ClassKind::NonSplit)
    throw std::invalid_argument("theta0 expects a nonsplit torus class");
  int r = (v2(c.element_order) == P.n - 1) ? -1 : 1;
  int by_parity = parity_sign(c.param);
  if (r != by_parity)
    throw std::logic_error("order rule and parity rule disagree for theta0");
  return r;
}

int alpha0(const GroupParams& P, const ConjClass& c) {
  (void)P;
  if (c.kind != ClassKind::Split)
    throw std::invalid_argument("alpha0 expects a split torus class");
  int r = (c.element_order % 2 == 0) ? -1 : 1;
  int by_parity = parity_sign(c.param);
  if (r != by_parity)
    throw std::logic_error("order rule and parity rule disagree for alpha0");
  return r;
}

Value BlockCharacter::eval(const GroupParams& P, const ConjClass& c) const {
  const long long q = P.q;
  const Rational half(Integer(1), Integer(2));
  switch (family) {
    case Family::Trivial:
      return Value(Rational(1));
    case Family::RpTheta0:
    case Family::RmTheta0: {
      int s = (family == Family::RpTheta0) ? 1 : -1;
      switch (c.kind) {
        case ClassKind::CentralI:
          return Value(Rational(Integer(q - 1), Integer(2)));
        case ClassKind::Split:
          return Value(Rational(0));
        case ClassKind::NonSplit:
          return Value(Rational(-parity_sign(c.param)));
        case ClassKind::Unipotent:
          return Value(Quad(q, -half, Rational(s * c.tau) * half));
      }
      break;
    }
    case Family::Steinberg:
      switch (c.kind) {
        case ClassKind::CentralI:
          return Value(Rational(q));
        case ClassKind::Split:
          return Value(Rational(1));
        case ClassKind::NonSplit:
          return Value(Rational(-1));
        case ClassKind::Unipotent:
          return Value(Rational(0));
      }
      break;
    case Family::RpAlpha0:
    case Family::RmAlpha0: {
      int s = (family == Family::RpAlpha0) ? 1 : -1;
      switch (c.kind) {
        case ClassKind::CentralI:
          return Value(Rational(Integer(c.eps) * (q + 1), Integer(2)));
        case ClassKind::Split:
          return Value(Rational(parity_sign(c.param)));
        case ClassKind::NonSplit:
          return Value(Rational(0));
        case ClassKind::Unipotent:
          return Value(Quad(q, Rational(c.eps) * half,
                            Rational(c.eps * s * c.tau) * half));
      }
      break;
    }
    case Family::RTheta: {
      int m = v2_ll(theta_order);
      // -1 sits at residue (q+1)/2 in the nonsplit torus
      long long minus_one = (q + 1) / 2;
      switch (c.kind) {
        case ClassKind::CentralI: {
          Value te = (c.eps == 1)
                         ? Value(Rational(1))
                         : theta_value(m, theta_exp, minus_one, q + 1);
          return Value(Rational(q - 1)) * te;
        }
        case ClassKind::Split:
          return Value(Rational(0));
        case ClassKind::NonSplit: {
          Value t = theta_value(m, theta_exp, c.param, q + 1);
          Value tinv = theta_value(m, theta_exp, -c.param + (q + 1), q + 1);
          return Value(Rational(-1)) * (t + tinv);
        }
        case ClassKind::Unipotent: {
          Value te = (c.eps == 1)
                         ? Value(Rational(1))
                         : theta_value(m, theta_exp, minus_one, q + 1);
          return Value(Rational(-1)) * te;
        }
      }
      break;
    }
  }
  throw std::logic_error("unreachable character evaluation");
}

CharacterTable build_block_table(const GroupParams& P) {
  CharacterTable T;
  T.params = P;
  T.l = (1LL << (P.n - 2)) - 1;
  T.classes = enumerate_classes(P);

  using F = BlockCharacter::Family;
  auto push = [&](F fam, std::string label) {
    BlockCharacter ch;
    ch.family = fam;
    ch.index = static_cast<int>(T.chars.size()) + 1;
    ch.label = std::move(label);
    T.chars.push_back(std::move(ch));
  };
  push(F::Trivial, "1");
  push(F::RpTheta0, "R'+(theta0)");
  push(F::RmTheta0, "R'-(theta0)");
  push(F::Steinberg, "St");
  push(F::RpAlpha0, "R+(alpha0)");
  push(F::RmAlpha0, "R-(alpha0)");

  // one row per conjugate pair {theta, theta^-1} of 2-power order >= 4
  std::map<std::pair<long long, long long>, int> theta_row;
  for (int j = 2; j <= P.n - 1; ++j) {
    long long d = 1LL << j;
    for (long long u = 1; u < d / 2; u += 2) {
      BlockCharacter ch;
      ch.family = F::RTheta;
      ch.index = static_cast<int>(T.chars.size()) + 1;
      ch.theta_order = d;
      ch.theta_exp = u;
      ch.label =
          "R'(theta(" + std::to_string(d) + "," + std::to_string(u) + "))";
      theta_row[{d, u}] = static_cast<int>(T.chars.size());
      T.chars.push_back(std::move(ch));
    }
  }
  if (static_cast<long long>(T.chars.size()) != 6 + T.l)
    throw std::logic_error("character count does not match 6 + l");

  for (const auto& ch : T.chars) {
    std::vector<Value> row;
    row.reserve(T.classes.size());
    for (const auto& c : T.classes) row.push_back(ch.eval(P, c));
    T.values.push_back(std::move(row));
  }

  T.inverse_class.resize(T.classes.size());
  for (size_t i = 0; i < T.classes.size(); ++i) {
    const ConjClass& c = T.classes[i];
    if (c.kind != ClassKind::Unipotent) {
      T.inverse_class[i] = static_cast<int>(i);
      continue;
    }
    for (size_t k = 0; k < T.classes.size(); ++k) {
      const ConjClass& d = T.classes[k];
      if (d.kind == ClassKind::Unipotent && d.eps == c.eps && d.tau == -c.tau)
        T.inverse_class[i] = static_cast<int>(k);
    }
  }

  T.theta0_partner.resize(T.chars.size());
  for (size_t i = 0; i < T.chars.size(); ++i) {
    const BlockCharacter& ch = T.chars[i];
    if (ch.family != F::RTheta) {
      T.theta0_partner[i] = static_cast<int>(i);
      continue;
    }
    long long d = ch.theta_order;
    long long u = (ch.theta_exp + d / 2) % d;
    u = std::min(u, d - u);  // conjugate-pair representative
    T.theta0_partner[i] = theta_row.at({d, u});
  }
  return T;
}

}  // namespace qblock
