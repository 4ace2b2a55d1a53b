#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qblock {

using Integer = boost::multiprecision::cpp_int;

inline Integer iabs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer igcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(iabs(a), iabs(b));
}

inline Integer ilcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return iabs(a) / igcd(a, b) * iabs(b);
}

inline Integer pow2(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("pow2: negative exponent");
  return Integer(1) << static_cast<unsigned>(k);
}

// 2-adic valuation of a nonzero integer.
inline std::int64_t v2(const Integer& x) {
  if (x == 0) throw std::invalid_argument("v2: zero has no finite valuation");
  return static_cast<std::int64_t>(boost::multiprecision::lsb(iabs(x)));
}

// A valuation that may be +infinity (the value at 0).
struct TwoVal {
  bool inf = false;
  std::int64_t v = 0;

  static TwoVal infinite() { return TwoVal{true, 0}; }
  static TwoVal of(std::int64_t k) { return TwoVal{false, k}; }

  bool at_least(std::int64_t k) const { return inf || v >= k; }
  bool operator==(const TwoVal& o) const {
    return inf == o.inf && (inf || v == o.v);
  }

  TwoVal operator+(const TwoVal& o) const {
    if (inf || o.inf) return infinite();
    return of(v + o.v);
  }
  friend TwoVal min(const TwoVal& a, const TwoVal& b) {
    if (a.inf) return b;
    if (b.inf) return a;
    return of(a.v < b.v ? a.v : b.v);
  }
  std::string str() const { return inf ? "inf" : std::to_string(v); }
};

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (Integer d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace qblock
