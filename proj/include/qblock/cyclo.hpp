#pragma once

#include "qblock/rational.hpp"

#include <vector>

namespace qblock {

// Element of the cyclotomic field Q(zeta), zeta a primitive 2^m-th root of
// unity, m >= 2.  Stored in the power basis 1, zeta, ..., zeta^(d-1) with
// d = 2^(m-1) and the reduction zeta^d = -1.
class Cyclo {
 public:
  explicit Cyclo(int m) : m_(m), c_(check_dim(m)) {}

  static Cyclo from_rational(int m, const Rational& r) {
    Cyclo x(m);
    x.c_[0] = r;
    return x;
  }

  // zeta^e for any integer exponent e.
  static Cyclo zeta_pow(int m, long long e);

  int m() const { return m_; }
  int dim() const { return static_cast<int>(c_.size()); }
  const Rational& coord(int i) const { return c_.at(i); }
  Rational& coord(int i) { return c_.at(i); }

  bool is_zero() const;
  bool is_rational() const;
  const Rational& rational_part() const { return c_[0]; }

  Cyclo operator-() const;
  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator*(const Rational& r) const;
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }

  bool operator==(const Cyclo& o) const { return m_ == o.m_ && c_ == o.c_; }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // Field automorphism zeta -> zeta^s, s odd.
  Cyclo galois(long long s) const;
  Cyclo conj() const { return galois((1LL << m_) - 1); }

  // Product of all Galois conjugates; always rational.
  Rational norm() const;

  // Image in Q(zeta_{2^m2}), m2 >= m.
  Cyclo embed(int m2) const;

  std::string str() const;

 private:
  static int check_dim(int m) {
    if (m < 2 || m > 30) throw std::invalid_argument("Cyclo: bad m");
    return 1 << (m - 1);
  }

  int m_;
  std::vector<Rational> c_;
};

// Valuation of x at the unique prime above 2, in uniformizer units:
// pi = 1 - zeta has valuation 1 and 2 has valuation e = 2^(m-1).
TwoVal cyclo_pi_valuation(const Cyclo& x);

// Whether x / 2^k is integral at the prime above 2,
// i.e. pi-valuation >= k * 2^(m-1).
bool cyclo_two_integral(const Cyclo& x, std::int64_t k);

// Sum of chi(j) over all 2^(n-1) characters chi of a cyclic group of order
// 2^(n-1), computed order by order with exact cyclotomic arithmetic.
// Equals 2^(n-1) when 2^(n-1) divides j and 0 otherwise.
Integer galois_power_sum(int n, long long j);

}  // namespace qblock
