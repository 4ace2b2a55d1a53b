#pragma once

#include "qblock/rational.hpp"

namespace qblock {

// Element a + b*sqrt(-q) of the imaginary quadratic field Q(sqrt(-q)),
// q a positive odd integer (prime in all uses here).
class Quad {
 public:
  Quad(Integer q, Rational a, Rational b)
      : q_(std::move(q)), a_(std::move(a)), b_(std::move(b)) {
    if (q_ <= 0 || q_ % 2 == 0)
      throw std::invalid_argument("Quad: q must be a positive odd integer");
  }

  const Integer& q() const { return q_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  Quad operator-() const { return Quad(q_, -a_, -b_); }
  Quad operator+(const Quad& o) const {
    check_same_field(o);
    return Quad(q_, a_ + o.a_, b_ + o.b_);
  }
  Quad operator-(const Quad& o) const {
    check_same_field(o);
    return Quad(q_, a_ - o.a_, b_ - o.b_);
  }
  Quad operator*(const Quad& o) const {
    check_same_field(o);
    return Quad(q_, a_ * o.a_ - Rational(q_) * b_ * o.b_,
                a_ * o.b_ + b_ * o.a_);
  }
  Quad operator*(const Rational& r) const { return Quad(q_, a_ * r, b_ * r); }

  Quad conj() const { return Quad(q_, a_, -b_); }
  Rational norm() const { return a_ * a_ + Rational(q_) * b_ * b_; }
  Rational trace() const { return a_ + a_; }

  bool operator==(const Quad& o) const {
    return q_ == o.q_ && a_ == o.a_ && b_ == o.b_;
  }
  bool operator!=(const Quad& o) const { return !(*this == o); }

  std::string str() const {
    return a_.str() + " + (" + b_.str() + ")*sqrt(-" + q_.str() + ")";
  }

 private:
  void check_same_field(const Quad& o) const {
    if (q_ != o.q_) throw std::logic_error("Quad: mixed fields");
  }

  Integer q_;
  Rational a_;
  Rational b_;
};

// Minimum of the valuations of x at the primes above 2, normalized so 2 has
// valuation 1.  Requires q = 3 mod 4 (so the 2-adic completion of the maximal
// order is spanned by 1 and (1+sqrt(-q))/2).  x/2^k is integral above 2 iff
// this is >= k.
TwoVal quad_two_valuation(const Quad& x);

// Valuation of x under the embedding sqrt(-q) -> s into Q_2, where s is the
// 2-adic square root of -q with s = 1 mod 4.  Requires q = 7 mod 8 (the split
// case).  Computed by Hensel lifting with an explicit precision margin.
TwoVal quad_two_valuation_embedding(const Quad& x);

// Whether x / 2^k is integral at every prime above 2.
bool quad_two_integral(const Quad& x, std::int64_t k);

// 2-adic square root of -q mod 2^prec, congruent to 1 mod 4.  Requires
// q = 7 mod 8 and prec >= 3.
Integer hensel_sqrt_minus_q(const Integer& q, std::int64_t prec);

}  // namespace qblock
