#pragma once

#include "qblock/cyclo.hpp"
#include "qblock/quad.hpp"

#include <cstdint>
#include <utility>
#include <variant>

namespace qblock {

// Raised when arithmetic would land outside the supported fields, e.g. the
// sum of an irrational quadratic and an irrational cyclotomic element.
struct mixed_value_error : std::runtime_error {
  explicit mixed_value_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Exact scalar from one of three fields: Q, Q(sqrt(-q)), or Q(zeta_{2^m}).
// Values are kept in their minimal field: a quadratic element with no
// irrational part becomes a Rational, a cyclotomic element is pushed down
// the 2-power tower as far as its support allows.  Arithmetic promotes
// rationals into either extension and embeds cyclotomics of different
// levels into the larger field; combining the two extension kinds throws
// mixed_value_error.
class Value {
 public:
  Value() : v_(Rational(0)) {}
  Value(long long n) : v_(Rational(n)) {}
  Value(Rational r) : v_(std::move(r)) {}
  Value(Quad q) : v_(std::move(q)) { demote(); }
  Value(Cyclo c) : v_(std::move(c)) { demote(); }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_quad() const { return std::holds_alternative<Quad>(v_); }
  bool is_cyclo() const { return std::holds_alternative<Cyclo>(v_); }

  const Rational& as_rational() const { return std::get<Rational>(v_); }
  const Quad& as_quad() const { return std::get<Quad>(v_); }
  const Cyclo& as_cyclo() const { return std::get<Cyclo>(v_); }

  bool is_zero() const {
    return is_rational() && as_rational().is_zero();
  }

  Value operator-() const;
  Value operator+(const Value& o) const;
  Value operator-(const Value& o) const;
  Value operator*(const Value& o) const;
  Value& operator+=(const Value& o) { return *this = *this + o; }
  Value& operator-=(const Value& o) { return *this = *this - o; }
  Value& operator*=(const Value& o) { return *this = *this * o; }

  Value conj() const;

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }

  // Whether this / 2^k is integral at every prime above 2.
  bool two_integral(std::int64_t k) const;

  // (valuation, unit): this / 2^k is integral above 2 iff
  // valuation >= k * unit.  unit is 1 for rational and quadratic values and
  // 2^(m-1) for cyclotomic ones.
  std::pair<TwoVal, std::int64_t> two_valuation_with_unit() const;

  std::string str() const;

 private:
  void demote();

  std::variant<Rational, Quad, Cyclo> v_;
};

}  // namespace qblock
