#include "qblock/value.hpp"

namespace qblock {

namespace {

Cyclo to_level(const Cyclo& c, int m) { return c.m() == m ? c : c.embed(m); }

// Shrinks a cyclotomic element to the smallest 2-power level carrying it.
Cyclo minimize(Cyclo c) {
  while (c.m() > 2) {
    bool only_even = true;
    for (int i = 1; i < c.dim(); i += 2)
      if (!c.coord(i).is_zero()) {
        only_even = false;
        break;
      }
    if (!only_even) break;
    Cyclo down(c.m() - 1);
    for (int i = 0; i < down.dim(); ++i) down.coord(i) = c.coord(2 * i);
    c = down;
  }
  return c;
}

}  // namespace

void Value::demote() {
  if (is_quad()) {
    if (as_quad().is_rational()) v_ = as_quad().a();
  } else if (is_cyclo()) {
    if (as_cyclo().is_rational())
      v_ = as_cyclo().rational_part();
    else
      v_ = minimize(as_cyclo());
  }
}

Value Value::operator-() const {
  if (is_rational()) return Value(-as_rational());
  if (is_quad()) return Value(-as_quad());
  return Value(-as_cyclo());
}

template <typename Op>
static Value combine(const Value& x, const Value& y, Op op,
                     const char* what) {
  if (x.is_rational() && y.is_rational())
    return Value(op(x.as_rational(), y.as_rational()));
  if (x.is_quad() || y.is_quad()) {
    if (x.is_cyclo() || y.is_cyclo())
      throw mixed_value_error(std::string(what) +
                              ": quadratic and cyclotomic irrationalities");
    if (x.is_quad() && y.is_quad() && x.as_quad().q() != y.as_quad().q())
      throw mixed_value_error(std::string(what) +
                              ": quadratic fields with different radicands");
    const Integer& q = x.is_quad() ? x.as_quad().q() : y.as_quad().q();
    auto lift = [&](const Value& v) {
      return v.is_quad() ? v.as_quad() : Quad(q, v.as_rational(), Rational(0));
    };
    return Value(op(lift(x), lift(y)));
  }
  int m = 2;
  if (x.is_cyclo()) m = std::max(m, x.as_cyclo().m());
  if (y.is_cyclo()) m = std::max(m, y.as_cyclo().m());
  auto lift = [&](const Value& v) {
    return v.is_cyclo() ? to_level(v.as_cyclo(), m)
                        : Cyclo::from_rational(m, v.as_rational());
  };
  return Value(op(lift(x), lift(y)));
}

Value Value::operator+(const Value& o) const {
  return combine(*this, o, [](const auto& a, const auto& b) { return a + b; },
                 "Value::operator+");
}

Value Value::operator-(const Value& o) const {
  return combine(*this, o, [](const auto& a, const auto& b) { return a - b; },
                 "Value::operator-");
}

Value Value::operator*(const Value& o) const {
  return combine(*this, o, [](const auto& a, const auto& b) { return a * b; },
                 "Value::operator*");
}

Value Value::conj() const {
  if (is_rational()) return *this;
  if (is_quad()) return Value(as_quad().conj());
  return Value(as_cyclo().conj());
}

bool Value::operator==(const Value& o) const {
  if (v_.index() != o.v_.index()) return false;
  if (is_rational()) return as_rational() == o.as_rational();
  if (is_quad()) return as_quad() == o.as_quad();
  return as_cyclo() == o.as_cyclo();
}

bool Value::two_integral(std::int64_t k) const {
  if (is_rational()) return as_rational().two_val().at_least(k);
  if (is_quad()) return quad_two_integral(as_quad(), k);
  return cyclo_two_integral(as_cyclo(), k);
}

std::pair<TwoVal, std::int64_t> Value::two_valuation_with_unit() const {
  if (is_rational()) return {as_rational().two_val(), 1};
  if (is_quad()) return {quad_two_valuation(as_quad()), 1};
  return {cyclo_pi_valuation(as_cyclo()), as_cyclo().dim()};
}

std::string Value::str() const {
  if (is_rational()) return as_rational().str();
  if (is_quad()) return as_quad().str();
  return as_cyclo().str();
}

}  // namespace qblock
