#include "qblock/quad.hpp"

namespace qblock {

namespace {

void require_3_mod_4(const Integer& q) {
  if (q % 4 != 3)
    throw std::invalid_argument("quad valuation: requires q = 3 mod 4");
}

}  // namespace

Integer hensel_sqrt_minus_q(const Integer& q, std::int64_t prec) {
  if (q % 8 != 7)
    throw std::invalid_argument("hensel_sqrt_minus_q: requires q = 7 mod 8");
  if (prec < 3) throw std::invalid_argument("hensel_sqrt_minus_q: prec < 3");
  // Lift r with r^2 = -q mod 2^k one bit at a time.  r^2 + q is the defect;
  // adding 2^(k-1) to odd r flips its bit k (valid once k >= 3).
  Integer r = 1;
  for (std::int64_t k = 3; k < prec; ++k) {
    Integer defect = r * r + q;
    if (boost::multiprecision::bit_test(defect, static_cast<unsigned>(k)))
      r += pow2(k - 1);
  }
  if ((r * r + q) % pow2(prec) != 0)
    throw std::logic_error("hensel_sqrt_minus_q: lift failed");
  return r;
}

TwoVal quad_two_valuation(const Quad& x) {
  require_3_mod_4(x.q());
  if (x.is_zero()) return TwoVal::infinite();
  // In the basis 1, w with w = (1 + sqrt(-q))/2 the maximal order completed
  // at 2 is a free Z_2-module, so the minimal valuation over the primes
  // above 2 is the minimum of the coordinate valuations.
  Rational u = x.a() - x.b();
  Rational v = x.b() + x.b();
  return min(u.two_val(), v.two_val());
}

TwoVal quad_two_valuation_embedding(const Quad& x) {
  if (x.q() % 8 != 7)
    throw std::invalid_argument(
        "quad_two_valuation_embedding: requires q = 7 mod 8");
  if (x.is_zero()) return TwoVal::infinite();
  if (x.is_rational()) return x.a().two_val();
  const Integer &na = x.a().num(), &da = x.a().den();
  const Integer &nb = x.b().num(), &db = x.b().den();
  std::int64_t den_val = v2(da) + v2(db);
  for (std::int64_t prec = 32;; prec *= 2) {
    if (prec > (std::int64_t(1) << 22))
      throw std::runtime_error("quad_two_valuation_embedding: precision blowup");
    Integer s = hensel_sqrt_minus_q(x.q(), prec);
    Integer z = na * db + nb * da * s;
    if (z == 0) continue;  // numerator smaller than the precision window
    std::int64_t v = v2(z);
    // s is exact mod 2^(prec-1); keep an 8-bit margin so v is trustworthy.
    if (v <= prec - 9) return TwoVal::of(v - den_val);
  }
}

bool quad_two_integral(const Quad& x, std::int64_t k) {
  return quad_two_valuation(x).at_least(k);
}

}  // namespace qblock
