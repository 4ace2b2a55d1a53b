#include "qblock/cyclo.hpp"

#include <limits>
#include <optional>

namespace qblock {

Cyclo Cyclo::zeta_pow(int m, long long e) {
  Cyclo x(m);
  long long period = 1LL << m;
  long long t = ((e % period) + period) % period;
  int d = x.dim();
  if (t < d)
    x.c_[static_cast<size_t>(t)] = Rational(1);
  else
    x.c_[static_cast<size_t>(t - d)] = Rational(-1);
  return x;
}

bool Cyclo::is_zero() const {
  for (const auto& r : c_)
    if (!r.is_zero()) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Cyclo Cyclo::operator-() const {
  Cyclo x(m_);
  for (size_t i = 0; i < c_.size(); ++i) x.c_[i] = -c_[i];
  return x;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  if (m_ != o.m_) throw std::logic_error("Cyclo: mixed levels");
  Cyclo x(m_);
  for (size_t i = 0; i < c_.size(); ++i) x.c_[i] = c_[i] + o.c_[i];
  return x;
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
  if (m_ != o.m_) throw std::logic_error("Cyclo: mixed levels");
  Cyclo x(m_);
  for (size_t i = 0; i < c_.size(); ++i) x.c_[i] = c_[i] - o.c_[i];
  return x;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  if (m_ != o.m_) throw std::logic_error("Cyclo: mixed levels");
  Cyclo x(m_);
  int d = dim();
  for (int i = 0; i < d; ++i) {
    if (c_[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (o.c_[j].is_zero()) continue;
      Rational t = c_[i] * o.c_[j];
      int k = i + j;
      if (k < d)
        x.c_[k] += t;
      else
        x.c_[k - d] -= t;
    }
  }
  return x;
}

Cyclo Cyclo::operator*(const Rational& r) const {
  Cyclo x(m_);
  for (size_t i = 0; i < c_.size(); ++i) x.c_[i] = c_[i] * r;
  return x;
}

Cyclo Cyclo::galois(long long s) const {
  if (s % 2 == 0) throw std::invalid_argument("Cyclo::galois: s must be odd");
  Cyclo x(m_);
  long long period = 1LL << m_;
  long long ss = ((s % period) + period) % period;
  int d = dim();
  for (int i = 0; i < d; ++i) {
    if (c_[i].is_zero()) continue;
    long long t = (i * ss) % period;
    if (t < d)
      x.c_[static_cast<size_t>(t)] += c_[i];
    else
      x.c_[static_cast<size_t>(t - d)] -= c_[i];
  }
  return x;
}

Rational Cyclo::norm() const {
  Cyclo p = from_rational(m_, Rational(1));
  long long period = 1LL << m_;
  for (long long s = 1; s < period; s += 2) p = p * galois(s);
  if (!p.is_rational()) throw std::logic_error("Cyclo::norm: not rational");
  return p.rational_part();
}

Cyclo Cyclo::embed(int m2) const {
  if (m2 < m_) throw std::invalid_argument("Cyclo::embed: target too small");
  Cyclo x(m2);
  int f = 1 << (m2 - m_);
  for (int i = 0; i < dim(); ++i) x.c_[static_cast<size_t>(i) * f] = c_[i];
  return x;
}

std::string Cyclo::str() const {
  std::string s = "[z" + std::to_string(1 << m_) + "]";
  bool any = false;
  for (int i = 0; i < dim(); ++i) {
    if (c_[i].is_zero()) continue;
    s += any ? " + " : " ";
    s += "(" + c_[i].str() + ")";
    if (i == 1) s += "*z";
    if (i > 1) s += "*z^" + std::to_string(i);
    any = true;
  }
  if (!any) s += " 0";
  return s;
}

namespace {

// Strips 2-adic content from an integer coefficient vector: each pass either
// divides all coordinates by 2 (worth e units) or multiplies by
// 1 + z + ... + z^(d-1) = 2/(1-z) and divides by 2 (worth one unit).  Stops
// when the vector is a unit, or once `cap` units have been seen (cap < 0
// means run to the end).  Returns nullopt if values would outgrow the type.
template <typename I>
std::optional<std::int64_t> strip_two_content(std::vector<I> z, std::int64_t e,
                                              std::int64_t cap, I guard) {
  const int d = static_cast<int>(z.size());
  std::int64_t count = 0;
  for (;;) {
    if (cap >= 0 && count >= cap) return count;
    bool all_even = true;
    for (const I& v : z)
      if (v % 2 != 0) {
        all_even = false;
        break;
      }
    if (all_even) {
      for (I& v : z) v /= 2;
      count += e;
      continue;
    }
    if (guard != 0) {
      I mx = 0;
      for (const I& v : z) {
        I a = v < 0 ? -v : v;
        if (a > mx) mx = a;
      }
      if (mx > guard) return std::nullopt;
    }
    // Multiply by the all-ones vector: with A_j = 1 the product has
    // coordinates y_k = sum_{i<=k} z_i - sum_{i>k} z_i = 2*prefix_k - total.
    I total = 0;
    for (const I& v : z) total += v;
    I pre = 0;
    bool y_even = true;
    std::vector<I> y(z.size());
    for (int k = 0; k < d; ++k) {
      pre += z[static_cast<size_t>(k)];
      y[static_cast<size_t>(k)] = 2 * pre - total;
      if (y[static_cast<size_t>(k)] % 2 != 0) y_even = false;
    }
    if (!y_even) return count;  // the vector was a unit
    for (int k = 0; k < d; ++k) z[static_cast<size_t>(k)] = y[static_cast<size_t>(k)] / 2;
    count += 1;
  }
}

std::int64_t pi_valuation_impl(const Cyclo& x, std::int64_t cap) {
  const int d = x.dim();
  const std::int64_t e = d;
  Integer den = 1;
  for (int i = 0; i < d; ++i) den = ilcm(den, x.coord(i).den());
  std::vector<Integer> z(static_cast<size_t>(d));
  bool fits = true;
  std::vector<long long> zs(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    z[static_cast<size_t>(i)] = x.coord(i).num() * (den / x.coord(i).den());
    if (fits && iabs(z[static_cast<size_t>(i)]) < Integer(1) << 56)
      zs[static_cast<size_t>(i)] = z[static_cast<size_t>(i)].convert_to<long long>();
    else
      fits = false;
  }
  std::int64_t shift = e * v2(den);
  std::int64_t capped = cap < 0 ? -1 : cap + shift;
  if (fits) {
    long long guard = std::numeric_limits<long long>::max() / (4 * d);
    auto fast = strip_two_content<long long>(zs, e, capped, guard);
    if (fast) return *fast - shift;
  }
  auto full = strip_two_content<Integer>(z, e, capped, Integer(0));
  return *full - shift;
}

}  // namespace

TwoVal cyclo_pi_valuation(const Cyclo& x) {
  if (x.is_zero()) return TwoVal::infinite();
  return TwoVal::of(pi_valuation_impl(x, -1));
}

bool cyclo_two_integral(const Cyclo& x, std::int64_t k) {
  if (x.is_zero()) return true;
  std::int64_t need = k * x.dim();
  return pi_valuation_impl(x, need < 0 ? 0 : need) >= need;
}

Integer galois_power_sum(int n, long long j) {
  if (n < 2) throw std::invalid_argument("galois_power_sum: n < 2");
  Integer total = 1;
  total += (j % 2 == 0) ? 1 : -1;
  for (int i = 2; i <= n - 1; ++i) {
    Cyclo s(i);
    for (long long u = 1; u < (1LL << i); u += 2) s += Cyclo::zeta_pow(i, u * j);
    if (!s.is_rational() || !s.rational_part().is_integer())
      throw std::logic_error("galois_power_sum: orbit sum not integral");
    total += s.rational_part().num();
  }
  return total;
}

}  // namespace qblock
