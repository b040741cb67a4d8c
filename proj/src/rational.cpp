#include "macscope/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace macscope {

std::string rat_to_string(const Rat& r) {
  return r.str();
}

std::optional<Rat> rat_from_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(s));
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return Rat(num, den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Int ipow(Int base, unsigned long exp) {
  Int result = 1;
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

std::optional<Int> exact_root(const Int& n, unsigned long k) {
  if (n < 0 || k == 0) return std::nullopt;
  if (n == 0 || n == 1 || k == 1) return n;
  // Newton template from double seed, then adjust.
  double seed = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k));
  Int r(static_cast<long long>(seed));
  if (r < 1) r = 1;
  while (ipow(r, k) > n) --r;
  while (ipow(r + 1, k) <= n) ++r;
  if (ipow(r, k) == n) return r;
  return std::nullopt;
}

std::optional<Rat> rat_pow(const Rat& base, const Rat& e) {
  Int a = numerator(e);
  Int b = denominator(e);
  if (base == 0) {
    if (e > 0) return Rat(0);
    if (e == 0) return Rat(1);
    return std::nullopt;
  }
  bool invert = a < 0;
  if (invert) a = -a;
  if (a > 1000000 || b > 1000000)
    throw std::overflow_error("rat_pow: exponent too large");
  unsigned long ua = a.convert_to<unsigned long>();
  unsigned long ub = b.convert_to<unsigned long>();
  Rat powered(ipow(numerator(base), ua), ipow(denominator(base), ua));
  Rat result;
  if (ub == 1) {
    result = powered;
  } else {
    if (powered < 0) return std::nullopt;
    auto rn = exact_root(numerator(powered), ub);
    auto rd = exact_root(denominator(powered), ub);
    if (!rn || !rd) return std::nullopt;
    result = Rat(*rn, *rd);
  }
  if (invert) {
    if (result == 0) return std::nullopt;
    result = Rat(denominator(result), numerator(result));
  }
  return result;
}

Rat rationalize(double x, unsigned long max_den) {
  if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite");
  bool neg = x < 0;
  if (neg) x = -x;
  // Continued fraction expansion, keeping the last convergent in range.
  unsigned long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 9e17) break;
    auto a = static_cast<unsigned long long>(fl);
    unsigned long long p2 = a * p1 + p0;
    unsigned long long q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-12) break;
    frac = 1.0 / rem;
  }
  if (q1 == 0) return Rat(0);
  Rat r{Int(p1), Int(q1)};
  return neg ? Rat(-r) : r;
}

}  // namespace macscope
