#include "macscope/semiring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace macscope {

LimitRegime::LimitRegime(std::size_t k) : priority_(k) {
  std::iota(priority_.begin(), priority_.end(), std::size_t{0});
}

LimitRegime::LimitRegime(std::vector<std::size_t> priority_slowest_first)
    : priority_(std::move(priority_slowest_first)) {
  std::vector<bool> seen(priority_.size(), false);
  for (std::size_t idx : priority_) {
    if (idx >= priority_.size() || seen[idx])
      throw std::invalid_argument("LimitRegime: priority is not a permutation");
    seen[idx] = true;
  }
}

std::strong_ordering LimitRegime::compare(const std::vector<Rat>& a,
                                          const std::vector<Rat>& b) const {
  if (a.size() != priority_.size() || b.size() != priority_.size())
    throw std::invalid_argument("LimitRegime: arity mismatch");
  // Fastest variable decides first.
  for (auto it = priority_.rbegin(); it != priority_.rend(); ++it) {
    if (a[*it] < b[*it]) return std::strong_ordering::less;
    if (a[*it] > b[*it]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

DimVec DimVec::plus(const DimVec& other) const {
  if (bottom_ || other.bottom_) return DimVec::bottom();
  if (entries_.size() != other.entries_.size())
    throw std::invalid_argument("DimVec: arity mismatch");
  std::vector<Rat> sum(entries_.size());
  for (std::size_t i = 0; i < sum.size(); ++i)
    sum[i] = entries_[i] + other.entries_[i];
  return DimVec(std::move(sum));
}

std::strong_ordering DimVec::compare(const DimVec& other,
                                     const LimitRegime& regime) const {
  if (bottom_ && other.bottom_) return std::strong_ordering::equal;
  if (bottom_) return std::strong_ordering::less;
  if (other.bottom_) return std::strong_ordering::greater;
  return regime.compare(entries_, other.entries_);
}

std::string DimVec::to_string() const {
  if (bottom_) return "bottom";
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ",";
    out << rat_to_string(entries_[i]);
  }
  out << ")";
  return out.str();
}

Monomial::Monomial(Rat coeff, DimVec dim)
    : coeff_(std::move(coeff)), dim_(std::move(dim)) {
  if (coeff_ < 0)
    throw std::invalid_argument("Monomial: negative coefficient");
  if (coeff_ == 0) dim_ = DimVec::bottom();
  if (dim_.is_bottom()) coeff_ = 0;
}

std::string Monomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  out << rat_to_string(coeff_) << " Z^" << dim_.to_string();
  return out.str();
}

std::optional<Monomial> Monomial::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "0") return Monomial::zero();
  auto zpos = s.find("Z^(");
  if (zpos == std::string::npos || s.back() != ')') return std::nullopt;
  auto coeff = rat_from_string(s.substr(0, zpos));
  if (!coeff || *coeff < 0) return std::nullopt;
  std::string inner = s.substr(zpos + 3, s.size() - zpos - 4);
  std::vector<Rat> dims;
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto comma = inner.find(',', start);
    std::string piece = inner.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    auto d = rat_from_string(piece);
    if (!d) return std::nullopt;
    dims.push_back(*d);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (*coeff == 0) return Monomial::zero();
  return Monomial(*coeff, DimVec(std::move(dims)));
}

Monomial mono_add(const Monomial& x, const Monomial& y,
                  const LimitRegime& regime) {
  auto ord = x.dim().compare(y.dim(), regime);
  if (ord == std::strong_ordering::less) return y;
  if (ord == std::strong_ordering::greater) return x;
  if (x.is_zero()) return Monomial::zero();
  return Monomial(x.coeff() + y.coeff(), x.dim());
}

Monomial mono_mul(const Monomial& x, const Monomial& y) {
  if (x.is_zero() || y.is_zero()) return Monomial::zero();
  return Monomial(x.coeff() * y.coeff(), x.dim().plus(y.dim()));
}

std::strong_ordering mono_cmp(const Monomial& x, const Monomial& y,
                              const LimitRegime& regime) {
  auto ord = x.dim().compare(y.dim(), regime);
  if (ord != std::strong_ordering::equal) return ord;
  if (x.coeff() < y.coeff()) return std::strong_ordering::less;
  if (x.coeff() > y.coeff()) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

DimVec dim(const Monomial& x) { return x.dim(); }

bool magnitude_eq(const Monomial& x, const Monomial& y) {
  return x.dim() == y.dim();
}

bool approx_eq(const Monomial& x, const Monomial& y) {
  return x.dim() == y.dim() && x.coeff() == y.coeff();
}

RhoValue rho(const Monomial& a, const Monomial& x) {
  if (a.is_zero()) throw std::domain_error("rho: a must be nonzero");
  // Dimension comparison does not depend on the regime here: only the
  // equal/unequal split matters, plus which side dominates. Use any regime
  // of matching arity.
  if (x.is_zero()) return {false, Rat(0)};
  std::size_t k = a.dim().entries().size();
  LimitRegime regime(k);
  auto ord = x.dim().compare(a.dim(), regime);
  if (ord == std::strong_ordering::less) return {false, Rat(0)};
  if (ord == std::strong_ordering::greater) return {true, Rat(0)};
  return {false, x.coeff() / a.coeff()};
}

CarrierOps<Monomial> monomial_ops(const LimitRegime& regime) {
  CarrierOps<Monomial> ops;
  ops.add = [regime](const Monomial& x, const Monomial& y) {
    return mono_add(x, y, regime);
  };
  ops.mul = [](const Monomial& x, const Monomial& y) { return mono_mul(x, y); };
  ops.cmp = [regime](const Monomial& x, const Monomial& y) {
    return mono_cmp(x, y, regime);
  };
  ops.zero = Monomial::zero();
  ops.one = Monomial::one(regime.arity());
  return ops;
}

namespace {

std::string witness2(const Monomial& x, const Monomial& y) {
  return "x=" + x.to_string() + " y=" + y.to_string();
}

std::string witness3(const Monomial& x, const Monomial& y, const Monomial& z) {
  return witness2(x, y) + " z=" + z.to_string();
}

}  // namespace

AxiomReport axiom_suite(const std::vector<Monomial>& sample, unsigned nmax,
                        const CarrierOps<Monomial>& ops) {
  AxiomReport report;
  auto check = [&](bool cond, const std::string& axiom,
                   const std::string& witness) {
    ++report.checked;
    if (!cond) report.violations.push_back({axiom, witness});
  };
  auto le = [&](const Monomial& a, const Monomial& b) {
    return ops.cmp(a, b) != std::strong_ordering::greater;
  };
  auto lt = [&](const Monomial& a, const Monomial& b) {
    return ops.cmp(a, b) == std::strong_ordering::less;
  };
  const Monomial& zero = ops.zero;
  const Monomial& one = ops.one;

  check(ops.cmp(zero, one) != std::strong_ordering::equal, "OS8", "0 vs 1");

  for (const auto& x : sample) {
    check(ops.add(x, zero) == x, "OS1 (additive identity)", x.to_string());
    check(ops.mul(x, one) == x, "OS1 (multiplicative identity)", x.to_string());
    check(ops.mul(x, zero) == zero && ops.mul(zero, x) == zero, "OS6",
          x.to_string());
    check(le(zero, x), "OS3 (0 least)", x.to_string());
    check(ops.cmp(x, x) == std::strong_ordering::equal, "OS3 (reflexive)",
          x.to_string());
    // nx < mx for 0 < x, n < m.
    if (lt(zero, x)) {
      for (unsigned n = 1; n <= nmax; ++n)
        for (unsigned m = n + 1; m <= nmax; ++m)
          check(lt(ops.nat_scale(n, x), ops.nat_scale(m, x)),
                "nx<mx (n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                    ")",
                x.to_string());
    }
  }

  for (const auto& x : sample) {
    for (const auto& y : sample) {
      check(ops.add(x, y) == ops.add(y, x), "OS1 (+ commutative)",
            witness2(x, y));
      check(ops.mul(x, y) == ops.mul(y, x), "OS1 (* commutative)",
            witness2(x, y));
      auto xy = ops.cmp(x, y);
      auto yx = ops.cmp(y, x);
      check((xy == std::strong_ordering::less &&
             yx == std::strong_ordering::greater) ||
                (xy == std::strong_ordering::greater &&
                 yx == std::strong_ordering::less) ||
                (xy == std::strong_ordering::equal &&
                 yx == std::strong_ordering::equal && x == y),
            "OS3 (total antisymmetric)", witness2(x, y));
      check(!(lt(zero, x) && lt(zero, y)) || lt(zero, ops.mul(x, y)), "OS7",
            witness2(x, y));
    }
  }

  for (const auto& x : sample) {
    for (const auto& y : sample) {
      for (const auto& z : sample) {
        check(ops.add(ops.add(x, y), z) == ops.add(x, ops.add(y, z)),
              "OS1 (+ associative)", witness3(x, y, z));
        check(ops.mul(ops.mul(x, y), z) == ops.mul(x, ops.mul(y, z)),
              "OS1 (* associative)", witness3(x, y, z));
        check(ops.mul(x, ops.add(y, z)) ==
                  ops.add(ops.mul(x, y), ops.mul(x, z)),
              "OS2", witness3(x, y, z));
        if (le(x, y)) {
          check(le(ops.add(x, z), ops.add(y, z)), "OS4", witness3(x, y, z));
          check(le(ops.mul(x, z), ops.mul(y, z)), "OS5", witness3(x, y, z));
        }
        if (lt(x, y) && y.dim() == z.dim())
          check(lt(ops.add(x, z), ops.add(y, z)), "MS", witness3(x, y, z));
        // Transitivity of the order.
        if (le(x, y) && le(y, z)) check(le(x, z), "OS3 (transitive)",
                                        witness3(x, y, z));
        // Rough cancellation: x*y ~ x*z and x > 0 imply y ~ z.
        if (lt(zero, x) && magnitude_eq(ops.mul(x, y), ops.mul(x, z)))
          check(magnitude_eq(y, z), "rough cancellation", witness3(x, y, z));
      }
    }
  }
  return report;
}

AxiomReport axiom_suite(const std::vector<Monomial>& sample, unsigned nmax,
                        const LimitRegime& regime) {
  return axiom_suite(sample, nmax, monomial_ops(regime));
}

}  // namespace macscope
