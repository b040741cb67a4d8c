#ifndef MACSCOPE_SEMIRING_HPP
#define MACSCOPE_SEMIRING_HPP

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "macscope/rational.hpp"

namespace macscope {

/// Growth priority over the size variables: priority[0] is the index of the
/// slowest-growing variable, priority.back() the fastest. Any power of a
/// slower variable is eventually dominated by the first power of a faster
/// one, so dimension vectors compare lexicographically fastest-first.
class LimitRegime {
 public:
  explicit LimitRegime(std::size_t k);  // identity priority, slot 0 slowest
  explicit LimitRegime(std::vector<std::size_t> priority_slowest_first);

  std::size_t arity() const { return priority_.size(); }
  const std::vector<std::size_t>& priority() const { return priority_; }

  std::strong_ordering compare(const std::vector<Rat>& a,
                               const std::vector<Rat>& b) const;

 private:
  std::vector<std::size_t> priority_;
};

/// Exponent vector of a monomial, or Bottom (the -infinity dimension of the
/// zero element). Bottom absorbs under addition and is strictly least.
class DimVec {
 public:
  DimVec() : bottom_(true) {}
  explicit DimVec(std::vector<Rat> entries)
      : bottom_(false), entries_(std::move(entries)) {}

  static DimVec bottom() { return DimVec(); }
  static DimVec zeros(std::size_t k) {
    return DimVec(std::vector<Rat>(k, Rat(0)));
  }

  bool is_bottom() const { return bottom_; }
  const std::vector<Rat>& entries() const { return entries_; }

  DimVec plus(const DimVec& other) const;
  std::strong_ordering compare(const DimVec& other,
                               const LimitRegime& regime) const;

  bool operator==(const DimVec& other) const {
    return bottom_ == other.bottom_ && entries_ == other.entries_;
  }

  std::string to_string() const;

 private:
  bool bottom_;
  std::vector<Rat> entries_;
};

/// Element r Z^d of a monomial measuring semiring: max-plus addition,
/// standard multiplication. Canonical zero has coeff 0 and Bottom dimension;
/// construction normalizes.
class Monomial {
 public:
  Monomial() : coeff_(0), dim_() {}
  Monomial(Rat coeff, DimVec dim);

  static Monomial zero() { return Monomial(); }
  static Monomial one(std::size_t k) {
    return Monomial(Rat(1), DimVec::zeros(k));
  }

  bool is_zero() const { return dim_.is_bottom(); }
  const Rat& coeff() const { return coeff_; }
  const DimVec& dim() const { return dim_; }

  bool operator==(const Monomial& other) const {
    return coeff_ == other.coeff_ && dim_ == other.dim_;
  }

  std::string to_string() const;
  /// Parses the `<coeff> Z^(<d1>,...,<dk>)` form; `0` parses to zero.
  static std::optional<Monomial> parse(const std::string& text);

 private:
  Rat coeff_;
  DimVec dim_;
};

Monomial mono_add(const Monomial& x, const Monomial& y,
                  const LimitRegime& regime);
Monomial mono_mul(const Monomial& x, const Monomial& y);
std::strong_ordering mono_cmp(const Monomial& x, const Monomial& y,
                              const LimitRegime& regime);
DimVec dim(const Monomial& x);

/// x ~ y: equal magnitude (each bounded by an integer multiple of the other).
bool magnitude_eq(const Monomial& x, const Monomial& y);

/// x ≈ y: x ~ y and neither exceeds any rational multiple >1 of the other.
/// With exact rational coefficients this is plain equality of dim and coeff.
bool approx_eq(const Monomial& x, const Monomial& y);

struct RhoValue {
  bool infinite = false;
  Rat value;  // meaningful iff !infinite
  bool operator==(const RhoValue&) const = default;
};

/// rho_a(x) = sup{q in Q : qa <= x}: 0 / coeff ratio / infinity by
/// dimension comparison. a must be nonzero.
RhoValue rho(const Monomial& a, const Monomial& x);

/// Carrier operations for the generic divisible hull and the axiom suite.
/// nat_scale(n, x) must agree with n-fold addition.
template <typename T>
struct CarrierOps {
  std::function<T(const T&, const T&)> add;
  std::function<T(const T&, const T&)> mul;
  std::function<std::strong_ordering(const T&, const T&)> cmp;
  T zero;
  T one;

  T nat_scale(unsigned long n, const T& x) const {
    T acc = zero;
    for (unsigned long i = 0; i < n; ++i) acc = add(acc, x);
    return acc;
  }
};

CarrierOps<Monomial> monomial_ops(const LimitRegime& regime);

/// Formal positive-rational scaling (a/b, base) with equality dar = bcs.
template <typename T>
struct HullElement {
  Rat scale;  // nonnegative; zero only for the hull zero
  T base;
};

template <typename T>
HullElement<T> hull_add(const HullElement<T>& u, const HullElement<T>& v,
                        const CarrierOps<T>& ops) {
  // (a/b, r) + (c/d, s) = (1/(bd), dar + bcs)
  Int a = numerator(u.scale), b = denominator(u.scale);
  Int c = numerator(v.scale), d = denominator(v.scale);
  auto ul = (d * a).convert_to<unsigned long>();
  auto vl = (b * c).convert_to<unsigned long>();
  T sum = ops.add(ops.nat_scale(ul, u.base), ops.nat_scale(vl, v.base));
  return {Rat(1, b * d), sum};
}

template <typename T>
HullElement<T> hull_mul(const HullElement<T>& u, const HullElement<T>& v,
                        const CarrierOps<T>& ops) {
  return {u.scale * v.scale, ops.mul(u.base, v.base)};
}

template <typename T>
std::strong_ordering hull_cmp(const HullElement<T>& u, const HullElement<T>& v,
                              const CarrierOps<T>& ops) {
  Int a = numerator(u.scale), b = denominator(u.scale);
  Int c = numerator(v.scale), d = denominator(v.scale);
  auto ul = (d * a).convert_to<unsigned long>();
  auto vl = (b * c).convert_to<unsigned long>();
  return ops.cmp(ops.nat_scale(ul, u.base), ops.nat_scale(vl, v.base));
}

template <typename T>
bool hull_eq(const HullElement<T>& u, const HullElement<T>& v,
             const CarrierOps<T>& ops) {
  return hull_cmp(u, v, ops) == std::strong_ordering::equal;
}

/// One axiom-suite finding: which law failed and on which witnesses.
struct AxiomViolation {
  std::string axiom;
  std::string witnesses;
};

struct AxiomReport {
  std::size_t checked = 0;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustively checks OS1-OS8, (MS), nx < mx for 0 < x and n < m <= nmax,
/// and rough cancellation over all pairs/triples from the sample, using the
/// supplied operations (so corrupted operations can be probed).
AxiomReport axiom_suite(const std::vector<Monomial>& sample, unsigned nmax,
                        const CarrierOps<Monomial>& ops);
AxiomReport axiom_suite(const std::vector<Monomial>& sample, unsigned nmax,
                        const LimitRegime& regime);

}  // namespace macscope

#endif
