#ifndef MACSCOPE_MEASURING_HPP
#define MACSCOPE_MEASURING_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "macscope/rational.hpp"
#include "macscope/semiring.hpp"

namespace macscope {

/// Multivariate polynomial over exact rationals in named size variables.
/// Exponents are rationals (fractional powers for 1/N-dimensions, negative
/// for rational-function-shaped counts). No zero coefficients are stored.
class MeasuringFunction {
 public:
  using ExpVec = std::vector<Rat>;

  MeasuringFunction() = default;
  explicit MeasuringFunction(std::vector<std::string> vars)
      : vars_(std::move(vars)) {}

  static MeasuringFunction constant(std::vector<std::string> vars,
                                    const Rat& c);
  static MeasuringFunction variable(std::vector<std::string> vars,
                                    std::size_t index);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<ExpVec, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ExpVec& exponents, const Rat& coeff);

  MeasuringFunction operator+(const MeasuringFunction& other) const;
  MeasuringFunction operator-(const MeasuringFunction& other) const;
  MeasuringFunction operator*(const MeasuringFunction& other) const;
  MeasuringFunction scaled(const Rat& c) const;
  bool operator==(const MeasuringFunction& other) const {
    return vars_ == other.vars_ && terms_ == other.terms_;
  }

  /// Exact evaluation at positive sizes; nullopt when some power has no
  /// exact rational value.
  std::optional<Rat> eval(const std::vector<Rat>& values) const;

  std::string to_string() const;
  static std::optional<MeasuringFunction> parse(
      const std::string& text, const std::vector<std::string>& vars);

 private:
  std::vector<std::string> vars_;
  std::map<ExpVec, Rat> terms_;
};

/// Leading-term extraction: the term whose exponent vector is maximal under
/// the regime. Zero polynomial maps to 0. Throws std::domain_error
/// ("not eventually nonnegative") when the leading coefficient is negative.
Monomial leading_monomial(const MeasuringFunction& p, const LimitRegime& regime);

}  // namespace macscope

#endif
