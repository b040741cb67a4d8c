#include "macscope/measuring.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace macscope {

MeasuringFunction MeasuringFunction::constant(std::vector<std::string> vars,
                                              const Rat& c) {
  MeasuringFunction p(std::move(vars));
  p.add_term(ExpVec(p.vars_.size(), Rat(0)), c);
  return p;
}

MeasuringFunction MeasuringFunction::variable(std::vector<std::string> vars,
                                              std::size_t index) {
  MeasuringFunction p(std::move(vars));
  if (index >= p.vars_.size())
    throw std::out_of_range("MeasuringFunction::variable");
  ExpVec e(p.vars_.size(), Rat(0));
  e[index] = 1;
  p.add_term(e, Rat(1));
  return p;
}

void MeasuringFunction::add_term(const ExpVec& exponents, const Rat& coeff) {
  if (exponents.size() != vars_.size())
    throw std::invalid_argument("MeasuringFunction: exponent arity mismatch");
  if (coeff == 0) return;
  auto [it, fresh] = terms_.emplace(exponents, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

MeasuringFunction MeasuringFunction::operator+(
    const MeasuringFunction& other) const {
  if (vars_ != other.vars_)
    throw std::invalid_argument("MeasuringFunction: variable mismatch");
  MeasuringFunction out = *this;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

MeasuringFunction MeasuringFunction::operator-(
    const MeasuringFunction& other) const {
  return *this + other.scaled(Rat(-1));
}

MeasuringFunction MeasuringFunction::operator*(
    const MeasuringFunction& other) const {
  if (vars_ != other.vars_)
    throw std::invalid_argument("MeasuringFunction: variable mismatch");
  MeasuringFunction out(vars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : other.terms_) {
      ExpVec e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

MeasuringFunction MeasuringFunction::scaled(const Rat& c) const {
  MeasuringFunction out(vars_);
  for (const auto& [e, coeff] : terms_) out.add_term(e, coeff * c);
  return out;
}

std::optional<Rat> MeasuringFunction::eval(
    const std::vector<Rat>& values) const {
  if (values.size() != vars_.size())
    throw std::invalid_argument("MeasuringFunction::eval: arity mismatch");
  Rat total = 0;
  for (const auto& [e, c] : terms_) {
    Rat term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto p = rat_pow(values[i], e[i]);
      if (!p) return std::nullopt;
      term *= *p;
    }
    total += term;
  }
  return total;
}

namespace {

bool is_nonneg_integer(const Rat& r) {
  return r >= 0 && denominator(r) == 1;
}

void print_exponent(std::ostream& out, const Rat& e) {
  if (is_nonneg_integer(e)) {
    out << numerator(e);
  } else {
    out << "(" << rat_to_string(e) << ")";
  }
}

}  // namespace

std::string MeasuringFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  // Descending map order gives a stable printing that round-trips.
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = c;
    if (first) {
      if (c < 0) {
        out << "-";
        mag = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) mag = -c;
    }
    first = false;
    bool any_var = false;
    std::ostringstream vars_out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any_var) vars_out << "*";
      any_var = true;
      vars_out << vars_[i];
      if (e[i] != 1) {
        vars_out << "^";
        print_exponent(vars_out, e[i]);
      }
    }
    if (!any_var) {
      out << rat_to_string(mag);
    } else if (mag == 1) {
      out << vars_out.str();
    } else {
      out << rat_to_string(mag) << "*" << vars_out.str();
    }
  }
  return out.str();
}

namespace {

struct PolyLexer {
  std::string s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eof() {
    skip();
    return pos >= s.size();
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool take(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::optional<Rat> number(bool allow_sign) {
    skip();
    std::size_t start = pos;
    if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits_start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == digits_start) {
      pos = start;
      return std::nullopt;
    }
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
    }
    return rat_from_string(s.substr(start, pos - start));
  }
  std::optional<std::string> ident() {
    skip();
    if (pos >= s.size()) return std::nullopt;
    char c = s[pos];
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
      return std::nullopt;
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    return s.substr(start, pos - start);
  }
};

}  // namespace

std::optional<MeasuringFunction> MeasuringFunction::parse(
    const std::string& text, const std::vector<std::string>& vars) {
  PolyLexer lex{text};
  MeasuringFunction poly(vars);
  auto var_index = [&vars](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return i;
    return std::nullopt;
  };

  bool first = true;
  while (true) {
    if (lex.eof()) {
      if (first) return std::nullopt;
      break;
    }
    Rat sign = 1;
    if (lex.take('-')) {
      sign = -1;
    } else if (lex.take('+')) {
      // explicit plus
    } else if (!first) {
      return std::nullopt;
    }
    first = false;

    Rat coeff = sign;
    ExpVec exps(vars.size(), Rat(0));
    bool want_factor = true;
    bool any_factor = false;
    while (want_factor) {
      if (auto num = lex.number(false)) {
        coeff *= *num;
      } else if (auto name = lex.ident()) {
        auto idx = var_index(*name);
        if (!idx) return std::nullopt;
        Rat e = 1;
        if (lex.take('^')) {
          if (lex.take('(')) {
            auto val = lex.number(true);
            if (!val || !lex.take(')')) return std::nullopt;
            e = *val;
          } else {
            auto val = lex.number(false);
            if (!val) return std::nullopt;
            e = *val;
          }
        }
        exps[*idx] += e;
      } else {
        return std::nullopt;
      }
      any_factor = true;
      want_factor = lex.take('*');
    }
    if (!any_factor) return std::nullopt;
    poly.add_term(exps, coeff);
    if (lex.eof()) break;
    char next = lex.peek();
    if (next != '+' && next != '-') return std::nullopt;
  }
  // "0" parses through the number path as a zero-coefficient term.
  return poly;
}

Monomial leading_monomial(const MeasuringFunction& p,
                          const LimitRegime& regime) {
  if (regime.arity() != p.vars().size())
    throw std::invalid_argument("leading_monomial: regime arity mismatch");
  if (p.is_zero()) return Monomial::zero();
  const MeasuringFunction::ExpVec* best = nullptr;
  const Rat* best_coeff = nullptr;
  for (const auto& [e, c] : p.terms()) {
    if (!best || regime.compare(*best, e) == std::strong_ordering::less) {
      best = &e;
      best_coeff = &c;
    }
  }
  if (*best_coeff < 0)
    throw std::domain_error("not eventually nonnegative");
  return Monomial(*best_coeff, DimVec(*best));
}

}  // namespace macscope
