#include "macscope/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace macscope {

namespace {

struct Token {
  enum class Kind {
    Ident,
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
    Eq,
    Bang,
    Amp,
    Pipe,
    Arrow,
    End
  };
  Kind kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                              s[i] == '_'))
        ++i;
      out.push_back({Token::Kind::Ident, s.substr(start, i - start), at});
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({Token::Kind::LParen, "(", at});
        break;
      case ')':
        out.push_back({Token::Kind::RParen, ")", at});
        break;
      case ',':
        out.push_back({Token::Kind::Comma, ",", at});
        break;
      case '.':
        out.push_back({Token::Kind::Dot, ".", at});
        break;
      case ':':
        out.push_back({Token::Kind::Colon, ":", at});
        break;
      case '=':
        out.push_back({Token::Kind::Eq, "=", at});
        break;
      case '!':
        out.push_back({Token::Kind::Bang, "!", at});
        break;
      case '&':
        out.push_back({Token::Kind::Amp, "&", at});
        break;
      case '|':
        out.push_back({Token::Kind::Pipe, "|", at});
        break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Token::Kind::Arrow, "->", at});
          ++i;
          break;
        }
        throw ParseError(ParseError::Kind::Syntax, at, "syntax error");
      default:
        throw ParseError(ParseError::Kind::Syntax, at, "syntax error");
    }
    ++i;
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

// Sort expressions during parsing: either a concrete signature sort or an
// inference variable, resolved by union-find.
class SortUnifier {
 public:
  int fresh() {
    parent_.push_back(static_cast<int>(parent_.size()));
    concrete_.push_back(-1);
    return static_cast<int>(parent_.size()) - 1;
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void bind(int v, int sort, std::size_t offset, const Signature& sig) {
    v = find(v);
    if (concrete_[v] >= 0 && concrete_[v] != sort)
      throw ParseError(ParseError::Kind::SortMismatch, offset,
                       "sort mismatch: " + sig.sort_name(concrete_[v]) +
                           " vs " + sig.sort_name(sort));
    concrete_[v] = sort;
  }

  void unite(int a, int b, std::size_t offset, const Signature& sig) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (concrete_[a] >= 0 && concrete_[b] >= 0 && concrete_[a] != concrete_[b])
      throw ParseError(ParseError::Kind::SortMismatch, offset,
                       "sort mismatch: " + sig.sort_name(concrete_[a]) +
                           " vs " + sig.sort_name(concrete_[b]));
    if (concrete_[a] < 0) std::swap(a, b);
    parent_[b] = a;
  }

  int sort_of(int v) { return concrete_[find(v)]; }

 private:
  std::vector<int> parent_;
  std::vector<int> concrete_;
};

class Parser {
 public:
  Parser(const std::string& text, SignaturePtr sig,
         const std::map<std::string, std::string>& declared_sorts)
      : sig_(std::move(sig)), asm_(sig_), tokens_(tokenize(text)) {
    for (const auto& [var, sort_name] : declared_sorts) {
      int sort = sig_->sort_index(sort_name);
      if (sort < 0)
        throw ParseError(ParseError::Kind::UnknownSymbol, 0,
                         "unknown sort '" + sort_name + "'");
      declared_.emplace(var, sort);
    }
  }

  Formula run() {
    int root = parse_formula();
    expect(Token::Kind::End);
    resolve_free_sorts();
    return asm_.finish(root);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool accept(Token::Kind kind) {
    if (peek().kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Token::Kind kind) {
    if (!accept(kind))
      throw ParseError(ParseError::Kind::Syntax, peek().offset, "syntax error");
  }

  // formula := quant | impl
  int parse_formula() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident &&
        (t.text == "exists" || t.text == "forall"))
      return parse_quant();
    return parse_impl();
  }

  int parse_quant() {
    Token kw = next();
    Token var = next();
    if (var.kind != Token::Kind::Ident)
      throw ParseError(ParseError::Kind::Syntax, var.offset, "syntax error");
    expect(Token::Kind::Colon);
    Token sort_tok = next();
    if (sort_tok.kind != Token::Kind::Ident)
      throw ParseError(ParseError::Kind::Syntax, sort_tok.offset,
                       "syntax error");
    int sort = sig_->sort_index(sort_tok.text);
    if (sort < 0)
      throw ParseError(ParseError::Kind::UnknownSymbol, sort_tok.offset,
                       "unknown sort '" + sort_tok.text + "'");
    expect(Token::Kind::Dot);
    int slot = asm_.fresh_var(var.text, sort, true);
    int sort_var = unifier_.fresh();
    unifier_.bind(sort_var, sort, var.offset, *sig_);
    scope_.push_back({var.text, slot, sort_var});
    int body = parse_formula();
    scope_.pop_back();
    return asm_.quant(kw.text == "exists" ? Formula::Kind::Exists
                                          : Formula::Kind::Forall,
                      slot, body);
  }

  int parse_impl() {
    int lhs = parse_or();
    if (accept(Token::Kind::Arrow)) {
      int rhs = parse_or();
      return asm_.binary(Formula::Kind::Implies, lhs, rhs);
    }
    return lhs;
  }

  int parse_or() {
    int lhs = parse_and();
    while (accept(Token::Kind::Pipe)) {
      int rhs = parse_and();
      lhs = asm_.binary(Formula::Kind::Or, lhs, rhs);
    }
    return lhs;
  }

  int parse_and() {
    int lhs = parse_lit();
    while (accept(Token::Kind::Amp)) {
      int rhs = parse_lit();
      lhs = asm_.binary(Formula::Kind::And, lhs, rhs);
    }
    return lhs;
  }

  int parse_lit() {
    if (accept(Token::Kind::Bang))
      return asm_.unary(Formula::Kind::Not, parse_lit());
    if (peek().kind == Token::Kind::LParen) {
      // Could be a parenthesised formula; a term can also start with an
      // identifier only, so '(' here always opens a formula.
      next();
      int inner = parse_formula();
      expect(Token::Kind::RParen);
      return inner;
    }
    return parse_atom();
  }

  // atom := R(t,...) | t = t | true | false
  int parse_atom() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident)
      throw ParseError(ParseError::Kind::Syntax, t.offset, "syntax error");
    if (t.text == "true") {
      next();
      return asm_.leaf(Formula::Kind::True);
    }
    if (t.text == "false") {
      next();
      return asm_.leaf(Formula::Kind::False);
    }
    if (sig_->kind(t.text) == Signature::SymbolKind::Rel) {
      Token rel_tok = next();
      int rel = sig_->symbol_index(rel_tok.text);
      const auto& decl = sig_->relation(rel);
      expect(Token::Kind::LParen);
      std::vector<int> args;
      std::vector<int> arg_sorts;
      if (peek().kind != Token::Kind::RParen) {
        do {
          auto [term, sort_var] = parse_term();
          args.push_back(term);
          arg_sorts.push_back(sort_var);
        } while (accept(Token::Kind::Comma));
      }
      expect(Token::Kind::RParen);
      if (args.size() != decl.arg_sorts.size())
        throw ParseError(ParseError::Kind::SortMismatch, rel_tok.offset,
                         "relation '" + decl.name + "' expects " +
                             std::to_string(decl.arg_sorts.size()) +
                             " arguments");
      for (std::size_t i = 0; i < args.size(); ++i)
        unifier_.bind(arg_sorts[i], decl.arg_sorts[i], rel_tok.offset, *sig_);
      return asm_.rel(rel, std::move(args));
    }
    auto [lhs, lhs_sort] = parse_term();
    Token eq_tok = peek();
    expect(Token::Kind::Eq);
    auto [rhs, rhs_sort] = parse_term();
    unifier_.unite(lhs_sort, rhs_sort, eq_tok.offset, *sig_);
    return asm_.eq(lhs, rhs);
  }

  // term := ident | ident(term,...); returns (term index, sort variable)
  std::pair<int, int> parse_term() {
    Token t = next();
    if (t.kind != Token::Kind::Ident)
      throw ParseError(ParseError::Kind::Syntax, t.offset, "syntax error");
    if (peek().kind == Token::Kind::LParen) {
      auto kind = sig_->kind(t.text);
      if (kind != Signature::SymbolKind::Fun)
        throw ParseError(ParseError::Kind::UnknownSymbol, t.offset,
                         "unknown function '" + t.text + "'");
      int fun = sig_->symbol_index(t.text);
      const auto& decl = sig_->function(fun);
      next();  // (
      std::vector<int> args;
      std::vector<int> arg_sorts;
      if (peek().kind != Token::Kind::RParen) {
        do {
          auto [term, sort_var] = parse_term();
          args.push_back(term);
          arg_sorts.push_back(sort_var);
        } while (accept(Token::Kind::Comma));
      }
      expect(Token::Kind::RParen);
      if (args.size() != decl.arg_sorts.size())
        throw ParseError(ParseError::Kind::SortMismatch, t.offset,
                         "function '" + decl.name + "' expects " +
                             std::to_string(decl.arg_sorts.size()) +
                             " arguments");
      for (std::size_t i = 0; i < args.size(); ++i)
        unifier_.bind(arg_sorts[i], decl.arg_sorts[i], t.offset, *sig_);
      int sort_var = unifier_.fresh();
      unifier_.bind(sort_var, decl.result_sort, t.offset, *sig_);
      return {asm_.term_app(fun, std::move(args)), sort_var};
    }
    // Bound variable, constant, or free variable.
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name == t.text)
        return {asm_.term_var(it->slot), it->sort_var};
    }
    auto kind = sig_->kind(t.text);
    if (kind == Signature::SymbolKind::Const) {
      int c = sig_->symbol_index(t.text);
      int sort_var = unifier_.fresh();
      unifier_.bind(sort_var, sig_->constant(c).sort, t.offset, *sig_);
      return {asm_.term_const(c), sort_var};
    }
    if (kind != Signature::SymbolKind::None)
      throw ParseError(ParseError::Kind::UnknownSymbol, t.offset,
                       "'" + t.text + "' is not usable as a term");
    // Free variable.
    auto it = free_vars_.find(t.text);
    if (it == free_vars_.end()) {
      int slot = asm_.fresh_var(t.text, -1, false);
      int sort_var = unifier_.fresh();
      auto decl = declared_.find(t.text);
      if (decl != declared_.end())
        unifier_.bind(sort_var, decl->second, t.offset, *sig_);
      it = free_vars_.emplace(t.text, FreeVar{slot, sort_var, t.offset}).first;
    }
    return {asm_.term_var(it->second.slot), it->second.sort_var};
  }

  void resolve_free_sorts() {
    for (auto& [name, fv] : free_vars_) {
      int sort = unifier_.sort_of(fv.sort_var);
      if (sort < 0) {
        if (sig_->sort_count() == 1) {
          sort = 0;
        } else {
          throw ParseError(ParseError::Kind::SortMismatch, fv.first_use,
                           "cannot infer sort of free variable '" + name +
                               "'");
        }
      }
      asm_.set_var_sort(fv.slot, sort);
    }
  }

  struct ScopeEntry {
    std::string name;
    int slot;
    int sort_var;
  };
  struct FreeVar {
    int slot;
    int sort_var;
    std::size_t first_use;
  };

  SignaturePtr sig_;
  FormulaAssembler asm_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<ScopeEntry> scope_;
  std::map<std::string, FreeVar> free_vars_;
  std::map<std::string, int> declared_;
  SortUnifier unifier_;
};

}  // namespace

Formula parse_formula(const std::string& text, SignaturePtr sig,
                      const std::map<std::string, std::string>& declared_sorts) {
  Parser parser(text, std::move(sig), declared_sorts);
  return parser.run();
}

}  // namespace macscope
