#ifndef MACSCOPE_FORMULA_HPP
#define MACSCOPE_FORMULA_HPP

#include <string>
#include <vector>

#include "macscope/signature.hpp"

namespace macscope {

/// Terms and formulas are stored in flat pools inside Formula; nodes refer
/// to each other by index. Variables are slots: every quantifier binds a
/// fresh slot, free variables get slots at first use.
struct Term {
  enum class Kind { Var, Const, App };
  Kind kind;
  int symbol;               // var slot / constant index / function index
  std::vector<int> args;    // term indices (App only)
};

class Formula {
 public:
  enum class Kind {
    True,
    False,
    Rel,
    Eq,
    Not,
    And,
    Or,
    Implies,
    Exists,
    Forall
  };

  struct Node {
    Kind kind;
    int symbol = -1;            // relation index (Rel), bound slot (quantifiers)
    std::vector<int> terms;     // term indices: Rel args, or {lhs, rhs} for Eq
    std::vector<int> children;  // node indices
    std::vector<int> free_slots;  // sorted; filled by finalize()
    bool has_quantifier = false;
  };

  struct VarInfo {
    std::string name;  // bound slots keep their source name for printing
    int sort = -1;
    bool bound = false;
  };

  const SignaturePtr& sig_ptr() const { return sig_; }
  const Signature& sig() const { return *sig_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<VarInfo>& vars() const { return vars_; }
  int root() const { return root_; }

  /// Slots of the free variables of the whole formula, sorted.
  const std::vector<int>& free_slots() const {
    return nodes_[root_].free_slots;
  }
  /// Slot of a free variable by name, or -1.
  int free_slot(const std::string& name) const;

  std::string to_string() const;

 private:
  friend class FormulaAssembler;

  SignaturePtr sig_;
  std::vector<Node> nodes_;
  std::vector<Term> terms_;
  std::vector<VarInfo> vars_;
  int root_ = -1;

  void finalize();
  void term_slots(int term, std::vector<int>& out) const;
  std::string print_node(int node) const;
  std::string print_term(int term) const;
};

/// Low-level construction interface shared by the parser and tests.
class FormulaAssembler {
 public:
  explicit FormulaAssembler(SignaturePtr sig);

  int fresh_var(const std::string& name, int sort, bool bound);
  void set_var_sort(int slot, int sort);

  int term_var(int slot);
  int term_const(int const_index);
  int term_app(int fun_index, std::vector<int> args);

  int leaf(Formula::Kind kind);  // True / False
  int rel(int rel_index, std::vector<int> term_indices);
  int eq(int lhs_term, int rhs_term);
  int unary(Formula::Kind kind, int child);
  int binary(Formula::Kind kind, int lhs, int rhs);
  int quant(Formula::Kind kind, int slot, int body);

  const std::vector<Formula::VarInfo>& vars() const { return work_.vars_; }
  Formula finish(int root);

 private:
  Formula work_;
};

}  // namespace macscope

#endif
