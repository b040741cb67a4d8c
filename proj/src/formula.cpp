#include "macscope/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace macscope {

int Formula::free_slot(const std::string& name) const {
  for (int slot : free_slots())
    if (vars_[slot].name == name) return slot;
  return -1;
}

void Formula::term_slots(int term, std::vector<int>& out) const {
  const Term& t = terms_[term];
  if (t.kind == Term::Kind::Var) {
    out.push_back(t.symbol);
  } else if (t.kind == Term::Kind::App) {
    for (int a : t.args) term_slots(a, out);
  }
}

void Formula::finalize() {
  // Free-slot lists bottom-up; quantifiers remove their bound slot.
  for (auto& node : nodes_) {
    std::vector<int> slots;
    for (int t : node.terms) term_slots(t, slots);
    for (int c : node.children) {
      const Node& child = nodes_[c];
      slots.insert(slots.end(), child.free_slots.begin(),
                   child.free_slots.end());
      node.has_quantifier = node.has_quantifier || child.has_quantifier;
    }
    if (node.kind == Kind::Exists || node.kind == Kind::Forall) {
      node.has_quantifier = true;
      std::erase(slots, node.symbol);
    }
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    node.free_slots = std::move(slots);
  }
}

std::string Formula::print_term(int term) const {
  const Term& t = terms_[term];
  switch (t.kind) {
    case Term::Kind::Var:
      return vars_[t.symbol].name;
    case Term::Kind::Const:
      return sig_->constant(t.symbol).name;
    case Term::Kind::App: {
      std::string out = sig_->function(t.symbol).name + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ",";
        out += print_term(t.args[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

std::string Formula::print_node(int idx) const {
  const Node& node = nodes_[idx];
  switch (node.kind) {
    case Kind::True:
      return "true";
    case Kind::False:
      return "false";
    case Kind::Rel: {
      std::string out = sig_->relation(node.symbol).name + "(";
      for (std::size_t i = 0; i < node.terms.size(); ++i) {
        if (i) out += ",";
        out += print_term(node.terms[i]);
      }
      return out + ")";
    }
    case Kind::Eq:
      return print_term(node.terms[0]) + " = " + print_term(node.terms[1]);
    case Kind::Not:
      return "!(" + print_node(node.children[0]) + ")";
    case Kind::And:
      return "(" + print_node(node.children[0]) + " & " +
             print_node(node.children[1]) + ")";
    case Kind::Or:
      return "(" + print_node(node.children[0]) + " | " +
             print_node(node.children[1]) + ")";
    case Kind::Implies:
      return "(" + print_node(node.children[0]) + " -> " +
             print_node(node.children[1]) + ")";
    case Kind::Exists:
    case Kind::Forall:
      return std::string(node.kind == Kind::Exists ? "exists " : "forall ") +
             vars_[node.symbol].name + ":" +
             sig_->sort_name(vars_[node.symbol].sort) + ". " +
             print_node(node.children[0]);
  }
  return "?";
}

std::string Formula::to_string() const { return print_node(root_); }

FormulaAssembler::FormulaAssembler(SignaturePtr sig) {
  work_.sig_ = std::move(sig);
}

int FormulaAssembler::fresh_var(const std::string& name, int sort, bool bound) {
  work_.vars_.push_back({name, sort, bound});
  return static_cast<int>(work_.vars_.size()) - 1;
}

void FormulaAssembler::set_var_sort(int slot, int sort) {
  work_.vars_.at(slot).sort = sort;
}

int FormulaAssembler::term_var(int slot) {
  work_.terms_.push_back({Term::Kind::Var, slot, {}});
  return static_cast<int>(work_.terms_.size()) - 1;
}

int FormulaAssembler::term_const(int const_index) {
  work_.terms_.push_back({Term::Kind::Const, const_index, {}});
  return static_cast<int>(work_.terms_.size()) - 1;
}

int FormulaAssembler::term_app(int fun_index, std::vector<int> args) {
  work_.terms_.push_back({Term::Kind::App, fun_index, std::move(args)});
  return static_cast<int>(work_.terms_.size()) - 1;
}

int FormulaAssembler::leaf(Formula::Kind kind) {
  work_.nodes_.push_back({kind, -1, {}, {}, {}, false});
  return static_cast<int>(work_.nodes_.size()) - 1;
}

int FormulaAssembler::rel(int rel_index, std::vector<int> term_indices) {
  work_.nodes_.push_back(
      {Formula::Kind::Rel, rel_index, std::move(term_indices), {}, {}, false});
  return static_cast<int>(work_.nodes_.size()) - 1;
}

int FormulaAssembler::eq(int lhs_term, int rhs_term) {
  work_.nodes_.push_back(
      {Formula::Kind::Eq, -1, {lhs_term, rhs_term}, {}, {}, false});
  return static_cast<int>(work_.nodes_.size()) - 1;
}

int FormulaAssembler::unary(Formula::Kind kind, int child) {
  work_.nodes_.push_back({kind, -1, {}, {child}, {}, false});
  return static_cast<int>(work_.nodes_.size()) - 1;
}

int FormulaAssembler::binary(Formula::Kind kind, int lhs, int rhs) {
  work_.nodes_.push_back({kind, -1, {}, {lhs, rhs}, {}, false});
  return static_cast<int>(work_.nodes_.size()) - 1;
}

int FormulaAssembler::quant(Formula::Kind kind, int slot, int body) {
  work_.nodes_.push_back({kind, slot, {}, {body}, {}, false});
  return static_cast<int>(work_.nodes_.size()) - 1;
}

Formula FormulaAssembler::finish(int root) {
  work_.root_ = root;
  for (const auto& var : work_.vars_)
    if (var.sort < 0)
      throw std::logic_error("FormulaAssembler: unresolved variable sort");
  work_.finalize();
  return std::move(work_);
}

}  // namespace macscope
