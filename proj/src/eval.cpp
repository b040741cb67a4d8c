#include "macscope/eval.hpp"

#include <array>
#include <stdexcept>

namespace macscope {

Evaluator::Evaluator(const FiniteStructure& structure, const Formula& formula)
    : structure_(structure), formula_(formula) {
  if (!structure.sig().same_as(formula.sig()))
    throw std::invalid_argument("Evaluator: structure/formula signature mismatch");
  slot_carrier_.resize(formula.vars().size());
  for (std::size_t i = 0; i < slot_carrier_.size(); ++i)
    slot_carrier_[i] = structure.carrier(formula.vars()[i].sort);

  memos_.resize(formula.nodes().size());
  for (std::size_t i = 0; i < memos_.size(); ++i) {
    const auto& node = formula.nodes()[i];
    if (!node.has_quantifier) continue;
    std::uint64_t space = 1;
    bool overflow = false;
    for (int slot : node.free_slots) {
      if (space > kDenseMemoLimit / std::max<std::uint64_t>(slot_carrier_[slot], 1)) {
        overflow = true;
        break;
      }
      space *= slot_carrier_[slot];
    }
    auto& memo = memos_[i];
    if (overflow || space > kDenseMemoLimit) continue;  // recompute instead
    memo.enabled = true;
    memo.dense = true;
    memo.space = space;
    memo.strides.resize(node.free_slots.size());
    std::uint64_t acc = 1;
    for (std::size_t j = node.free_slots.size(); j-- > 0;) {
      memo.strides[j] = acc;
      acc *= slot_carrier_[node.free_slots[j]];
    }
    memo.table.assign(space, 0);
  }
}

void Evaluator::clear_cache() {
  for (auto& memo : memos_) {
    if (memo.dense) memo.table.assign(memo.space, 0);
    memo.map.clear();
  }
}

Elem Evaluator::eval_term(int idx, const std::vector<Elem>& slots) {
  const Term& t = formula_.terms()[idx];
  switch (t.kind) {
    case Term::Kind::Var:
      return slots[t.symbol];
    case Term::Kind::Const:
      return structure_.constant(t.symbol);
    case Term::Kind::App: {
      std::array<Elem, 8> args;
      if (t.args.size() > args.size())
        throw std::logic_error("term arity exceeds evaluator limit");
      for (std::size_t i = 0; i < t.args.size(); ++i)
        args[i] = eval_term(t.args[i], slots);
      return structure_.fun(t.symbol,
                            std::span<const Elem>(args.data(), t.args.size()));
    }
  }
  return 0;
}

bool Evaluator::eval_node(int idx, std::vector<Elem>& slots) {
  const auto& node = formula_.nodes()[idx];
  auto& memo = memos_[idx];
  std::uint64_t key = 0;
  if (memo.enabled) {
    for (std::size_t j = 0; j < node.free_slots.size(); ++j)
      key += memo.strides[j] * slots[node.free_slots[j]];
    std::uint8_t cached = memo.table[key];
    if (cached) return cached == 2;
  }

  bool result = false;
  switch (node.kind) {
    case Formula::Kind::True:
      result = true;
      break;
    case Formula::Kind::False:
      result = false;
      break;
    case Formula::Kind::Rel: {
      std::array<Elem, 8> args;
      if (node.terms.size() > args.size())
        throw std::logic_error("relation arity exceeds evaluator limit");
      for (std::size_t i = 0; i < node.terms.size(); ++i)
        args[i] = eval_term(node.terms[i], slots);
      result = structure_.rel(
          node.symbol, std::span<const Elem>(args.data(), node.terms.size()));
      break;
    }
    case Formula::Kind::Eq:
      result = eval_term(node.terms[0], slots) == eval_term(node.terms[1], slots);
      break;
    case Formula::Kind::Not:
      result = !eval_node(node.children[0], slots);
      break;
    case Formula::Kind::And:
      result = eval_node(node.children[0], slots) &&
               eval_node(node.children[1], slots);
      break;
    case Formula::Kind::Or:
      result = eval_node(node.children[0], slots) ||
               eval_node(node.children[1], slots);
      break;
    case Formula::Kind::Implies:
      result = !eval_node(node.children[0], slots) ||
               eval_node(node.children[1], slots);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool forall = node.kind == Formula::Kind::Forall;
      result = forall;
      std::uint64_t carrier = slot_carrier_[node.symbol];
      Elem saved = slots[node.symbol];
      for (std::uint64_t v = 0; v < carrier; ++v) {
        slots[node.symbol] = static_cast<Elem>(v);
        bool inner = eval_node(node.children[0], slots);
        if (inner != forall) {
          result = !forall;
          break;
        }
      }
      slots[node.symbol] = saved;
      break;
    }
  }

  if (memo.enabled) memo.table[key] = result ? 2 : 1;
  return result;
}

bool Evaluator::eval_slots(std::vector<Elem>& slots) {
  if (slots.size() != formula_.vars().size())
    throw std::invalid_argument("Evaluator: slot vector size mismatch");
  return eval_node(formula_.root(), slots);
}

std::uint64_t Evaluator::count_objects(const std::vector<int>& object_slots,
                                       std::vector<Elem>& slots) {
  for (int slot : object_slots) slots[slot] = 0;
  std::uint64_t total = 0;
  while (true) {
    if (eval_node(formula_.root(), slots)) ++total;
    std::size_t i = object_slots.size();
    bool carried = true;
    while (i > 0 && carried) {
      --i;
      int slot = object_slots[i];
      if (++slots[slot] < slot_carrier_[slot]) {
        carried = false;
      } else {
        slots[slot] = 0;
      }
    }
    if (carried) return total;
  }
}

bool eval(const FiniteStructure& structure, const Formula& formula,
          const std::map<std::string, Elem>& assignment) {
  Evaluator ev(structure, formula);
  std::vector<Elem> slots(formula.vars().size(), 0);
  for (int slot : formula.free_slots()) {
    const auto& name = formula.vars()[slot].name;
    auto it = assignment.find(name);
    if (it == assignment.end())
      throw std::invalid_argument("unbound variable '" + name + "'");
    if (it->second >= structure.carrier(formula.vars()[slot].sort))
      throw std::invalid_argument("assignment out of range for '" + name + "'");
    slots[slot] = it->second;
  }
  return ev.eval_slots(slots);
}

std::vector<ResolvedVar> resolve_vars(const FiniteStructure& structure,
                                      const Formula& formula,
                                      const std::vector<VarSpec>& vars) {
  std::vector<ResolvedVar> out;
  for (const auto& spec : vars) {
    int slot = formula.free_slot(spec.name);
    int sort = -1;
    if (slot >= 0) {
      sort = formula.vars()[slot].sort;
      if (!spec.sort.empty() &&
          formula.sig().sort_index(spec.sort) != sort)
        throw std::invalid_argument("variable '" + spec.name +
                                    "' has sort " +
                                    formula.sig().sort_name(sort));
    } else {
      if (spec.sort.empty())
        throw std::invalid_argument(
            "variable '" + spec.name +
            "' does not occur in the formula; annotate its sort as name:sort");
      sort = formula.sig().sort_index(spec.sort);
      if (sort < 0)
        throw std::invalid_argument("unknown sort '" + spec.sort + "'");
    }
    out.push_back({spec.name, slot, sort, structure.carrier(sort)});
  }
  return out;
}

std::uint64_t count(const FiniteStructure& structure, const Formula& formula,
                    const std::vector<VarSpec>& object_vars,
                    const std::map<std::string, Elem>& param_assignment) {
  auto objects = resolve_vars(structure, formula, object_vars);

  // Every free variable must be an object variable or given a parameter value.
  std::vector<Elem> slots(formula.vars().size(), 0);
  for (int slot : formula.free_slots()) {
    const auto& name = formula.vars()[slot].name;
    bool is_object = false;
    for (const auto& o : objects)
      if (o.name == name) is_object = true;
    if (is_object) continue;
    auto it = param_assignment.find(name);
    if (it == param_assignment.end())
      throw std::invalid_argument("unbound variable '" + name + "'");
    if (it->second >= structure.carrier(formula.vars()[slot].sort))
      throw std::invalid_argument("assignment out of range for '" + name + "'");
    slots[slot] = it->second;
  }

  std::uint64_t factor = 1;
  std::vector<int> object_slots;
  for (const auto& o : objects) {
    if (o.slot >= 0)
      object_slots.push_back(o.slot);
    else
      factor *= o.carrier;
  }
  Evaluator ev(structure, formula);
  return factor * ev.count_objects(object_slots, slots);
}

}  // namespace macscope
