#ifndef MACSCOPE_EVAL_HPP
#define MACSCOPE_EVAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "macscope/formula.hpp"
#include "macscope/structure.hpp"

namespace macscope {

/// Object or parameter variable: the sort annotation is only needed when the
/// variable does not occur in the formula (its tuple space still counts).
struct VarSpec {
  std::string name;
  std::string sort;  // empty: take the sort inferred by the parser

  VarSpec(std::string n) : name(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  VarSpec(std::string n, std::string s) : name(std::move(n)), sort(std::move(s)) {}
};

/// Structural-recursion evaluator over one (structure, formula) pair.
/// Subformulas containing quantifiers are memoized, keyed on the values of
/// exactly the variables free in that subformula, so repeated outer
/// assignments that agree on those variables reuse the cached verdict.
/// Not thread-safe; use one Evaluator per worker.
class Evaluator {
 public:
  Evaluator(const FiniteStructure& structure, const Formula& formula);

  const FiniteStructure& structure() const { return structure_; }
  const Formula& formula() const { return formula_; }

  /// slots must assign every variable slot of the formula (bound slots are
  /// scratch space and may hold anything).
  bool eval_slots(std::vector<Elem>& slots);

  /// Number of object-variable tuples satisfying the formula; slots carries
  /// the parameter values and is used as scratch.
  std::uint64_t count_objects(const std::vector<int>& object_slots,
                              std::vector<Elem>& slots);

  void clear_cache();

 private:
  static constexpr std::uint64_t kDenseMemoLimit = std::uint64_t{1} << 22;

  bool eval_node(int idx, std::vector<Elem>& slots);
  Elem eval_term(int idx, const std::vector<Elem>& slots);

  struct Memo {
    bool enabled = false;
    bool dense = false;
    std::uint64_t space = 0;
    std::vector<std::uint64_t> strides;  // aligned with node free_slots
    std::vector<std::uint8_t> table;     // 0 unknown, 1 false, 2 true
    std::unordered_map<std::uint64_t, bool> map;
  };

  const FiniteStructure& structure_;
  const Formula& formula_;
  std::vector<Memo> memos_;
  std::vector<std::uint64_t> slot_carrier_;
};

/// Single evaluation under a named assignment of every free variable.
bool eval(const FiniteStructure& structure, const Formula& formula,
          const std::map<std::string, Elem>& assignment);

/// |phi(M^{|x|}; b)|: object tuples satisfying the formula under the given
/// parameter assignment. Object variables not occurring in the formula need
/// sort annotations and scale the count by their carrier.
std::uint64_t count(const FiniteStructure& structure, const Formula& formula,
                    const std::vector<VarSpec>& object_vars,
                    const std::map<std::string, Elem>& param_assignment);

/// Resolves a VarSpec list against formula and structure: slot (-1 when the
/// variable is absent from the formula) and carrier size per variable.
struct ResolvedVar {
  std::string name;
  int slot;
  int sort;
  std::uint64_t carrier;
};
std::vector<ResolvedVar> resolve_vars(const FiniteStructure& structure,
                                      const Formula& formula,
                                      const std::vector<VarSpec>& vars);

}  // namespace macscope

#endif
