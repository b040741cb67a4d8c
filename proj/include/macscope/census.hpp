#ifndef MACSCOPE_CENSUS_HPP
#define MACSCOPE_CENSUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "macscope/eval.hpp"
#include "macscope/measuring.hpp"

namespace macscope {

/// Per-structure census record, compressed by count value.
struct CountTable {
  std::string structure_name;
  std::uint64_t param_space = 0;
  std::map<std::uint64_t, std::uint64_t> multiplicity;  // value -> #tuples
  std::map<std::uint64_t, std::vector<Elem>> representative;

  std::size_t distinct() const { return multiplicity.size(); }
};

struct CensusOptions {
  std::uint64_t budget = 1000000000;  // object x parameter evaluations
  unsigned workers = 0;               // 0: hardware concurrency
};

struct CensusResult {
  std::vector<CountTable> tables;
  std::vector<std::string> object_names;
  std::vector<std::string> param_names;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& structure, std::uint64_t needed,
                 std::uint64_t budget)
      : std::runtime_error("evaluation budget exceeded on " + structure +
                           ": needs " + std::to_string(needed) +
                           " evaluations, budget " + std::to_string(budget)),
        structure_name(structure) {}
  std::string structure_name;
};

/// Exact per-parameter-tuple counts over a class sharing one signature.
/// Deterministic: results and representatives do not depend on worker count.
CensusResult census_run(const std::vector<const FiniteStructure*>& cls,
                        const Formula& formula,
                        const std::vector<VarSpec>& object_vars,
                        const std::vector<VarSpec>& param_vars,
                        const CensusOptions& options = {});

struct BoundedSizesResult {
  std::size_t bound = 0;
  bool holds = false;
};

/// Maximum number of distinct count values; holds iff that maximum is
/// attained by every structure in the largest third (class given in
/// increasing-size order).
BoundedSizesResult bounded_sizes_check(const std::vector<CountTable>& tables);

/// Values of the fitting variables, one row per structure (aligned with the
/// census tables).
struct SizeTable {
  std::vector<std::string> vars;
  std::vector<std::vector<Rat>> rows;
};

/// Builds a size table from the structures' declared quantities.
SizeTable size_table_from_declared(
    const std::vector<const FiniteStructure*>& cls,
    const std::vector<std::string>& vars);

struct FittedClass {
  std::string name;
  std::vector<bool> present;            // per structure
  std::vector<std::uint64_t> counts;    // value where present, else 0
  MeasuringFunction h;
  std::vector<Rat> residuals;           // count - h(sizes), where present
  std::string verdict;  // MEC-exact | MAC-asymptotic | inconclusive | refuted
  std::string note;
  std::string discriminator;
  std::string discriminator_status;     // verified | refuted (after check)
};

struct PartitionReport {
  std::vector<std::string> vars;
  std::vector<FittedClass> classes;
  bool alignment_warning = false;  // class counts non-monotone across class
};

struct FitExactOptions {
  std::size_t train = 0;  // 0: max(#basis, ceil(n/2))
};

/// Classes aligned across structures by rank order of count values
/// (largest first). Solves counts = sum_e c_e * prod s_i^{e_i} exactly on a
/// training prefix and verifies on the rest; MEC-exact iff every residual
/// vanishes.
PartitionReport fit_exact(const std::vector<CountTable>& tables,
                          const SizeTable& sizes,
                          const std::vector<std::vector<Rat>>& basis,
                          const FitExactOptions& options = {});

/// Rank-aligned classes with no fitting; scaffolding for discriminator
/// verification on raw censuses.
PartitionReport align_report(const std::vector<CountTable>& tables);

struct FitAsymptoticOptions {
  double epsilon = 0.05;
};

/// Fits one monomial mu * prod s_i^{d_i} per class: exponents from log
/// ratios between consecutive structures (rounded to denominator <= 4), the
/// coefficient from the largest structure. Two-window trend test.
PartitionReport fit_asymptotic(const std::vector<CountTable>& tables,
                               const SizeTable& sizes,
                               const LimitRegime& regime,
                               const FitAsymptoticOptions& options = {});

/// Checks, exhaustively per structure, that each discriminator formula (over
/// the parameter variables only) defines exactly its class's parameter set.
/// Keys of discriminators are class names from the report.
PartitionReport verify_discriminators(
    const std::vector<const FiniteStructure*>& cls, const Formula& formula,
    const std::vector<VarSpec>& object_vars,
    const std::vector<VarSpec>& param_vars, PartitionReport report,
    const std::map<std::string, std::string>& discriminators,
    const CensusOptions& options = {});

/// Measuring data for one formula: the fitted h per partition class.
struct MeasuringData {
  std::vector<std::string> vars;
  std::vector<MeasuringFunction> h;
};

struct ComposedFunction {
  std::vector<std::size_t> choice;  // outer class index per inner class
  MeasuringFunction m;
};

/// m_f = sum_pi h_pi * l_{f(pi)} for every choice function f.
std::vector<ComposedFunction> compose_projection(
    const MeasuringData& inner, const std::vector<MeasuringData>& outer);

struct ChainPerStructure {
  std::string structure_name;
  std::size_t length = 0;
  std::vector<std::uint64_t> chain;                // count values
  std::vector<std::vector<Elem>> witnesses;        // representative tuples
};

struct ChainReport {
  Rat ratio;
  std::vector<ChainPerStructure> per_structure;
  bool refuted = false;
  std::string note;
};

/// Longest chain of parameter tuples with successive count ratio > r per
/// structure; growth across the class is the non-m.a.c. refutation signal.
ChainReport nonmac_chain_detect(const CensusResult& census, const Rat& ratio);

struct RegularityResult {
  bool regular = true;
  std::uint32_t tuple_length = 0;
  std::vector<Elem> tuple_a;
  std::vector<Elem> tuple_b;
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;
};

/// True iff the count of {x : /\_i phi(x, b_i)} depends only on the atomic
/// (relations + equalities) type of the tuple b, for all tuples of length
/// <= max_len.
RegularityResult tuple_regularity(const FiniteStructure& structure,
                                  const Formula& phi,
                                  const std::string& object_var,
                                  const std::string& param_var,
                                  std::uint32_t max_len);

struct TournamentScanEntry {
  std::uint32_t n;
  std::uint64_t bits;
  bool degree_regular;
  bool three_regular;
};

struct TournamentScanReport {
  std::uint32_t max_n;
  std::vector<std::size_t> iso_counts;  // index i: classes on i+1 vertices
  std::vector<TournamentScanEntry> entries;
  std::vector<TournamentScanEntry> three_regular;
  bool regular_orders_all_odd = true;
};

/// Scans all tournaments up to isomorphism on <= max_n vertices: lists the
/// 3-regular ones and verifies degree-regular tournaments have odd order.
TournamentScanReport tournament_scan(std::uint32_t max_n);

}  // namespace macscope

#endif
