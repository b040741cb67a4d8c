#include "macscope/census.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "macscope/builders.hpp"
#include "macscope/parser.hpp"

namespace macscope {

namespace {

std::uint64_t saturating_product(const std::vector<std::uint64_t>& factors) {
  std::uint64_t acc = 1;
  for (std::uint64_t f : factors) {
    if (f != 0 && acc > std::numeric_limits<std::uint64_t>::max() / f)
      return std::numeric_limits<std::uint64_t>::max();
    acc *= f;
  }
  return acc;
}

struct ParamLayout {
  std::vector<ResolvedVar> vars;      // census parameter order
  std::vector<std::size_t> present;   // indices into vars with a slot
  std::vector<std::size_t> absent;
  std::uint64_t present_space = 1;
  std::uint64_t absent_factor = 1;
  std::uint64_t full_space = 1;
};

ParamLayout layout_params(const FiniteStructure& m, const Formula& formula,
                          const std::vector<VarSpec>& param_vars) {
  ParamLayout layout;
  layout.vars = resolve_vars(m, formula, param_vars);
  std::vector<std::uint64_t> all;
  for (std::size_t i = 0; i < layout.vars.size(); ++i) {
    all.push_back(layout.vars[i].carrier);
    if (layout.vars[i].slot >= 0) {
      layout.present.push_back(i);
      layout.present_space =
          saturating_product({layout.present_space, layout.vars[i].carrier});
    } else {
      layout.absent.push_back(i);
      layout.absent_factor =
          saturating_product({layout.absent_factor, layout.vars[i].carrier});
    }
  }
  layout.full_space = saturating_product(all);
  return layout;
}

// Decodes a present-parameter index (last variable fastest) into slots.
void decode_present(const ParamLayout& layout, std::uint64_t index,
                    std::vector<Elem>& slots, std::vector<Elem>& tuple) {
  for (std::size_t j = layout.present.size(); j-- > 0;) {
    const auto& var = layout.vars[layout.present[j]];
    Elem value = static_cast<Elem>(index % var.carrier);
    index /= var.carrier;
    slots[var.slot] = value;
    tuple[layout.present[j]] = value;
  }
}

}  // namespace

CensusResult census_run(const std::vector<const FiniteStructure*>& cls,
                        const Formula& formula,
                        const std::vector<VarSpec>& object_vars,
                        const std::vector<VarSpec>& param_vars,
                        const CensusOptions& options) {
  if (cls.empty()) throw std::invalid_argument("census_run: empty class");
  for (const auto* m : cls)
    if (!m->sig().same_as(formula.sig()))
      throw std::invalid_argument("census_run: signature mismatch in class");
  {
    std::set<std::string> names;
    for (const auto& v : object_vars) names.insert(v.name);
    for (const auto& v : param_vars) names.insert(v.name);
    if (names.size() != object_vars.size() + param_vars.size())
      throw std::invalid_argument("census_run: duplicate variable name");
    for (int slot : formula.free_slots()) {
      const auto& name = formula.vars()[slot].name;
      if (!names.count(name))
        throw std::invalid_argument("unbound variable '" + name + "'");
    }
  }

  CensusResult result;
  for (const auto& v : object_vars) result.object_names.push_back(v.name);
  for (const auto& v : param_vars) result.param_names.push_back(v.name);

  for (const auto* m : cls) {
    auto objects = resolve_vars(*m, formula, object_vars);
    ParamLayout params = layout_params(*m, formula, param_vars);

    std::uint64_t object_factor = 1;
    std::uint64_t object_space = 1;
    std::vector<int> object_slots;
    for (const auto& o : objects) {
      if (o.slot >= 0) {
        object_slots.push_back(o.slot);
        object_space = saturating_product({object_space, o.carrier});
      } else {
        object_factor = saturating_product({object_factor, o.carrier});
      }
    }

    std::uint64_t evals =
        saturating_product({params.present_space, object_space});
    if (evals > options.budget)
      throw BudgetExceeded(m->name(), evals, options.budget);

    unsigned workers = options.workers
                           ? options.workers
                           : std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t space = params.present_space;
    workers = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, std::max<std::uint64_t>(space, 1)));

    struct Local {
      std::map<std::uint64_t, std::uint64_t> mult;
      std::map<std::uint64_t, std::uint64_t> rep_index;
    };
    std::vector<Local> locals(workers);

    auto work = [&](unsigned w) {
      std::uint64_t begin = space * w / workers;
      std::uint64_t end = space * (w + 1) / workers;
      if (begin >= end) return;
      Evaluator ev(*m, formula);
      std::vector<Elem> slots(formula.vars().size(), 0);
      std::vector<Elem> tuple(params.vars.size(), 0);
      auto& local = locals[w];
      for (std::uint64_t t = begin; t < end; ++t) {
        decode_present(params, t, slots, tuple);
        std::uint64_t c =
            object_factor * ev.count_objects(object_slots, slots);
        local.mult[c] += params.absent_factor;
        auto [it, fresh] = local.rep_index.emplace(c, t);
        if (!fresh && t < it->second) it->second = t;
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }

    CountTable table;
    table.structure_name = m->name();
    table.param_space = params.full_space;
    std::map<std::uint64_t, std::uint64_t> reps;
    for (const auto& local : locals) {
      for (const auto& [value, mult] : local.mult)
        table.multiplicity[value] += mult;
      for (const auto& [value, rep] : local.rep_index) {
        auto [it, fresh] = reps.emplace(value, rep);
        if (!fresh && rep < it->second) it->second = rep;
      }
    }
    for (const auto& [value, rep] : reps) {
      std::vector<Elem> slots(formula.vars().size(), 0);
      std::vector<Elem> tuple(params.vars.size(), 0);
      decode_present(params, rep, slots, tuple);
      table.representative[value] = tuple;
    }
    result.tables.push_back(std::move(table));
  }
  return result;
}

BoundedSizesResult bounded_sizes_check(const std::vector<CountTable>& tables) {
  BoundedSizesResult out;
  if (tables.empty()) return out;
  for (const auto& t : tables) out.bound = std::max(out.bound, t.distinct());
  std::size_t third = (tables.size() + 2) / 3;
  out.holds = true;
  for (std::size_t i = tables.size() - third; i < tables.size(); ++i)
    if (tables[i].distinct() != out.bound) out.holds = false;
  return out;
}

SizeTable size_table_from_declared(
    const std::vector<const FiniteStructure*>& cls,
    const std::vector<std::string>& vars) {
  SizeTable table;
  table.vars = vars;
  for (const auto* m : cls) {
    std::vector<Rat> row;
    for (const auto& v : vars) row.push_back(m->declared_value(v));
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

// Count values per class, aligned across structures by descending rank.
struct AlignedClasses {
  std::size_t class_count = 0;
  // value_of[k][s]: count of class k in structure s, if present
  std::vector<std::vector<std::optional<std::uint64_t>>> value_of;
  bool warning = false;
};

AlignedClasses align_classes(const std::vector<CountTable>& tables) {
  AlignedClasses out;
  std::vector<std::vector<std::uint64_t>> sorted(tables.size());
  for (std::size_t s = 0; s < tables.size(); ++s) {
    for (const auto& [value, mult] : tables[s].multiplicity)
      sorted[s].push_back(value);
    std::sort(sorted[s].rbegin(), sorted[s].rend());
    out.class_count = std::max(out.class_count, sorted[s].size());
  }
  out.value_of.assign(out.class_count, {});
  for (std::size_t k = 0; k < out.class_count; ++k) {
    out.value_of[k].resize(tables.size());
    std::optional<std::uint64_t> prev;
    for (std::size_t s = 0; s < tables.size(); ++s) {
      if (k < sorted[s].size()) {
        out.value_of[k][s] = sorted[s][k];
        // Count curves that dip across the (size-ordered) class usually
        // mean rank alignment crossed two classes.
        if (prev && *prev > sorted[s][k]) out.warning = true;
        prev = sorted[s][k];
      }
    }
  }
  return out;
}

struct ExactSolve {
  bool underdetermined = false;
  std::vector<Rat> solution;
};

// Gaussian elimination over Q; unique solution of the pivot subsystem.
ExactSolve solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> y) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_row;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[r]);
    std::swap(y[pivot], y[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat factor = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
      y[i] -= factor * y[r];
    }
    pivot_row.push_back(c);
    ++r;
  }
  ExactSolve out;
  if (pivot_row.size() < cols) {
    out.underdetermined = true;
    return out;
  }
  out.solution.assign(cols, Rat(0));
  for (std::size_t i = 0; i < cols; ++i)
    out.solution[pivot_row[i]] = y[i] / a[i][pivot_row[i]];
  return out;
}

std::string class_name(std::size_t k) {
  return "class" + std::to_string(k + 1);
}

}  // namespace

PartitionReport fit_exact(const std::vector<CountTable>& tables,
                          const SizeTable& sizes,
                          const std::vector<std::vector<Rat>>& basis,
                          const FitExactOptions& options) {
  if (tables.size() != sizes.rows.size())
    throw std::invalid_argument("fit_exact: size table misaligned with census");
  if (basis.empty()) throw std::invalid_argument("fit_exact: empty basis");
  for (const auto& e : basis)
    if (e.size() != sizes.vars.size())
      throw std::invalid_argument("fit_exact: basis arity mismatch");

  // Basis values per structure, exact.
  std::vector<std::vector<Rat>> basis_at(tables.size());
  for (std::size_t s = 0; s < tables.size(); ++s) {
    for (const auto& e : basis) {
      Rat value = 1;
      for (std::size_t i = 0; i < e.size(); ++i) {
        auto p = rat_pow(sizes.rows[s][i], e[i]);
        if (!p)
          throw std::invalid_argument(
              "fit_exact: basis exponent has no exact value at structure " +
              tables[s].structure_name);
        value *= *p;
      }
      basis_at[s].push_back(value);
    }
  }

  auto aligned = align_classes(tables);
  PartitionReport report;
  report.vars = sizes.vars;
  report.alignment_warning = aligned.warning;

  for (std::size_t k = 0; k < aligned.class_count; ++k) {
    FittedClass cls;
    cls.name = class_name(k);
    cls.present.resize(tables.size());
    cls.counts.resize(tables.size(), 0);
    std::vector<std::size_t> rows;
    for (std::size_t s = 0; s < tables.size(); ++s) {
      if (aligned.value_of[k][s]) {
        cls.present[s] = true;
        cls.counts[s] = *aligned.value_of[k][s];
        rows.push_back(s);
      }
    }

    std::size_t train = options.train ? options.train
                                      : std::max(basis.size(),
                                                 (rows.size() + 1) / 2);
    train = std::min(train, rows.size());
    cls.h = MeasuringFunction(sizes.vars);
    if (basis.size() > train) {
      cls.verdict = "inconclusive";
      cls.note = "underdetermined system: " + std::to_string(basis.size()) +
                 " basis elements, " + std::to_string(train) +
                 " training structures";
      report.classes.push_back(std::move(cls));
      continue;
    }

    std::vector<std::vector<Rat>> a;
    std::vector<Rat> y;
    for (std::size_t i = 0; i < train; ++i) {
      a.push_back(basis_at[rows[i]]);
      y.push_back(Rat(cls.counts[rows[i]]));
    }
    auto solved = solve_exact(std::move(a), std::move(y));
    if (solved.underdetermined) {
      cls.verdict = "inconclusive";
      cls.note = "underdetermined system: training rows are rank-deficient";
      report.classes.push_back(std::move(cls));
      continue;
    }
    for (std::size_t e = 0; e < basis.size(); ++e)
      cls.h.add_term(basis[e], solved.solution[e]);

    bool exact = true;
    for (std::size_t s : rows) {
      Rat predicted = 0;
      for (std::size_t e = 0; e < basis.size(); ++e)
        predicted += solved.solution[e] * basis_at[s][e];
      Rat residual = Rat(cls.counts[s]) - predicted;
      cls.residuals.push_back(residual);
      if (residual != 0) exact = false;
    }
    cls.verdict = exact ? "MEC-exact" : "refuted";
    if (!exact) cls.note = "nonzero residual on verification";
    report.classes.push_back(std::move(cls));
  }
  return report;
}

PartitionReport align_report(const std::vector<CountTable>& tables) {
  auto aligned = align_classes(tables);
  PartitionReport report;
  report.alignment_warning = aligned.warning;
  for (std::size_t k = 0; k < aligned.class_count; ++k) {
    FittedClass cls;
    cls.name = class_name(k);
    cls.present.resize(tables.size());
    cls.counts.resize(tables.size(), 0);
    for (std::size_t s = 0; s < tables.size(); ++s) {
      if (aligned.value_of[k][s]) {
        cls.present[s] = true;
        cls.counts[s] = *aligned.value_of[k][s];
      }
    }
    report.classes.push_back(std::move(cls));
  }
  return report;
}

namespace {

// Least squares for small dense systems; zero-variance columns get
// exponent 0 instead of making the normal equations singular.
std::optional<std::vector<double>> solve_least_squares(
    const std::vector<std::vector<double>>& a, const std::vector<double>& y) {
  if (a.empty()) return std::nullopt;
  std::size_t cols = a[0].size();
  std::vector<bool> active(cols, false);
  for (const auto& row : a)
    for (std::size_t j = 0; j < cols; ++j)
      if (std::fabs(row[j]) > 1e-12) active[j] = true;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < cols; ++j)
    if (active[j]) idx.push_back(j);
  std::size_t k = idx.size();
  std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
  std::vector<double> aty(k, 0.0);
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j)
        ata[i][j] += a[r][idx[i]] * a[r][idx[j]];
      aty[i] += a[r][idx[i]] * y[r];
    }
  }
  // Gauss with partial pivoting.
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    for (std::size_t i = c + 1; i < k; ++i)
      if (std::fabs(ata[i][c]) > std::fabs(ata[pivot][c])) pivot = i;
    if (std::fabs(ata[pivot][c]) < 1e-12) return std::nullopt;
    std::swap(ata[pivot], ata[c]);
    std::swap(aty[pivot], aty[c]);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c) continue;
      double f = ata[i][c] / ata[c][c];
      for (std::size_t j = c; j < k; ++j) ata[i][j] -= f * ata[c][j];
      aty[i] -= f * aty[c];
    }
  }
  std::vector<double> full(cols, 0.0);
  for (std::size_t i = 0; i < k; ++i) full[idx[i]] = aty[i] / ata[i][i];
  return full;
}

Rat round_small_denominator(double x, unsigned max_den) {
  Rat best(0);
  double best_err = std::numeric_limits<double>::infinity();
  for (unsigned den = 1; den <= max_den; ++den) {
    long long num = std::llround(x * den);
    double err = std::fabs(x - static_cast<double>(num) / den);
    if (err + 1e-15 < best_err) {
      best_err = err;
      best = Rat(num, den);
    }
  }
  return best;
}

}  // namespace

PartitionReport fit_asymptotic(const std::vector<CountTable>& tables,
                               const SizeTable& sizes,
                               const LimitRegime& regime,
                               const FitAsymptoticOptions& options) {
  (void)regime;  // reserved for exponent tie-breaks; rounding suffices here
  if (tables.size() != sizes.rows.size())
    throw std::invalid_argument(
        "fit_asymptotic: size table misaligned with census");
  auto aligned = align_classes(tables);
  PartitionReport report;
  report.vars = sizes.vars;
  report.alignment_warning = aligned.warning;

  auto bounded = bounded_sizes_check(tables);

  for (std::size_t k = 0; k < aligned.class_count; ++k) {
    FittedClass cls;
    cls.name = class_name(k);
    cls.present.resize(tables.size());
    cls.counts.resize(tables.size(), 0);
    cls.h = MeasuringFunction(sizes.vars);
    std::vector<std::size_t> rows;
    for (std::size_t s = 0; s < tables.size(); ++s) {
      if (aligned.value_of[k][s]) {
        cls.present[s] = true;
        cls.counts[s] = *aligned.value_of[k][s];
        rows.push_back(s);
      }
    }

    if (tables.size() < 6) {
      cls.verdict = "inconclusive";
      cls.note = "fewer than 6 structures";
      report.classes.push_back(std::move(cls));
      continue;
    }
    if (!bounded.holds) {
      cls.verdict = "refuted";
      cls.note = "number of distinct counts keeps growing across the class";
      report.classes.push_back(std::move(cls));
      continue;
    }

    bool all_zero = true;
    for (std::size_t s : rows) all_zero = all_zero && cls.counts[s] == 0;
    if (all_zero) {
      cls.verdict = "MAC-asymptotic";
      cls.note = "empty definable family; h = 0";
      report.classes.push_back(std::move(cls));
      continue;
    }

    // Exponent vector from consecutive log ratios.
    std::vector<std::vector<double>> a;
    std::vector<double> y;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      std::uint64_t c0 = cls.counts[rows[i]];
      std::uint64_t c1 = cls.counts[rows[i + 1]];
      if (c0 == 0 || c1 == 0) continue;
      std::vector<double> drow;
      for (std::size_t j = 0; j < sizes.vars.size(); ++j) {
        double s0 = sizes.rows[rows[i]][j].convert_to<double>();
        double s1 = sizes.rows[rows[i + 1]][j].convert_to<double>();
        drow.push_back(std::log(s1) - std::log(s0));
      }
      a.push_back(std::move(drow));
      y.push_back(std::log(static_cast<double>(c1)) -
                  std::log(static_cast<double>(c0)));
    }
    auto solution = solve_least_squares(a, y);
    if (!solution) {
      cls.verdict = "inconclusive";
      cls.note = "cannot recover exponents from log ratios";
      report.classes.push_back(std::move(cls));
      continue;
    }
    std::vector<Rat> exponents;
    for (double d : *solution) exponents.push_back(round_small_denominator(d, 4));

    auto predict = [&](std::size_t s) {
      double acc = 1.0;
      for (std::size_t j = 0; j < exponents.size(); ++j)
        acc *= std::pow(sizes.rows[s][j].convert_to<double>(),
                        exponents[j].convert_to<double>());
      return acc;
    };
    std::size_t last = rows.back();
    double mu = cls.counts[last] / predict(last);
    Rat mu_rat = rationalize(mu, 1000000);
    if (mu_rat <= 0) mu_rat = rationalize(mu, 1000000000);
    cls.h.add_term(exponents, mu_rat);

    std::vector<double> errors;
    bool degenerate = false;
    for (std::size_t s : rows) {
      double predicted = mu * predict(s);
      if (predicted <= 0) {
        degenerate = true;
        break;
      }
      double err =
          std::fabs(static_cast<double>(cls.counts[s]) - predicted) / predicted;
      errors.push_back(err);
      cls.residuals.push_back(rationalize(err, 1000000));
    }
    if (degenerate) {
      cls.verdict = "inconclusive";
      cls.note = "degenerate monomial prediction";
      report.classes.push_back(std::move(cls));
      continue;
    }
    std::size_t n = errors.size();
    std::size_t third = n / 3;
    double err_mid = 0.0, err_large = 0.0;
    for (std::size_t i = third; i < 2 * third; ++i)
      err_mid = std::max(err_mid, errors[i]);
    for (std::size_t i = 2 * third; i < n; ++i)
      err_large = std::max(err_large, errors[i]);

    if (err_large < options.epsilon &&
        (err_large < err_mid || err_large == 0.0)) {
      cls.verdict = "MAC-asymptotic";
      cls.note = "asymptotic evidence: max rel. error " +
                 std::to_string(err_large) + " on the largest third";
    } else if (err_large > err_mid && err_large > options.epsilon) {
      cls.verdict = "refuted";
      cls.note = "relative error grows: middle " + std::to_string(err_mid) +
                 ", largest " + std::to_string(err_large);
    } else {
      cls.verdict = "inconclusive";
      cls.note = "no clear error trend: middle " + std::to_string(err_mid) +
                 ", largest " + std::to_string(err_large);
    }
    report.classes.push_back(std::move(cls));
  }
  return report;
}

PartitionReport verify_discriminators(
    const std::vector<const FiniteStructure*>& cls, const Formula& formula,
    const std::vector<VarSpec>& object_vars,
    const std::vector<VarSpec>& param_vars, PartitionReport report,
    const std::map<std::string, std::string>& discriminators,
    const CensusOptions& options) {
  if (discriminators.empty()) return report;

  // Parse each discriminator against the class signature and pin parameter
  // sorts; free variables must lie within the parameter tuple.
  std::map<std::string, std::size_t> class_index;
  for (std::size_t k = 0; k < report.classes.size(); ++k)
    class_index[report.classes[k].name] = k;

  for (const auto& [name, text] : discriminators) {
    if (!class_index.count(name))
      throw std::invalid_argument("verify_discriminators: unknown class '" +
                                  name + "'");
    report.classes[class_index[name]].discriminator = text;
    report.classes[class_index[name]].discriminator_status = "verified";
  }

  for (std::size_t si = 0; si < cls.size(); ++si) {
    const FiniteStructure& m = *cls[si];
    auto objects = resolve_vars(m, formula, object_vars);
    ParamLayout params = layout_params(m, formula, param_vars);

    std::map<std::string, std::string> declared;
    for (const auto& v : params.vars)
      declared[v.name] = m.sig().sort_name(v.sort);

    struct Disc {
      std::size_t class_k;
      Formula formula;
      std::vector<int> param_slot_map;  // formula slot per census param index
    };
    std::vector<Disc> discs;
    for (const auto& [name, text] : discriminators) {
      Disc d{class_index.at(name), parse_formula(text, m.sig_ptr(), declared),
             {}};
      for (int slot : d.formula.free_slots()) {
        const auto& vname = d.formula.vars()[slot].name;
        bool known = false;
        for (std::size_t i = 0; i < params.vars.size(); ++i) {
          if (params.vars[i].name == vname) {
            if (params.vars[i].sort != d.formula.vars()[slot].sort)
              throw std::invalid_argument(
                  "discriminator sort mismatch on '" + vname + "'");
            known = true;
          }
        }
        if (!known)
          throw std::invalid_argument(
              "discriminator uses non-parameter variable '" + vname + "'");
      }
      d.param_slot_map.assign(params.vars.size(), -1);
      for (std::size_t i = 0; i < params.vars.size(); ++i)
        d.param_slot_map[i] = d.formula.free_slot(params.vars[i].name);
      discs.push_back(std::move(d));
    }

    std::uint64_t object_factor = 1;
    std::vector<int> object_slots;
    for (const auto& o : objects) {
      if (o.slot >= 0)
        object_slots.push_back(o.slot);
      else
        object_factor = saturating_product({object_factor, o.carrier});
    }
    if (params.full_space > options.budget)
      throw BudgetExceeded(m.name(), params.full_space, options.budget);

    // Rank lookup: count value -> class index in this structure.
    std::vector<std::uint64_t> values;
    {
      Evaluator ev(m, formula);
      std::vector<Elem> slots(formula.vars().size(), 0);
      std::vector<Elem> tuple(params.vars.size(), 0);
      std::set<std::uint64_t> seen;
      for (std::uint64_t t = 0; t < params.present_space; ++t) {
        decode_present(params, t, slots, tuple);
        seen.insert(object_factor * ev.count_objects(object_slots, slots));
      }
      values.assign(seen.rbegin(), seen.rend());  // descending
    }
    std::map<std::uint64_t, std::size_t> rank;
    for (std::size_t k = 0; k < values.size(); ++k) rank[values[k]] = k;

    // Full parameter space: the discriminator may inspect parameters the
    // counted formula ignores.
    Evaluator ev(m, formula);
    std::vector<Evaluator> disc_ev;
    for (const auto& d : discs) disc_ev.emplace_back(m, d.formula);
    std::vector<Elem> slots(formula.vars().size(), 0);
    std::vector<Elem> tuple(params.vars.size(), 0);

    std::vector<std::uint64_t> full_sizes;
    for (const auto& v : params.vars) full_sizes.push_back(v.carrier);
    std::vector<Elem> full_tuple(params.vars.size(), 0);
    for (std::uint64_t t = 0; t < std::max<std::uint64_t>(params.full_space, 1);
         ++t) {
      // Decode t over the full parameter tuple, last variable fastest.
      std::uint64_t rest = t;
      for (std::size_t j = params.vars.size(); j-- > 0;) {
        full_tuple[j] = static_cast<Elem>(rest % full_sizes[j]);
        rest /= full_sizes[j];
      }
      for (std::size_t j = 0; j < params.vars.size(); ++j)
        if (params.vars[j].slot >= 0) slots[params.vars[j].slot] = full_tuple[j];
      std::uint64_t c = object_factor * ev.count_objects(object_slots, slots);
      std::size_t k_hat = rank.at(c);
      for (std::size_t di = 0; di < discs.size(); ++di) {
        auto& cls_entry = report.classes[discs[di].class_k];
        if (cls_entry.discriminator_status == "refuted") continue;
        std::vector<Elem> dslots(discs[di].formula.vars().size(), 0);
        for (std::size_t j = 0; j < params.vars.size(); ++j)
          if (discs[di].param_slot_map[j] >= 0)
            dslots[discs[di].param_slot_map[j]] = full_tuple[j];
        bool in_disc = disc_ev[di].eval_slots(dslots);
        bool in_class = discs[di].class_k == k_hat;
        if (in_disc != in_class) {
          cls_entry.discriminator_status = "refuted";
          cls_entry.note = "discriminator mismatch on " + m.name();
        }
      }
    }
  }
  return report;
}

std::vector<ComposedFunction> compose_projection(
    const MeasuringData& inner, const std::vector<MeasuringData>& outer) {
  if (inner.h.size() != outer.size())
    throw std::invalid_argument(
        "compose_projection: outer data must give one dataset per inner class");
  for (const auto& o : outer)
    if (o.vars != inner.vars)
      throw std::invalid_argument("compose_projection: variable mismatch");

  std::vector<ComposedFunction> out;
  std::vector<std::size_t> choice(inner.h.size(), 0);
  while (true) {
    MeasuringFunction m(inner.vars);
    for (std::size_t pi = 0; pi < inner.h.size(); ++pi)
      m = m + inner.h[pi] * outer[pi].h[choice[pi]];
    out.push_back({choice, std::move(m)});
    std::size_t i = choice.size();
    bool carried = true;
    while (i > 0 && carried) {
      --i;
      if (++choice[i] < outer[i].h.size()) {
        carried = false;
      } else {
        choice[i] = 0;
      }
    }
    if (carried) break;
  }
  return out;
}

ChainReport nonmac_chain_detect(const CensusResult& census, const Rat& ratio) {
  if (ratio <= 1)
    throw std::invalid_argument("nonmac_chain_detect: ratio must exceed 1");
  ChainReport report;
  report.ratio = ratio;
  for (const auto& table : census.tables) {
    ChainPerStructure per;
    per.structure_name = table.structure_name;
    std::vector<std::uint64_t> values;
    for (const auto& [value, mult] : table.multiplicity)
      values.push_back(value);
    std::sort(values.begin(), values.end());
    // Greedy from the smallest value, always taking the smallest count
    // exceeding ratio * current; exchange argument makes this maximal.
    if (!values.empty()) {
      std::uint64_t current = values[0];
      per.chain.push_back(current);
      for (std::uint64_t v : values) {
        if (Rat(v) > ratio * Rat(current)) {
          per.chain.push_back(v);
          current = v;
        }
      }
      per.length = per.chain.size();
      for (std::uint64_t v : per.chain) {
        auto it = table.representative.find(v);
        per.witnesses.push_back(it == table.representative.end()
                                    ? std::vector<Elem>{}
                                    : it->second);
      }
    }
    report.per_structure.push_back(std::move(per));
  }

  std::size_t n = report.per_structure.size();
  if (n >= 3) {
    std::size_t third = (n + 2) / 3;
    std::size_t first_max = 0, last_max = 0;
    for (std::size_t i = 0; i < third; ++i)
      first_max = std::max(first_max, report.per_structure[i].length);
    for (std::size_t i = n - third; i < n; ++i)
      last_max = std::max(last_max, report.per_structure[i].length);
    report.refuted = last_max > first_max && last_max >= 2;
    report.note = report.refuted
                      ? "chain length grows across the class (" +
                            std::to_string(first_max) + " -> " +
                            std::to_string(last_max) + ")"
                      : "no chain growth detected";
  } else if (n > 0) {
    report.note = "class too small for a growth verdict";
  }
  return report;
}

RegularityResult tuple_regularity(const FiniteStructure& structure,
                                  const Formula& phi,
                                  const std::string& object_var,
                                  const std::string& param_var,
                                  std::uint32_t max_len) {
  int x_slot = phi.free_slot(object_var);
  int y_slot = phi.free_slot(param_var);
  if (x_slot < 0 || y_slot < 0)
    throw std::invalid_argument(
        "tuple_regularity: object and parameter variables must be free");
  if (phi.free_slots().size() != 2)
    throw std::invalid_argument(
        "tuple_regularity: formula must have exactly object and parameter free");

  std::uint64_t object_carrier = structure.carrier(phi.vars()[x_slot].sort);
  std::uint64_t param_carrier = structure.carrier(phi.vars()[y_slot].sort);
  int param_sort = phi.vars()[y_slot].sort;

  // sat[b][x]
  Evaluator ev(structure, phi);
  std::vector<std::vector<bool>> sat(
      param_carrier, std::vector<bool>(object_carrier, false));
  std::vector<Elem> slots(phi.vars().size(), 0);
  for (std::uint64_t b = 0; b < param_carrier; ++b) {
    slots[y_slot] = static_cast<Elem>(b);
    for (std::uint64_t x = 0; x < object_carrier; ++x) {
      slots[x_slot] = static_cast<Elem>(x);
      sat[b][x] = ev.eval_slots(slots);
    }
  }

  // Relations applicable to tuples of the parameter sort.
  std::vector<int> rels;
  for (std::size_t r = 0; r < structure.sig().relations().size(); ++r) {
    bool usable = true;
    for (int s : structure.sig().relation(static_cast<int>(r)).arg_sorts)
      if (s != param_sort) usable = false;
    if (usable) rels.push_back(static_cast<int>(r));
  }

  RegularityResult result;
  for (std::uint32_t len = 1; len <= max_len; ++len) {
    double space = std::pow(static_cast<double>(param_carrier), len);
    if (space > 1e7)
      throw std::invalid_argument("tuple_regularity: tuple space too large");
    std::map<std::vector<bool>, std::pair<std::uint64_t, std::vector<Elem>>>
        groups;
    std::vector<Elem> tuple(len, 0);
    while (true) {
      // Atomic type: equalities plus every relation atom over components.
      std::vector<bool> type;
      for (std::uint32_t i = 0; i < len; ++i)
        for (std::uint32_t j = i + 1; j < len; ++j)
          type.push_back(tuple[i] == tuple[j]);
      std::vector<Elem> args;
      for (int r : rels) {
        std::size_t arity = structure.sig().relation(r).arg_sorts.size();
        std::vector<std::uint32_t> pos(arity, 0);
        while (true) {
          args.clear();
          for (std::uint32_t p : pos) args.push_back(tuple[p]);
          type.push_back(structure.rel(r, args));
          std::size_t i = arity;
          bool carried = true;
          while (i > 0 && carried) {
            --i;
            if (++pos[i] < len) {
              carried = false;
            } else {
              pos[i] = 0;
            }
          }
          if (carried) break;
        }
      }

      std::uint64_t count = 0;
      for (std::uint64_t x = 0; x < object_carrier; ++x) {
        bool all = true;
        for (std::uint32_t i = 0; i < len && all; ++i)
          all = sat[tuple[i]][x];
        if (all) ++count;
      }

      auto [it, fresh] = groups.emplace(
          type, std::make_pair(count, std::vector<Elem>(tuple)));
      if (!fresh && it->second.first != count) {
        result.regular = false;
        result.tuple_length = len;
        result.tuple_a = it->second.second;
        result.tuple_b = tuple;
        result.count_a = it->second.first;
        result.count_b = count;
        return result;
      }

      std::size_t i = len;
      bool carried = true;
      while (i > 0 && carried) {
        --i;
        if (++tuple[i] < param_carrier) {
          carried = false;
        } else {
          tuple[i] = 0;
        }
      }
      if (carried) break;
    }
  }
  return result;
}

TournamentScanReport tournament_scan(std::uint32_t max_n) {
  TournamentScanReport report;
  report.max_n = max_n;
  for (std::uint32_t n = 1; n <= max_n; ++n) {
    auto reps = enumerate_tournaments(n, true);
    report.iso_counts.push_back(reps.size());
    for (const auto& t : reps) {
      int r_beats = t.sig().symbol_index("beats");
      auto beats = [&](Elem a, Elem b) {
        std::array<Elem, 2> args{a, b};
        return t.rel(r_beats, args);
      };

      std::vector<std::uint32_t> outdeg(n, 0);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          if (beats(a, b)) ++outdeg[a];
      bool degree_regular =
          std::all_of(outdeg.begin(), outdeg.end(),
                      [&](std::uint32_t d) { return d == outdeg[0]; });
      if (degree_regular && n % 2 == 0 && n > 1)
        report.regular_orders_all_odd = false;

      // 3-regularity: realisation counts of 1-types over distinct tuples of
      // length <= 3 must depend only on the tuple's quantifier-free type.
      bool three_regular = true;
      for (std::uint32_t len = 1; len <= std::min<std::uint32_t>(3, n) &&
                                  three_regular;
           ++len) {
        std::map<std::vector<bool>, std::vector<std::uint64_t>> seen;
        std::vector<Elem> tuple(len, 0);
        while (three_regular) {
          bool distinct = true;
          for (std::uint32_t i = 0; i < len && distinct; ++i)
            for (std::uint32_t j = i + 1; j < len; ++j)
              if (tuple[i] == tuple[j]) distinct = false;
          if (distinct) {
            std::vector<bool> type;
            for (std::uint32_t i = 0; i < len; ++i)
              for (std::uint32_t j = i + 1; j < len; ++j)
                type.push_back(beats(tuple[i], tuple[j]));
            std::vector<std::uint64_t> counts;
            for (std::uint32_t pattern = 0; pattern < (1u << len); ++pattern) {
              std::uint64_t c = 0;
              for (Elem x = 0; x < n; ++x) {
                bool in_tuple = false;
                for (Elem a : tuple) in_tuple = in_tuple || a == x;
                if (in_tuple) continue;
                bool match = true;
                for (std::uint32_t i = 0; i < len && match; ++i) {
                  bool wanted = (pattern >> i) & 1;
                  match = beats(tuple[i], x) == wanted;
                }
                if (match) ++c;
              }
              counts.push_back(c);
            }
            auto [it, fresh] = seen.emplace(type, counts);
            if (!fresh && it->second != counts) three_regular = false;
          }
          std::size_t i = len;
          bool carried = true;
          while (i > 0 && carried) {
            --i;
            if (++tuple[i] < n) {
              carried = false;
            } else {
              tuple[i] = 0;
            }
          }
          if (carried) break;
        }
      }

      // Recover the orientation bits for the report entry.
      std::uint64_t bits = 0;
      std::uint32_t slot = 0;
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j, ++slot)
          if (beats(i, j)) bits |= std::uint64_t{1} << slot;

      TournamentScanEntry entry{n, bits, degree_regular, three_regular};
      report.entries.push_back(entry);
      if (three_regular) report.three_regular.push_back(entry);
    }
  }
  return report;
}

}  // namespace macscope
