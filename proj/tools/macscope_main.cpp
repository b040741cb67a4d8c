#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "macscope/builders.hpp"
#include "macscope/census.hpp"
#include "macscope/measuring.hpp"
#include "macscope/oracles.hpp"
#include "macscope/parser.hpp"
#include "macscope/report.hpp"
#include "macscope/semiring.hpp"
#include "macscope/spec_io.hpp"

namespace {

using namespace macscope;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRefuted = 2;

std::vector<std::string> split_list(const std::string& text, char delim = ',') {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(delim, start);
    out.push_back(text.substr(start, pos == std::string::npos
                                         ? std::string::npos
                                         : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<VarSpec> parse_var_specs(const std::string& text) {
  std::vector<VarSpec> out;
  for (const auto& piece : split_list(text)) {
    auto colon = piece.find(':');
    if (colon == std::string::npos)
      out.emplace_back(piece);
    else
      out.emplace_back(piece.substr(0, colon), piece.substr(colon + 1));
  }
  return out;
}

std::vector<std::vector<Rat>> parse_basis(const std::string& text) {
  std::vector<std::vector<Rat>> out;
  for (const auto& vec : split_list(text, ';')) {
    std::vector<Rat> exps;
    for (const auto& item : split_list(vec)) {
      auto r = rat_from_string(item);
      if (!r) throw std::invalid_argument("bad exponent '" + item + "'");
      exps.push_back(*r);
    }
    out.push_back(std::move(exps));
  }
  return out;
}

void emit(const Json& report, const std::string& out_path) {
  std::string text = report.dump(2);
  text.push_back('\n');
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("MACSCOPE_BUDGET")) {
    return std::stoull(env);
  }
  return CensusOptions{}.budget;
}

// Census-style inputs shared by census/fit/verify/regularity-structure.
struct ClassInputs {
  std::vector<std::string> class_specs;
  std::vector<std::string> spec_files;
  std::string formula_text;
  std::string formula_file;
  std::string object_list;
  std::string param_list;
  std::uint64_t budget = 0;
  unsigned workers = 0;
  std::string out_path;
  std::string csv_path;

  std::vector<FiniteStructure> structures;
  std::vector<const FiniteStructure*> cls;
  std::vector<VarSpec> objects;
  std::vector<VarSpec> params;
  std::string formula_source;

  void add_flags(CLI::App* cmd, bool with_params = true) {
    cmd->add_option("--class", class_specs,
                    "class spec, e.g. paley:q=13,17,29 (repeatable)");
    cmd->add_option("--spec", spec_files, "structure spec file (repeatable)");
    cmd->add_option("--formula", formula_text, "formula text");
    cmd->add_option("--formula-file", formula_file, "file with formula text");
    cmd->add_option("--object", object_list, "object variables, e.g. x,y");
    if (with_params)
      cmd->add_option("--params", param_list,
                      "parameter variables, e.g. u,w or y:G");
    cmd->add_option("--budget", budget, "evaluation budget");
    cmd->add_option("--workers", workers, "census worker threads");
    cmd->add_option("--out", out_path, "report output path (default stdout)");
    cmd->add_option("--csv", csv_path, "tabular export path");
  }

  void materialize() {
    for (const auto& spec : class_specs)
      for (auto& m : expand_class_spec(spec)) structures.push_back(std::move(m));
    for (const auto& file : spec_files)
      structures.push_back(structure_from_file(file));
    if (structures.empty())
      throw std::invalid_argument("no structures: use --class or --spec");
    for (const auto& m : structures) cls.push_back(&m);

    if (!formula_file.empty()) {
      std::ifstream in(formula_file);
      if (!in) throw std::invalid_argument("cannot open " + formula_file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      formula_source = buffer.str();
      while (!formula_source.empty() &&
             (formula_source.back() == '\n' || formula_source.back() == '\r'))
        formula_source.pop_back();
    } else {
      formula_source = formula_text;
    }
    if (formula_source.empty())
      throw std::invalid_argument("no formula: use --formula or --formula-file");
    objects = parse_var_specs(object_list);
    params = parse_var_specs(param_list);
    if (budget == 0) budget = default_budget();
  }

  Formula parse() const {
    return parse_formula(formula_source, structures.front().sig_ptr());
  }

  CensusOptions options() const {
    CensusOptions opts;
    opts.budget = budget;
    opts.workers = workers;
    return opts;
  }

  Json config(const std::string& command) const {
    Json cfg{{"command", command},
             {"class", class_specs},
             {"spec_files", spec_files},
             {"formula", formula_source},
             {"object", object_list},
             {"params", param_list},
             {"budget", budget}};
    Json names = Json::array();
    for (const auto& m : structures) names.push_back(m.name());
    cfg["structures"] = names;
    return cfg;
  }
};

int cmd_census(ClassInputs& in, const std::string& chain_ratio) {
  in.materialize();
  Formula phi = in.parse();
  auto census = census_run(in.cls, phi, in.objects, in.params, in.options());
  Json report{{"config", in.config("census")}, {"census", to_json(census)}};
  auto bounded = bounded_sizes_check(census.tables);
  report["bounded_sizes"] =
      Json{{"bound", bounded.bound}, {"holds", bounded.holds}};

  int exit_code = kExitOk;
  if (!chain_ratio.empty()) {
    auto ratio = rat_from_string(chain_ratio);
    if (!ratio) throw std::invalid_argument("bad --chain-ratio");
    auto chain = nonmac_chain_detect(census, *ratio);
    report["chain"] = to_json(chain);
    if (chain.refuted) exit_code = kExitRefuted;
  }
  emit(report, in.out_path);
  return exit_code;
}

int cmd_fit(ClassInputs& in, const std::string& mode, const std::string& vars,
            const std::string& basis_text, std::size_t train,
            const std::string& regime_text, double eps) {
  in.materialize();
  Formula phi = in.parse();
  auto census = census_run(in.cls, phi, in.objects, in.params, in.options());
  auto var_names = split_list(vars);
  if (var_names.empty()) throw std::invalid_argument("fit: --vars required");
  SizeTable sizes = size_table_from_declared(in.cls, var_names);

  PartitionReport fit;
  if (mode == "exact") {
    if (basis_text.empty())
      throw std::invalid_argument("fit --mode exact needs --basis");
    FitExactOptions opts;
    opts.train = train;
    fit = fit_exact(census.tables, sizes, parse_basis(basis_text), opts);
  } else if (mode == "asym") {
    std::vector<std::size_t> priority;
    if (regime_text.empty()) {
      for (std::size_t i = 0; i < var_names.size(); ++i) priority.push_back(i);
    } else {
      for (const auto& name : split_list(regime_text)) {
        auto it = std::find(var_names.begin(), var_names.end(), name);
        if (it == var_names.end())
          throw std::invalid_argument("regime variable '" + name +
                                      "' not in --vars");
        priority.push_back(
            static_cast<std::size_t>(it - var_names.begin()));
      }
    }
    FitAsymptoticOptions opts;
    opts.epsilon = eps;
    fit = fit_asymptotic(census.tables, sizes, LimitRegime(priority), opts);
  } else {
    throw std::invalid_argument("fit: --mode must be exact or asym");
  }

  Json cfg = in.config("fit");
  cfg["mode"] = mode;
  cfg["vars"] = var_names;
  if (!basis_text.empty()) cfg["basis"] = basis_text;
  if (!regime_text.empty()) cfg["regime"] = regime_text;
  Json report{{"config", cfg},
              {"census", to_json(census)},
              {"fit", to_json(fit)}};
  emit(report, in.out_path);
  if (!in.csv_path.empty()) {
    std::ofstream csv(in.csv_path, std::ios::binary);
    csv << fit_report_csv(fit, census.tables);
  }
  for (const auto& cls : fit.classes)
    if (cls.verdict != "MEC-exact" && cls.verdict != "MAC-asymptotic")
      return kExitRefuted;
  return kExitOk;
}

int cmd_verify(ClassInputs& in, const std::vector<std::string>& discs) {
  in.materialize();
  Formula phi = in.parse();
  auto census = census_run(in.cls, phi, in.objects, in.params, in.options());

  PartitionReport report = align_report(census.tables);

  std::map<std::string, std::string> discriminators;
  for (const auto& d : discs) {
    auto eq = d.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--disc expects classN=FORMULA");
    discriminators[d.substr(0, eq)] = d.substr(eq + 1);
  }
  report = verify_discriminators(in.cls, phi, in.objects, in.params,
                                 std::move(report), discriminators,
                                 in.options());
  Json out{{"config", in.config("verify")},
           {"census", to_json(census)},
           {"verify", to_json(report)}};
  emit(out, in.out_path);
  for (const auto& cls : report.classes)
    if (cls.discriminator_status == "refuted") return kExitRefuted;
  return kExitOk;
}

LimitRegime regime_from_text(const std::string& text, std::size_t arity) {
  if (text.empty()) return LimitRegime(arity);
  std::vector<std::size_t> priority;
  for (const auto& item : split_list(text))
    priority.push_back(std::stoull(item));
  return LimitRegime(priority);
}

int cmd_semiring(const std::string& sub, const std::string& a_text,
                 const std::string& b_text, const std::string& poly_text,
                 const std::string& vars_text, const std::string& regime_text,
                 unsigned nmax, const std::string& out_path) {
  if (sub == "axioms") {
    // The reference sample: coefficients {0, 1/2, 1, 2, 3}, dimensions
    // Bottom plus {-1, 0, 1, 2}^2.
    std::vector<Monomial> sample{Monomial::zero()};
    std::vector<Rat> coeffs{Rat(1, 2), Rat(1), Rat(2), Rat(3)};
    std::vector<Rat> dims{Rat(-1), Rat(0), Rat(1), Rat(2)};
    for (const auto& c : coeffs)
      for (const auto& d1 : dims)
        for (const auto& d2 : dims)
          sample.push_back(Monomial(c, DimVec({d1, d2})));
    auto report = axiom_suite(sample, nmax, LimitRegime(2));
    Json out{{"config", Json{{"command", "semiring axioms"}, {"nmax", nmax}}},
             {"axioms", to_json(report)}};
    emit(out, out_path);
    return report.ok() ? kExitOk : kExitRefuted;
  }
  if (sub == "lt") {
    auto vars = split_list(vars_text);
    if (vars.empty()) throw std::invalid_argument("lt: --vars required");
    auto poly = MeasuringFunction::parse(poly_text, vars);
    if (!poly) throw std::invalid_argument("cannot parse polynomial");
    LimitRegime regime = [&]() {
      if (regime_text.empty()) return LimitRegime(vars.size());
      std::vector<std::size_t> priority;
      for (const auto& name : split_list(regime_text)) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end())
          throw std::invalid_argument("regime variable not in --vars");
        priority.push_back(static_cast<std::size_t>(it - vars.begin()));
      }
      return LimitRegime(priority);
    }();
    Monomial lt = leading_monomial(*poly, regime);
    Json out{{"config", Json{{"command", "semiring lt"},
                             {"poly", poly->to_string()},
                             {"vars", vars}}},
             {"leading_monomial", lt.to_string()}};
    emit(out, out_path);
    return kExitOk;
  }
  auto a = Monomial::parse(a_text);
  auto b = Monomial::parse(b_text);
  if (!a || !b) throw std::invalid_argument("cannot parse monomial");
  std::size_t arity = a->is_zero() ? (b->is_zero() ? 1 : b->dim().entries().size())
                                   : a->dim().entries().size();
  LimitRegime regime = regime_from_text(regime_text, arity);
  Json out{{"config", Json{{"command", "semiring " + sub},
                           {"a", a->to_string()},
                           {"b", b->to_string()}}}};
  if (sub == "add") {
    out["result"] = mono_add(*a, *b, regime).to_string();
  } else if (sub == "mul") {
    out["result"] = mono_mul(*a, *b).to_string();
  } else if (sub == "cmp") {
    auto ord = mono_cmp(*a, *b, regime);
    out["result"] = ord == std::strong_ordering::less
                        ? "LT"
                        : (ord == std::strong_ordering::greater ? "GT" : "EQ");
  } else {
    throw std::invalid_argument("unknown semiring subcommand");
  }
  emit(out, out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"macscope: definable-set counting workbench"};
  app.require_subcommand(1);

  // census
  auto* census_cmd = app.add_subcommand("census", "run a definable-set census");
  ClassInputs census_in;
  census_in.add_flags(census_cmd);
  std::string chain_ratio;
  census_cmd->add_option("--chain-ratio", chain_ratio,
                         "detect count chains with this ratio (> 1)");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fit measuring functions");
  ClassInputs fit_in;
  fit_in.add_flags(fit_cmd);
  std::string fit_mode = "exact", fit_vars, fit_basis, fit_regime;
  std::size_t fit_train = 0;
  double fit_eps = 0.05;
  fit_cmd->add_option("--mode", fit_mode, "exact | asym");
  fit_cmd->add_option("--vars", fit_vars, "size variables, e.g. q,V");
  fit_cmd->add_option("--basis", fit_basis,
                      "exponent vectors, e.g. '1,0;0,1;0,0'");
  fit_cmd->add_option("--train", fit_train, "training prefix length");
  fit_cmd->add_option("--regime", fit_regime,
                      "variable priority, slowest first");
  fit_cmd->add_option("--eps", fit_eps, "asymptotic tolerance");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "verify class discriminators");
  ClassInputs verify_in;
  verify_in.add_flags(verify_cmd);
  std::vector<std::string> verify_discs;
  verify_cmd->add_option("--disc", verify_discs,
                         "classN=FORMULA (repeatable)");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "paper-derived count checks");
  oracle_cmd->require_subcommand(1);
  auto* o_paley = oracle_cmd->add_subcommand("paley", "Paley inequality scan");
  std::uint32_t paley_q = 13, paley_mmax = 3;
  o_paley->add_option("--q", paley_q)->required();
  o_paley->add_option("--mmax", paley_mmax);
  std::string oracle_out;
  o_paley->add_option("--out", oracle_out);

  auto* o_bilinear =
      oracle_cmd->add_subcommand("bilinear", "symplectic fiber counts");
  std::uint32_t bil_q = 2, bil_dim = 2, bil_m = 0;
  std::uint64_t bil_budget = 1000000, bil_samples = 20000;
  o_bilinear->add_option("--q", bil_q)->required();
  o_bilinear->add_option("--dim", bil_dim)->required();
  o_bilinear->add_option("--m", bil_m);
  o_bilinear->add_option("--tuple-budget", bil_budget);
  o_bilinear->add_option("--samples", bil_samples);
  o_bilinear->add_option("--out", oracle_out);

  auto* o_gl = oracle_cmd->add_subcommand("gl", "gl_n centralizer sizes");
  std::uint32_t gl_n = 2, gl_q = 2;
  o_gl->add_option("--n", gl_n)->required();
  o_gl->add_option("--q", gl_q)->required();
  o_gl->add_option("--out", oracle_out);

  auto* o_dlog = oracle_cmd->add_subcommand("dlog", "discrete-log order");
  std::uint32_t dlog_q = 5, dlog_base = 0;
  o_dlog->add_option("--q", dlog_q)->required();
  o_dlog->add_option("--base", dlog_base);
  o_dlog->add_option("--out", oracle_out);

  auto* o_sdk = oracle_cmd->add_subcommand("sdk", "homocyclic count template");
  std::uint64_t sdk_p = 2;
  std::uint32_t sdk_m = 1, sdk_n = 1;
  std::string sdk_c;
  o_sdk->add_option("--p", sdk_p)->required();
  o_sdk->add_option("--m", sdk_m)->required();
  o_sdk->add_option("--n", sdk_n)->required();
  o_sdk->add_option("--c", sdk_c, "entries i,j:coeff separated by ;")
      ->required();
  o_sdk->add_option("--out", oracle_out);

  auto* o_vsdemo =
      oracle_cmd->add_subcommand("vsdemo", "vector-space family demo");
  std::string vsdemo_q = "2,3", vsdemo_dims = "1,2,3";
  o_vsdemo->add_option("--q", vsdemo_q);
  o_vsdemo->add_option("--dims", vsdemo_dims);
  o_vsdemo->add_option("--out", oracle_out);

  // regularity
  auto* reg_cmd = app.add_subcommand("regularity", "tuple regularity checks");
  reg_cmd->require_subcommand(1);
  auto* r_tour = reg_cmd->add_subcommand("tournaments", "tournament scan");
  std::uint32_t tour_n = 6;
  std::string reg_out;
  r_tour->add_option("--n", tour_n);
  r_tour->add_option("--out", reg_out);
  auto* r_struct = reg_cmd->add_subcommand("structure", "per-structure check");
  ClassInputs reg_in;
  reg_in.add_flags(r_struct, false);
  std::string reg_object = "x", reg_param = "y";
  std::uint32_t reg_k = 2;
  r_struct->add_option("--object-var", reg_object);
  r_struct->add_option("--param-var", reg_param);
  r_struct->add_option("--k", reg_k);

  // semiring
  auto* semi_cmd = app.add_subcommand("semiring", "measuring semiring tools");
  semi_cmd->require_subcommand(1);
  std::string semi_a, semi_b, semi_poly, semi_vars, semi_regime, semi_out;
  unsigned semi_nmax = 4;
  auto* s_axioms = semi_cmd->add_subcommand("axioms", "axiom suite");
  s_axioms->add_option("--nmax", semi_nmax);
  s_axioms->add_option("--out", semi_out);
  auto* s_lt = semi_cmd->add_subcommand("lt", "leading monomial");
  s_lt->add_option("--poly", semi_poly)->required();
  s_lt->add_option("--vars", semi_vars)->required();
  s_lt->add_option("--regime", semi_regime);
  s_lt->add_option("--out", semi_out);
  auto* s_cmp = semi_cmd->add_subcommand("cmp", "compare monomials");
  auto* s_add = semi_cmd->add_subcommand("add", "max-plus addition");
  auto* s_mul = semi_cmd->add_subcommand("mul", "monomial multiplication");
  for (auto* sub : {s_cmp, s_add, s_mul}) {
    sub->add_option("--a", semi_a)->required();
    sub->add_option("--b", semi_b)->required();
    sub->add_option("--regime", semi_regime);
    sub->add_option("--out", semi_out);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (census_cmd->parsed()) return cmd_census(census_in, chain_ratio);
    if (fit_cmd->parsed())
      return cmd_fit(fit_in, fit_mode, fit_vars, fit_basis, fit_train,
                     fit_regime, fit_eps);
    if (verify_cmd->parsed()) return cmd_verify(verify_in, verify_discs);

    if (oracle_cmd->parsed()) {
      if (o_paley->parsed()) {
        auto report = paley_check(paley_q, paley_mmax);
        emit(Json{{"config", Json{{"command", "oracle paley"},
                                  {"q", paley_q},
                                  {"mmax", paley_mmax}}},
                  {"paley", to_json(report)}},
             oracle_out);
        return report.ok() ? kExitOk : kExitRefuted;
      }
      if (o_bilinear->parsed()) {
        FiniteStructure vs = make_vs(bil_q, bil_dim, true);
        Json checks = Json::array();
        bool ok = true;
        std::uint32_t lo = bil_m ? bil_m : 1;
        std::uint32_t hi = bil_m ? bil_m : bil_dim;
        for (std::uint32_t m = lo; m <= hi; ++m) {
          auto report = bilinear_fiber_check(vs, m, bil_budget, bil_samples);
          ok = ok && report.ok();
          checks.push_back(to_json(report));
        }
        emit(Json{{"config", Json{{"command", "oracle bilinear"},
                                  {"q", bil_q},
                                  {"dim", bil_dim}}},
                  {"checks", checks}},
             oracle_out);
        return ok ? kExitOk : kExitRefuted;
      }
      if (o_gl->parsed()) {
        FiniteStructure gl = make_gl(gl_n, gl_q);
        Json rows = Json::array();
        bool ok = true;
        for (std::uint32_t r = 0; r <= gl_n; ++r) {
          Int formula = gl_centralizer_size(gl_n, gl_q, r);
          std::uint64_t brute = gl_centralizer_bruteforce(gl, r);
          bool match = Int(brute) == formula;
          ok = ok && match;
          rows.push_back(Json{{"r", r},
                              {"formula", formula.str()},
                              {"brute", brute},
                              {"match", match}});
        }
        emit(Json{{"config", Json{{"command", "oracle gl"},
                                  {"n", gl_n},
                                  {"q", gl_q}}},
                  {"centralizers", rows}},
             oracle_out);
        return ok ? kExitOk : kExitRefuted;
      }
      if (o_dlog->parsed()) {
        std::vector<std::uint32_t> bases;
        if (dlog_base) {
          bases.push_back(dlog_base);
        } else {
          bases = primitive_roots(dlog_q);
        }
        Json rows = Json::array();
        bool ok = !bases.empty();
        for (std::uint32_t base : bases) {
          auto report = dlog_order(dlog_q, base);
          ok = ok && report.verified;
          rows.push_back(to_json(report));
        }
        emit(Json{{"config",
                   Json{{"command", "oracle dlog"}, {"q", dlog_q}}},
                  {"orders", rows}},
             oracle_out);
        return ok ? kExitOk : kExitRefuted;
      }
      if (o_sdk->parsed()) {
        std::map<std::pair<int, int>, Int> c;
        for (const auto& entry : split_list(sdk_c, ';')) {
          auto colon = entry.find(':');
          if (colon == std::string::npos)
            throw std::invalid_argument("sdk: entries are i,j:coeff");
          auto ij = split_list(entry.substr(0, colon));
          if (ij.size() != 2)
            throw std::invalid_argument("sdk: entries are i,j:coeff");
          c[{std::stoi(ij[0]), std::stoi(ij[1])}] =
              Int(entry.substr(colon + 1));
        }
        Int value = sdk_eval(c, Int(sdk_p), sdk_m, sdk_n);
        emit(Json{{"config", Json{{"command", "oracle sdk"},
                                  {"p", sdk_p},
                                  {"m", sdk_m},
                                  {"n", sdk_n},
                                  {"c", sdk_c}}},
                  {"value", value.str()}},
             oracle_out);
        return kExitOk;
      }
      if (o_vsdemo->parsed()) {
        std::vector<std::uint32_t> qs, dims;
        for (const auto& s : split_list(vsdemo_q))
          qs.push_back(static_cast<std::uint32_t>(std::stoul(s)));
        for (const auto& s : split_list(vsdemo_dims))
          dims.push_back(static_cast<std::uint32_t>(std::stoul(s)));
        auto report = vs_product_count_demo(qs, dims);
        emit(Json{{"config", Json{{"command", "oracle vsdemo"},
                                  {"q", vsdemo_q},
                                  {"dims", vsdemo_dims}}},
                  {"demo", to_json(report)}},
             oracle_out);
        return report.ok() ? kExitOk : kExitRefuted;
      }
    }

    if (reg_cmd->parsed()) {
      if (r_tour->parsed()) {
        auto report = tournament_scan(tour_n);
        emit(Json{{"config",
                   Json{{"command", "regularity tournaments"}, {"n", tour_n}}},
                  {"scan", to_json(report)}},
             reg_out);
        return report.regular_orders_all_odd ? kExitOk : kExitRefuted;
      }
      if (r_struct->parsed()) {
        reg_in.materialize();
        Formula phi = reg_in.parse();
        Json rows = Json::array();
        bool regular = true;
        for (const auto* m : reg_in.cls) {
          auto result = tuple_regularity(*m, phi, reg_object, reg_param, reg_k);
          regular = regular && result.regular;
          Json row{{"structure", m->name()}, {"regular", result.regular}};
          if (!result.regular) {
            row["tuple_a"] = result.tuple_a;
            row["tuple_b"] = result.tuple_b;
            row["count_a"] = result.count_a;
            row["count_b"] = result.count_b;
          }
          rows.push_back(std::move(row));
        }
        Json cfg = reg_in.config("regularity structure");
        cfg["k"] = reg_k;
        emit(Json{{"config", cfg}, {"regularity", rows}}, reg_in.out_path);
        return regular ? kExitOk : kExitRefuted;
      }
    }

    if (semi_cmd->parsed()) {
      std::string sub = s_axioms->parsed()  ? "axioms"
                        : s_lt->parsed()    ? "lt"
                        : s_cmp->parsed()   ? "cmp"
                        : s_add->parsed()   ? "add"
                                            : "mul";
      return cmd_semiring(sub, semi_a, semi_b, semi_poly, semi_vars,
                          semi_regime, semi_nmax, semi_out);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
