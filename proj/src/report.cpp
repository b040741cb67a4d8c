#include "macscope/report.hpp"

#include <sstream>

namespace macscope {

Json to_json(const CountTable& table) {
  Json counts = Json::object();
  for (const auto& [value, mult] : table.multiplicity)
    counts[std::to_string(value)] = mult;
  Json reps = Json::object();
  for (const auto& [value, rep] : table.representative)
    reps[std::to_string(value)] = rep;
  return Json{{"structure", table.structure_name},
              {"param_space", table.param_space},
              {"counts", counts},
              {"representatives", reps}};
}

Json to_json(const CensusResult& census) {
  Json tables = Json::array();
  for (const auto& t : census.tables) tables.push_back(to_json(t));
  return Json{{"object_vars", census.object_names},
              {"param_vars", census.param_names},
              {"tables", tables}};
}

Json to_json(const PartitionReport& report) {
  Json classes = Json::array();
  for (const auto& cls : report.classes) {
    Json terms = Json::array();
    for (const auto& [e, c] : cls.h.terms()) {
      Json exps = Json::array();
      for (const auto& r : e) exps.push_back(rat_to_string(r));
      terms.push_back(Json{{"exponents", exps}, {"coeff", rat_to_string(c)}});
    }
    Json residuals = Json::array();
    for (const auto& r : cls.residuals) residuals.push_back(rat_to_string(r));
    Json entry{{"name", cls.name},
               {"present", cls.present},
               {"counts", cls.counts},
               {"h", cls.h.to_string()},
               {"terms", terms},
               {"residuals", residuals},
               {"verdict", cls.verdict},
               {"note", cls.note}};
    if (!cls.discriminator.empty()) {
      entry["discriminator"] = cls.discriminator;
      entry["discriminator_status"] = cls.discriminator_status;
    }
    classes.push_back(std::move(entry));
  }
  return Json{{"vars", report.vars},
              {"classes", classes},
              {"alignment_warning", report.alignment_warning}};
}

Json to_json(const ChainReport& report) {
  Json per = Json::array();
  for (const auto& s : report.per_structure) {
    Json witnesses = Json::array();
    for (const auto& w : s.witnesses) witnesses.push_back(w);
    per.push_back(Json{{"structure", s.structure_name},
                       {"length", s.length},
                       {"chain", s.chain},
                       {"witnesses", witnesses}});
  }
  return Json{{"ratio", rat_to_string(report.ratio)},
              {"per_structure", per},
              {"refuted", report.refuted},
              {"note", report.note}};
}

Json to_json(const TournamentScanReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back(Json{{"n", e.n},
                           {"bits", e.bits},
                           {"degree_regular", e.degree_regular},
                           {"three_regular", e.three_regular}});
  Json three = Json::array();
  for (const auto& e : report.three_regular)
    three.push_back(Json{{"n", e.n}, {"bits", e.bits}});
  return Json{{"max_n", report.max_n},
              {"iso_counts", report.iso_counts},
              {"entries", entries},
              {"three_regular", three},
              {"regular_orders_all_odd", report.regular_orders_all_odd}};
}

Json to_json(const AxiomReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back(Json{{"axiom", v.axiom}, {"witnesses", v.witnesses}});
  return Json{{"checked", report.checked}, {"violations", violations}};
}

Json to_json(const PaleyCheckReport& report) {
  return Json{{"q", report.q},
              {"m_max", report.m_max},
              {"instances", report.instances},
              {"violations", report.violations},
              {"min_slack", report.min_slack},
              {"max_slack", report.max_slack}};
}

Json to_json(const FiberCheckReport& report) {
  return Json{{"q", report.q},
              {"dim_v", report.dim_v},
              {"m", report.m},
              {"exhaustive", report.exhaustive},
              {"tuples_checked", report.tuples_checked},
              {"dependent_skipped", report.dependent_skipped},
              {"mismatches", report.mismatches}};
}

Json to_json(const DlogOrderReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.less) {
    std::string bits;
    for (bool b : row) bits.push_back(b ? '1' : '0');
    rows.push_back(bits);
  }
  return Json{{"q", report.q},
              {"base", report.base},
              {"less", rows},
              {"verified", report.verified}};
}

Json to_json(const VsDemoReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back(Json{{"formula", e.formula},
                           {"object_vars", e.object_vars},
                           {"fitted", e.fitted},
                           {"exact", e.exact}});
  return Json{{"structures", report.structures}, {"entries", entries}};
}

std::string fit_report_csv(const PartitionReport& report,
                           const std::vector<CountTable>& tables) {
  std::ostringstream out;
  out << "class,structure,present,count,h,residual,verdict\n";
  for (const auto& cls : report.classes) {
    std::size_t residual_at = 0;
    for (std::size_t s = 0; s < tables.size(); ++s) {
      out << cls.name << "," << tables[s].structure_name << ","
          << (cls.present[s] ? "1" : "0") << ",";
      if (cls.present[s]) out << cls.counts[s];
      out << ",\"" << cls.h.to_string() << "\",";
      if (cls.present[s] && residual_at < cls.residuals.size())
        out << rat_to_string(cls.residuals[residual_at++]);
      out << "," << cls.verdict << "\n";
    }
  }
  return out.str();
}

}  // namespace macscope
