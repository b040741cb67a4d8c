#ifndef MACSCOPE_REPORT_HPP
#define MACSCOPE_REPORT_HPP

#include <string>

#include <json.hpp>

#include "macscope/census.hpp"
#include "macscope/oracles.hpp"
#include "macscope/semiring.hpp"

namespace macscope {

using Json = nlohmann::json;

Json to_json(const CountTable& table);
Json to_json(const CensusResult& census);
Json to_json(const PartitionReport& report);
Json to_json(const ChainReport& report);
Json to_json(const TournamentScanReport& report);
Json to_json(const AxiomReport& report);
Json to_json(const PaleyCheckReport& report);
Json to_json(const FiberCheckReport& report);
Json to_json(const DlogOrderReport& report);
Json to_json(const VsDemoReport& report);

/// Comma-separated per-class summary mirroring the fit report.
std::string fit_report_csv(const PartitionReport& report,
                           const std::vector<CountTable>& tables);

}  // namespace macscope

#endif
