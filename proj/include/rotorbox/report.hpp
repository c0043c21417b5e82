#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "rotorbox/flux.hpp"
#include "rotorbox/momentum.hpp"
#include "rotorbox/shift.hpp"

namespace rotorbox {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

// Machine-readable result envelope. Every numeric in `results` carries a
// unit tag; `timings` is the only subtree allowed to differ between
// identical runs.
struct ReportEnvelope {
  std::string command;
  Json config;
  Json results;
  std::map<std::string, double> timings;  // seconds per phase

  Json to_json() const;
  std::string to_csv() const;  // flat table: section,key,value,unit (no timings)
};

Json quantity(double value, const std::string& unit);
Json config_json(const ExperimentConfig& cfg);

Json shift_results(const ShiftReport& rep);
Json flux_results(const FluxProfile& profile);
Json momentum_results(const MomentumReport& rep);
Json sweep_results(const std::vector<SweepRow>& rows);

Json tolerances_json();

}  // namespace rotorbox
