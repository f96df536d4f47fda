#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "skyshare/simulator.hpp"

namespace skyshare {

/// Report payload: results only, no wall-clock data, so reruns compare byte for byte.
nlohmann::json report_json(const SimulationReport& report);
nlohmann::json sweep_json(SweepParameter parameter, const std::vector<SweepRow>& rows);

/// Per-stage wall-clock times, kept out of the payload (goes to the manifest).
nlohmann::json timings_json(const SimulationReport& report);

/// One row per topology x scheme.
std::string topologies_csv(const SimulationReport& report);
/// Long format: one row per value x scheme x topology.
std::string sweep_csv(SweepParameter parameter, const std::vector<SweepRow>& rows);

/// Shortest round-trip decimal text of a double.
std::string format_number(double v);

}  // namespace skyshare
