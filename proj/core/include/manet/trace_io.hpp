#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "manet/mobility.hpp"

namespace manet {

/// Trace CSV, header `snapshot,time_s,node_id,x_m,y_m`, one row per
/// (snapshot, node) in snapshot-major order. snapshot and node_id are
/// 0-based; coordinates carry 10 fractional digits so a round-trip stays
/// inside the 1e-9 m invariant slack.
void write_trace_csv(const MobilityTrace& trace, std::ostream& out);

/// JSON sidecar with the full scenario (including seed) and region.
nlohmann::json scenario_to_json(const MobilityScenario& scenario, const Region& region);
void scenario_from_json(const nlohmann::json& j, MobilityScenario& scenario, Region& region);

/// Reassembles a trace from the CSV body and its sidecar scenario. Throws
/// ConfigError on malformed rows, missing or duplicate (snapshot, node)
/// cells, or a shape mismatch with the scenario.
MobilityTrace read_trace_csv(std::istream& in, const MobilityScenario& scenario, const Region& region);

/// Sidecar path convention: the trace path with its extension replaced by
/// ".json" (appended when there is no extension).
std::string sidecar_path_for(const std::string& trace_path);

} // namespace manet
