#include "manet/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace manet {

namespace {

constexpr const char* kHeader = "snapshot,time_s,node_id,x_m,y_m";

double parse_double(std::string_view field, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ConfigError(std::string("trace csv: malformed ") + what + " '" + std::string(field) + "'");
    return value;
}

long parse_long(std::string_view field, const char* what) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ConfigError(std::string("trace csv: malformed ") + what + " '" + std::string(field) + "'");
    return value;
}

void require_key(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw ConfigError(std::string("scenario json: missing key '") + key + "'");
}

} // namespace

void write_trace_csv(const MobilityTrace& trace, std::ostream& out) {
    out << kHeader << '\n';
    char row[160];
    for (int j = 0; j < trace.snapshot_count(); ++j) {
        const double t = trace.time_at(j);
        const auto& snap = trace.snapshots[j];
        for (int v = 0; v < static_cast<int>(snap.size()); ++v) {
            std::snprintf(row, sizeof row, "%d,%.6f,%d,%.10f,%.10f", j, t, v,
                          snap[v].x, snap[v].y);
            out << row << '\n';
        }
    }
}

nlohmann::json scenario_to_json(const MobilityScenario& scenario, const Region& region) {
    return nlohmann::json{
        {"model", to_string(scenario.model)},
        {"node_count", scenario.node_count},
        {"velocity_mps", scenario.velocity},
        {"pause_time_s", scenario.pause_time},
        {"duration_s", scenario.duration},
        {"sample_interval_s", scenario.sample_interval},
        {"seed", scenario.seed},
        {"region",
         {{"width_m", region.width},
          {"height_m", region.height},
          {"block_length_m", region.block_length}}},
    };
}

void scenario_from_json(const nlohmann::json& j, MobilityScenario& scenario, Region& region) {
    if (!j.is_object())
        throw ConfigError("scenario json: document must be an object");
    for (const char* key : {"model", "node_count", "velocity_mps", "pause_time_s", "duration_s",
                            "sample_interval_s", "seed", "region"})
        require_key(j, key);
    for (const auto& item : j.items())
        if (item.key() != "model" && item.key() != "node_count" && item.key() != "velocity_mps" &&
            item.key() != "pause_time_s" && item.key() != "duration_s" &&
            item.key() != "sample_interval_s" && item.key() != "seed" && item.key() != "region")
            throw ConfigError("scenario json: unknown key '" + item.key() + "'");
    const auto model = parse_mobility_model(j.at("model").get<std::string>());
    if (!model)
        throw ConfigError("scenario json: unknown model '" + j.at("model").get<std::string>() + "'");
    scenario.model = *model;
    scenario.node_count = j.at("node_count").get<int>();
    scenario.velocity = j.at("velocity_mps").get<double>();
    scenario.pause_time = j.at("pause_time_s").get<double>();
    scenario.duration = j.at("duration_s").get<double>();
    scenario.sample_interval = j.at("sample_interval_s").get<double>();
    scenario.seed = j.at("seed").get<std::uint64_t>();
    const auto& r = j.at("region");
    if (!r.is_object())
        throw ConfigError("scenario json: 'region' must be an object");
    for (const char* key : {"width_m", "height_m", "block_length_m"})
        if (!r.contains(key))
            throw ConfigError(std::string("scenario json: missing key 'region.") + key + "'");
    for (const auto& item : r.items())
        if (item.key() != "width_m" && item.key() != "height_m" && item.key() != "block_length_m")
            throw ConfigError("scenario json: unknown key 'region." + item.key() + "'");
    region.width = r.at("width_m").get<double>();
    region.height = r.at("height_m").get<double>();
    region.block_length = r.at("block_length_m").get<double>();
}

MobilityTrace read_trace_csv(std::istream& in, const MobilityScenario& scenario, const Region& region) {
    validate_scenario(scenario, region);
    MobilityTrace trace;
    trace.scenario = scenario;
    trace.region = region;
    const int total = scenario.snapshot_count();
    trace.snapshots.assign(total, std::vector<NodePosition>(scenario.node_count));
    std::vector<std::vector<bool>> seen(total, std::vector<bool>(scenario.node_count, false));

    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("trace csv: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kHeader)
        throw ConfigError("trace csv: unexpected header '" + line + "'");

    long rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::string_view rest = line;
        std::string_view field[5];
        for (int f = 0; f < 5; ++f) {
            const auto comma = rest.find(',');
            if (f < 4) {
                if (comma == std::string_view::npos)
                    throw ConfigError("trace csv: row with fewer than 5 fields: '" + line + "'");
                field[f] = rest.substr(0, comma);
                rest.remove_prefix(comma + 1);
            } else {
                if (comma != std::string_view::npos)
                    throw ConfigError("trace csv: row with more than 5 fields: '" + line + "'");
                field[f] = rest;
            }
        }
        const long j = parse_long(field[0], "snapshot");
        const double t = parse_double(field[1], "time_s");
        const long v = parse_long(field[2], "node_id");
        if (j < 0 || j >= total)
            throw ConfigError("trace csv: snapshot index " + std::to_string(j) + " out of range");
        if (v < 0 || v >= scenario.node_count)
            throw ConfigError("trace csv: node id " + std::to_string(v) + " out of range");
        if (std::abs(t - trace.time_at(static_cast<int>(j))) > 1e-6)
            throw ConfigError("trace csv: time_s disagrees with snapshot index in '" + line + "'");
        if (seen[j][v])
            throw ConfigError("trace csv: duplicate cell (snapshot " + std::to_string(j) +
                              ", node " + std::to_string(v) + ")");
        seen[j][v] = true;
        const NodePosition pos{parse_double(field[3], "x_m"), parse_double(field[4], "y_m")};
        // Same slack as the trace invariants, so a written trace re-reads cleanly.
        if (pos.x < -1e-9 || pos.x > region.width + 1e-9 || pos.y < -1e-9 ||
            pos.y > region.height + 1e-9)
            throw ConfigError("trace csv: position outside the region in '" + line + "'");
        trace.snapshots[j][v] = pos;
        ++rows;
    }
    if (rows != static_cast<long>(total) * scenario.node_count)
        throw ConfigError("trace csv: expected " + std::to_string(static_cast<long>(total) * scenario.node_count) +
                          " rows, found " + std::to_string(rows));
    return trace;
}

std::string sidecar_path_for(const std::string& trace_path) {
    std::filesystem::path p(trace_path);
    p.replace_extension(".json");
    return p.string();
}

} // namespace manet
