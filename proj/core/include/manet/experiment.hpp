#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "manet/metrics.hpp"

namespace manet {

/// Seeded experiment grid. Defaults reproduce the reference setup: 1000 m
/// square region, 100 m blocks, 250 m range, 1000 s sampled every 0.25 s,
/// densities {50,100,150}, velocities {2.5,12.5,25}, 5 traces x 20 sessions.
struct ExperimentPlan {
    std::vector<MobilityModel> models = {MobilityModel::RandomWaypoint,
                                         MobilityModel::CitySection,
                                         MobilityModel::Manhattan};
    std::vector<int> densities = {50, 100, 150};
    std::vector<double> velocities = {2.5, 12.5, 25.0};
    int traces_per_cell = 5;
    int sessions_per_trace = 20;
    Region region;
    double range = 250.0;
    double duration = 1000.0;
    double sample_interval = 0.25;
    double pause_time = 0.0;
    std::uint64_t base_seed = 99;
    int threads = 0; // 0 = hardware concurrency

    std::vector<struct CellKey> cells() const; // (model, density, velocity) order
};

/// Throws ConfigError naming the offending field.
void validate_plan(const ExperimentPlan& plan);

/// Plan file round-trip. Every JSON field is optional; absent fields keep
/// their defaults. Unknown fields are rejected.
ExperimentPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const ExperimentPlan& plan);

struct CellKey {
    MobilityModel model;
    int density;
    double velocity;
    bool operator==(const CellKey&) const = default;
};

/// Mean / sample standard deviation / sample count of one metric. count == 0
/// means the metric was undefined for every sample (mean and stddev NaN).
struct MetricStats {
    double mean = 0.0;
    double stddev = 0.0;
    int count = 0;
};
MetricStats make_stats(const std::vector<double>& samples);

struct StrategyPair {
    MetricStats ora;
    MetricStats lora;
    /// (LORA - ORA) / ORA * 100; nullopt when the ORA mean is not positive.
    std::optional<double> percent_increase;
};

struct CellAggregate {
    CellKey key;
    StrategyPair hop_count;        // over sessions x traces with >= 1 path
    StrategyPair connectivity;     // over all sessions x traces
    StrategyPair cds_size;         // over traces with >= 1 connected snapshot
    MetricStats route_lifetime_s;  // LORA sessions with >= 1 discovered path
    MetricStats cds_lifetime_s;    // LORA traces
    MetricStats cds_connected_fraction; // per trace, strategy-independent
    /// Snapshots where a LORA path was strictly shorter than the ORA path at
    /// the same snapshot. Zero by BFS optimality; counted as a self-check.
    long long hop_dominance_violations = 0;
};

nlohmann::json cell_to_json(const CellAggregate& cell);

/// Deterministic per-trace seed: splitmix64 chain over (base_seed, model id,
/// density, velocity bits, trace index), in that order. Stable contract.
std::uint64_t derive_trace_seed(std::uint64_t base_seed, MobilityModel model, int density,
                                double velocity, int trace_index);

/// Session-list seed for one trace, derived from the trace seed.
std::uint64_t derive_session_seed(std::uint64_t trace_seed);

/// `count` sessions with distinct unordered {source, destination} pairs drawn
/// uniformly without replacement, s != d. Start times are uniform over the
/// sample-aligned grid {1.0, 1.25, ..., 20.0} s (clamped to the simulation
/// window), mapped to 0-based snapshots. Deterministic in seed.
std::vector<SdSession> select_sessions(std::uint64_t seed, int node_count, int count,
                                       double sample_interval, double duration);

/// Runs one grid cell: traces_per_cell seeded traces, ORA and LORA path
/// timelines for every session plus one CDS timeline pair per trace, all on
/// identical inputs (paired design), aggregated across traces and sessions.
CellAggregate run_cell(const ExperimentPlan& plan, const CellKey& key);

/// Maps run_cell over the grid, ordered by (model, density, velocity).
/// Cells run concurrently when plan.threads allows; results are merged in
/// grid order so output is byte-stable regardless of scheduling.
std::vector<CellAggregate> run_plan(const ExperimentPlan& plan);

/// Full results document ("plan" + "cells"), the content of results.json.
nlohmann::json results_to_json(const ExperimentPlan& plan, const std::vector<CellAggregate>& cells);

} // namespace manet
