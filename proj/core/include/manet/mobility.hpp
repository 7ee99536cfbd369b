#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "manet/common.hpp"
#include "manet/rng.hpp"

namespace manet {

enum class MobilityModel { RandomWaypoint, CitySection, Manhattan };

const char* to_string(MobilityModel m);
std::optional<MobilityModel> parse_mobility_model(const std::string& name);

/// True for the two street-grid models (City Section, Manhattan).
inline bool is_grid_model(MobilityModel m) { return m != MobilityModel::RandomWaypoint; }

/// Simulation area. block_length is only meaningful for grid models, where
/// width and height must be integer multiples of it.
struct Region {
    double width = 1000.0;        // m
    double height = 1000.0;       // m
    double block_length = 100.0;  // m, grid models only

    int blocks_x() const;  // width / block_length
    int blocks_y() const;
};

struct MobilityScenario {
    MobilityModel model = MobilityModel::RandomWaypoint;
    int node_count = 50;
    double velocity = 2.5;         // m/s, v_min = v_max
    double pause_time = 0.0;       // s, dwell at each waypoint (ignored by Manhattan)
    double duration = 1000.0;      // s
    double sample_interval = 0.25; // s
    std::uint64_t seed = 0;

    int snapshot_count() const;    // duration / sample_interval
};

struct NodePosition {
    double x = 0.0;
    double y = 0.0;
};

/// Sampled node positions. snapshots[j][v] is node v at time (j+1)*interval;
/// the t=0 placement is not recorded. Snapshot indices are 0-based throughout.
struct MobilityTrace {
    MobilityScenario scenario;
    Region region;
    std::vector<std::vector<NodePosition>> snapshots;

    int snapshot_count() const { return static_cast<int>(snapshots.size()); }
    double time_at(int snapshot) const { return (snapshot + 1) * scenario.sample_interval; }
};

/// Throws ConfigError naming the violated invariant.
void validate_scenario(const MobilityScenario& scenario, const Region& region);

/// Generates the full trace for one scenario. Deterministic: identical
/// (scenario, region) including seed yield bit-identical traces.
MobilityTrace generate_trace(const MobilityScenario& scenario, const Region& region);

/// First violated MobilityTrace invariant (bounds, grid street adherence,
/// per-snapshot speed bound), or nullopt for a clean trace. Floating-point
/// slack is 1e-9 m, matching the trace invariants.
struct TraceViolation {
    int snapshot = 0;
    int node = 0;
    std::string message;
};
std::optional<TraceViolation> find_trace_violation(const MobilityTrace& trace);

// --- Street-grid building blocks, exposed for direct testing ---

/// Intersection (ix, iy) sits at position (ix*block, iy*block).
struct GridPoint {
    int ix = 0;
    int iy = 0;
    bool operator==(const GridPoint&) const = default;
};

enum class Direction { East, North, West, South };

Direction turn_left(Direction d);
Direction turn_right(Direction d);
GridPoint step(GridPoint p, Direction d);

/// Least-travel-time street path under one uniform speed limit: a fewest-block
/// Manhattan path, horizontal movement first (deterministic tie-break).
/// Returns every intersection visited, endpoints included.
std::vector<GridPoint> city_street_path(GridPoint from, GridPoint to);

/// Directions leading to in-bounds intersections from p, in [E, N, W, S] order.
std::vector<Direction> grid_exits(GridPoint p, int blocks_x, int blocks_y);

/// Manhattan-model options at an intersection for a node that arrived heading
/// `heading`: straight, left turn, right turn, in that order, minus any that
/// leave the region. Reversing is never an option; the result is non-empty on
/// any grid with at least one block per axis.
std::vector<Direction> manhattan_turn_options(Direction heading, GridPoint at, int blocks_x, int blocks_y);

/// Picks the next direction per the model's probabilities: 3 options ->
/// 0.5 straight / 0.25 per turn; 2 options -> 0.5 each; 1 option -> forced
/// (no draw consumed).
Direction manhattan_pick_direction(Direction heading, GridPoint at, int blocks_x, int blocks_y, Rng& rng);

} // namespace manet
