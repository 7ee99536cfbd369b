#include "manet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace manet {

namespace {

constexpr double kSlack = 1e-9; // m, floating-point slack shared by all trace invariants

double grid_offset(double coord, double block) {
    return std::abs(coord - std::round(coord / block) * block);
}

} // namespace

const char* to_string(MobilityModel m) {
    switch (m) {
    case MobilityModel::RandomWaypoint: return "rwp";
    case MobilityModel::CitySection: return "city";
    case MobilityModel::Manhattan: return "manhattan";
    }
    return "?";
}

std::optional<MobilityModel> parse_mobility_model(const std::string& name) {
    if (name == "rwp" || name == "random_waypoint")
        return MobilityModel::RandomWaypoint;
    if (name == "city" || name == "city_section")
        return MobilityModel::CitySection;
    if (name == "manhattan")
        return MobilityModel::Manhattan;
    return std::nullopt;
}

int Region::blocks_x() const { return static_cast<int>(std::llround(width / block_length)); }
int Region::blocks_y() const { return static_cast<int>(std::llround(height / block_length)); }

int MobilityScenario::snapshot_count() const {
    return static_cast<int>(std::llround(duration / sample_interval));
}

void validate_scenario(const MobilityScenario& scenario, const Region& region) {
    if (!(region.width > 0.0))
        throw ConfigError("region.width must be > 0");
    if (!(region.height > 0.0))
        throw ConfigError("region.height must be > 0");
    if (is_grid_model(scenario.model)) {
        if (!(region.block_length > 0.0))
            throw ConfigError("region.block_length must be > 0 for grid models");
        const double tol = kSlack * std::max(1.0, std::max(region.width, region.height));
        if (grid_offset(region.width, region.block_length) > tol)
            throw ConfigError("region.width must be an integer multiple of block_length");
        if (grid_offset(region.height, region.block_length) > tol)
            throw ConfigError("region.height must be an integer multiple of block_length");
        if (region.blocks_x() < 1 || region.blocks_y() < 1)
            throw ConfigError("region must span at least one block per axis");
    }
    if (scenario.node_count < 2)
        throw ConfigError("scenario.node_count must be >= 2");
    if (scenario.velocity < 0.0 || !std::isfinite(scenario.velocity))
        throw ConfigError("scenario.velocity must be >= 0");
    if (scenario.pause_time < 0.0)
        throw ConfigError("scenario.pause_time must be >= 0");
    if (!(scenario.sample_interval > 0.0))
        throw ConfigError("scenario.sample_interval must be > 0");
    if (!(scenario.duration > 0.0))
        throw ConfigError("scenario.duration must be > 0");
    const int t = scenario.snapshot_count();
    if (t < 1 || std::abs(t * scenario.sample_interval - scenario.duration) >
                     kSlack * std::max(1.0, scenario.duration))
        throw ConfigError("scenario.duration must be a positive integer multiple of sample_interval");
}

Direction turn_left(Direction d) {
    switch (d) {
    case Direction::East: return Direction::North;
    case Direction::North: return Direction::West;
    case Direction::West: return Direction::South;
    case Direction::South: return Direction::East;
    }
    return d;
}

Direction turn_right(Direction d) {
    switch (d) {
    case Direction::East: return Direction::South;
    case Direction::South: return Direction::West;
    case Direction::West: return Direction::North;
    case Direction::North: return Direction::East;
    }
    return d;
}

GridPoint step(GridPoint p, Direction d) {
    switch (d) {
    case Direction::East: return {p.ix + 1, p.iy};
    case Direction::North: return {p.ix, p.iy + 1};
    case Direction::West: return {p.ix - 1, p.iy};
    case Direction::South: return {p.ix, p.iy - 1};
    }
    return p;
}

std::vector<GridPoint> city_street_path(GridPoint from, GridPoint to) {
    std::vector<GridPoint> path{from};
    GridPoint cur = from;
    while (cur.ix != to.ix) {
        cur.ix += (to.ix > cur.ix) ? 1 : -1;
        path.push_back(cur);
    }
    while (cur.iy != to.iy) {
        cur.iy += (to.iy > cur.iy) ? 1 : -1;
        path.push_back(cur);
    }
    return path;
}

namespace {

bool in_bounds_after(GridPoint p, Direction d, int blocks_x, int blocks_y) {
    switch (d) {
    case Direction::East: return p.ix < blocks_x;
    case Direction::North: return p.iy < blocks_y;
    case Direction::West: return p.ix > 0;
    case Direction::South: return p.iy > 0;
    }
    return false;
}

} // namespace

std::vector<Direction> grid_exits(GridPoint p, int blocks_x, int blocks_y) {
    std::vector<Direction> out;
    for (Direction d : {Direction::East, Direction::North, Direction::West, Direction::South})
        if (in_bounds_after(p, d, blocks_x, blocks_y))
            out.push_back(d);
    return out;
}

std::vector<Direction> manhattan_turn_options(Direction heading, GridPoint at, int blocks_x, int blocks_y) {
    std::vector<Direction> out;
    for (Direction d : {heading, turn_left(heading), turn_right(heading)})
        if (in_bounds_after(at, d, blocks_x, blocks_y))
            out.push_back(d);
    return out;
}

Direction manhattan_pick_direction(Direction heading, GridPoint at, int blocks_x, int blocks_y, Rng& rng) {
    const auto options = manhattan_turn_options(heading, at, blocks_x, blocks_y);
    if (options.size() == 1)
        return options[0]; // forced, no draw
    const double u = rng.uniform_unit();
    if (options.size() == 2)
        return u < 0.5 ? options[0] : options[1];
    if (u < 0.5)
        return options[0]; // straight
    return u < 0.75 ? options[1] : options[2];
}

namespace {

/// Streams one node's continuous trajectory into its trace column, emitting
/// the position at every sample time (j+1)*dt it passes over. Each motion or
/// pause phase consumes exactly the sample times inside its half-open time
/// window, so the pending sample is always strictly in the future.
class NodeSampler {
public:
    NodeSampler(MobilityTrace& trace, int node)
        : trace_(trace), node_(node), total_(trace.snapshot_count()),
          dt_(trace.scenario.sample_interval) {}

    bool done() const { return next_ >= total_; }
    double now() const { return t_; }

    void hold(const NodePosition& p, double end_time) {
        while (next_ < total_ && sample_time(next_) <= end_time)
            record(p);
        t_ = std::max(t_, end_time);
    }

    void hold_forever(const NodePosition& p) {
        while (next_ < total_)
            record(p);
    }

    void traverse(const NodePosition& a, const NodePosition& b, double speed) {
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const double t0 = t_;
        const double t1 = t_ + len / speed;
        while (next_ < total_ && sample_time(next_) <= t1) {
            const double alpha = (sample_time(next_) - t0) / (t1 - t0);
            record(interpolate(a, b, alpha));
        }
        t_ = t1;
    }

private:
    double sample_time(int j) const { return (j + 1) * dt_; }

    void record(const NodePosition& p) {
        trace_.snapshots[next_][node_] = p;
        ++next_;
    }

    // Axis-aligned segments keep the street coordinate bit-exact.
    static NodePosition interpolate(const NodePosition& a, const NodePosition& b, double alpha) {
        NodePosition p;
        p.x = (a.x == b.x) ? a.x : a.x * (1.0 - alpha) + b.x * alpha;
        p.y = (a.y == b.y) ? a.y : a.y * (1.0 - alpha) + b.y * alpha;
        return p;
    }

    MobilityTrace& trace_;
    int node_;
    int total_;
    double dt_;
    int next_ = 0;
    double t_ = 0.0;
};

NodePosition at_intersection(GridPoint p, double block) {
    return {p.ix * block, p.iy * block};
}

// Draws per node: initial x, initial y, then per leg: target x, target y.
void simulate_random_waypoint(MobilityTrace& trace, int node, Rng& rng) {
    const MobilityScenario& sc = trace.scenario;
    const Region& rg = trace.region;
    NodeSampler sampler(trace, node);
    NodePosition pos{rng.uniform_real(0.0, rg.width), rng.uniform_real(0.0, rg.height)};
    if (sc.velocity == 0.0) {
        sampler.hold_forever(pos);
        return;
    }
    while (!sampler.done()) {
        const NodePosition target{rng.uniform_real(0.0, rg.width), rng.uniform_real(0.0, rg.height)};
        sampler.traverse(pos, target, sc.velocity);
        pos = target;
        if (sc.pause_time > 0.0)
            sampler.hold(pos, sampler.now() + sc.pause_time);
    }
}

// Draws per node: initial ix, iy, then per trip: target ix, iy (re-drawn as a
// pair while it equals the current intersection).
void simulate_city_section(MobilityTrace& trace, int node, Rng& rng) {
    const MobilityScenario& sc = trace.scenario;
    const Region& rg = trace.region;
    const int bx = rg.blocks_x(), by = rg.blocks_y();
    NodeSampler sampler(trace, node);
    GridPoint cur{static_cast<int>(rng.uniform_int(bx + 1)), static_cast<int>(rng.uniform_int(by + 1))};
    NodePosition pos = at_intersection(cur, rg.block_length);
    if (sc.velocity == 0.0) {
        sampler.hold_forever(pos);
        return;
    }
    while (!sampler.done()) {
        GridPoint target;
        do {
            target = GridPoint{static_cast<int>(rng.uniform_int(bx + 1)),
                               static_cast<int>(rng.uniform_int(by + 1))};
        } while (target == cur);
        // Least-time path at one uniform speed limit: horizontal run first,
        // then vertical (the deterministic fewest-block tie-break).
        const NodePosition corner{target.ix * rg.block_length, pos.y};
        const NodePosition dest = at_intersection(target, rg.block_length);
        if (corner.x != pos.x)
            sampler.traverse(pos, corner, sc.velocity);
        if (dest.y != corner.y)
            sampler.traverse(corner, dest, sc.velocity);
        cur = target;
        pos = dest;
        if (sc.pause_time > 0.0)
            sampler.hold(pos, sampler.now() + sc.pause_time);
    }
}

// Draws per node: initial ix, iy, one draw for the initial street, then one
// draw per intersection with more than one way onward (forced corners and
// dead-ends consume nothing). pause_time does not apply: the model moves
// street by street without dwelling.
void simulate_manhattan(MobilityTrace& trace, int node, Rng& rng) {
    const MobilityScenario& sc = trace.scenario;
    const Region& rg = trace.region;
    const int bx = rg.blocks_x(), by = rg.blocks_y();
    NodeSampler sampler(trace, node);
    GridPoint cur{static_cast<int>(rng.uniform_int(bx + 1)), static_cast<int>(rng.uniform_int(by + 1))};
    NodePosition pos = at_intersection(cur, rg.block_length);
    if (sc.velocity == 0.0) {
        sampler.hold_forever(pos);
        return;
    }
    const auto exits = grid_exits(cur, bx, by);
    Direction heading = exits[rng.uniform_int(exits.size())];
    while (!sampler.done()) {
        const GridPoint next = step(cur, heading);
        const NodePosition next_pos = at_intersection(next, rg.block_length);
        sampler.traverse(pos, next_pos, sc.velocity);
        cur = next;
        pos = next_pos;
        heading = manhattan_pick_direction(heading, cur, bx, by, rng);
    }
}

} // namespace

MobilityTrace generate_trace(const MobilityScenario& scenario, const Region& region) {
    validate_scenario(scenario, region);
    MobilityTrace trace;
    trace.scenario = scenario;
    trace.region = region;
    trace.snapshots.assign(scenario.snapshot_count(),
                           std::vector<NodePosition>(scenario.node_count));
    // One PRNG per trace. Draw order is a stability contract: node 0 consumes
    // its placement and movement draws for the whole horizon, then node 1,
    // and so on (see the per-model notes above).
    Rng rng(scenario.seed);
    for (int v = 0; v < scenario.node_count; ++v) {
        switch (scenario.model) {
        case MobilityModel::RandomWaypoint: simulate_random_waypoint(trace, v, rng); break;
        case MobilityModel::CitySection: simulate_city_section(trace, v, rng); break;
        case MobilityModel::Manhattan: simulate_manhattan(trace, v, rng); break;
        }
    }
    return trace;
}

std::optional<TraceViolation> find_trace_violation(const MobilityTrace& trace) {
    const MobilityScenario& sc = trace.scenario;
    const Region& rg = trace.region;
    const double max_step = sc.velocity * sc.sample_interval + kSlack;
    if (trace.snapshot_count() != sc.snapshot_count())
        return TraceViolation{0, 0, "snapshot count does not match scenario duration"};
    for (int j = 0; j < trace.snapshot_count(); ++j) {
        const auto& snap = trace.snapshots[j];
        if (static_cast<int>(snap.size()) != sc.node_count)
            return TraceViolation{j, 0, "snapshot holds the wrong number of nodes"};
        for (int v = 0; v < sc.node_count; ++v) {
            const NodePosition& p = snap[v];
            if (p.x < -kSlack || p.x > rg.width + kSlack || p.y < -kSlack || p.y > rg.height + kSlack)
                return TraceViolation{j, v, "position outside region bounds"};
            if (is_grid_model(sc.model)) {
                if (grid_offset(p.x, rg.block_length) > kSlack &&
                    grid_offset(p.y, rg.block_length) > kSlack)
                    return TraceViolation{j, v, "position not on a street line"};
            }
            if (j > 0) {
                const NodePosition& q = trace.snapshots[j - 1][v];
                if (std::hypot(p.x - q.x, p.y - q.y) > max_step)
                    return TraceViolation{j, v, "displacement exceeds velocity * sample_interval"};
            }
        }
    }
    return std::nullopt;
}

} // namespace manet
