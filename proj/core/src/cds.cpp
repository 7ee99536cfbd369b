#include "manet/cds.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace manet {

const char* to_string(CdsEvent e) {
    switch (e) {
    case CdsEvent::Constructed: return "constructed";
    case CdsEvent::Revalidated: return "revalidated";
    case CdsEvent::Invalidated: return "invalidated";
    case CdsEvent::Disconnected: return "disconnected";
    }
    return "?";
}

bool is_connected(const StaticGraph& graph) {
    const int n = graph.node_count();
    if (n <= 1)
        return true;
    std::vector<char> visited(n, 0);
    std::deque<int> frontier{0};
    visited[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop_front();
        for (int v : graph.neighbors(u)) {
            if (!visited[v]) {
                visited[v] = 1;
                ++reached;
                frontier.push_back(v);
            }
        }
    }
    return reached == n;
}

CdsResult max_density_cds(const StaticGraph& graph) {
    const int n = graph.node_count();
    if (n == 0)
        throw std::invalid_argument("cds of an empty graph is undefined");
    if (!is_connected(graph))
        throw std::invalid_argument("cds construction requires a connected graph");
    if (n == 1)
        return CdsResult{{0}, {0}};

    // uncovered_count[v] = |uncovered neighbors of v|; covering a node
    // decrements the counter of each of its neighbors.
    std::vector<int> uncovered_count(n);
    for (int v = 0; v < n; ++v)
        uncovered_count[v] = graph.degree(v);
    std::vector<char> covered(n, 0);
    std::vector<char> in_cds(n, 0);
    int covered_total = 0;

    const auto cover = [&](int u) {
        if (covered[u])
            return;
        covered[u] = 1;
        ++covered_total;
        for (int w : graph.neighbors(u))
            --uncovered_count[w];
    };

    // Seed: highest degree, lowest id on ties. The first loop iteration then
    // necessarily inserts the seed, the only covered node.
    int seed = 0;
    for (int v = 1; v < n; ++v)
        if (graph.degree(v) > graph.degree(seed))
            seed = v;
    cover(seed);

    CdsResult result;
    while (covered_total < n) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!covered[v] || in_cds[v] || uncovered_count[v] < 1)
                continue;
            if (best == -1 || uncovered_count[v] > uncovered_count[best])
                best = v;
        }
        if (best == -1)
            throw std::logic_error("cds construction stalled on a connected graph");
        in_cds[best] = 1;
        result.cds_nodes.push_back(best);
        for (int u : graph.neighbors(best))
            cover(u);
    }
    result.covered_nodes.reserve(n);
    for (int v = 0; v < n; ++v)
        if (covered[v])
            result.covered_nodes.push_back(v);
    return result;
}

bool validate_cds(const StaticGraph& graph, const std::vector<int>& cds_nodes) {
    const int n = graph.node_count();
    if (cds_nodes.empty())
        throw std::invalid_argument("cds_nodes must be non-empty");
    std::vector<char> in_set(n, 0);
    for (int v : cds_nodes) {
        if (v < 0 || v >= n)
            throw std::invalid_argument("cds node id out of range");
        in_set[v] = 1;
    }
    int set_size = 0;
    for (int v = 0; v < n; ++v)
        set_size += in_set[v];

    // Connectivity of the induced subgraph, from the first member.
    std::vector<char> visited(n, 0);
    std::deque<int> frontier{cds_nodes[0]};
    visited[cds_nodes[0]] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop_front();
        for (int v : graph.neighbors(u)) {
            if (in_set[v] && !visited[v]) {
                visited[v] = 1;
                ++reached;
                frontier.push_back(v);
            }
        }
    }
    if (reached != set_size)
        return false;

    // Domination of every node outside the set.
    for (int v = 0; v < n; ++v) {
        if (in_set[v])
            continue;
        bool dominated = false;
        for (int u : graph.neighbors(v)) {
            if (in_set[u]) {
                dominated = true;
                break;
            }
        }
        if (!dominated)
            return false;
    }
    return true;
}

OraCdsTracker::OraCdsTracker(int total_snapshots) {
    timeline_.strategy = Strategy::Ora;
    timeline_.total_snapshots = total_snapshots;
    timeline_.entries.reserve(total_snapshots);
}

void OraCdsTracker::observe(const StaticGraph& graph) {
    const int snapshot = next_snapshot_++;
    if (is_connected(graph) && graph.node_count() > 0) {
        timeline_.events.push_back({snapshot, CdsEvent::Constructed});
        timeline_.entries.push_back(max_density_cds(graph).cds_nodes);
    } else {
        timeline_.events.push_back({snapshot, CdsEvent::Disconnected});
        timeline_.entries.push_back(std::nullopt);
    }
}

CdsTimeline OraCdsTracker::take() { return std::move(timeline_); }

LoraCdsTracker::LoraCdsTracker(int total_snapshots) {
    timeline_.strategy = Strategy::Lora;
    timeline_.total_snapshots = total_snapshots;
    timeline_.entries.reserve(total_snapshots);
}

void LoraCdsTracker::observe(const StaticGraph& graph) {
    const int snapshot = next_snapshot_++;
    if (current_ && validate_cds(graph, *current_)) {
        timeline_.events.push_back({snapshot, CdsEvent::Revalidated});
        timeline_.entries.push_back(current_);
        return;
    }
    if (current_) {
        timeline_.events.push_back({snapshot, CdsEvent::Invalidated});
        current_.reset();
    }
    if (is_connected(graph) && graph.node_count() > 0) {
        timeline_.events.push_back({snapshot, CdsEvent::Constructed});
        current_ = max_density_cds(graph).cds_nodes;
        timeline_.entries.push_back(current_);
    } else {
        timeline_.events.push_back({snapshot, CdsEvent::Disconnected});
        timeline_.entries.push_back(std::nullopt);
    }
}

CdsTimeline LoraCdsTracker::take() { return std::move(timeline_); }

namespace {

template <typename Tracker>
CdsTimeline run_tracker(const MobileGraph& mg) {
    Tracker tracker(mg.size());
    for (int j = 0; j < mg.size(); ++j)
        tracker.observe(mg.at(j));
    return tracker.take();
}

} // namespace

CdsTimeline ora_cds_timeline(const MobileGraph& mg) { return run_tracker<OraCdsTracker>(mg); }
CdsTimeline lora_cds_timeline(const MobileGraph& mg) { return run_tracker<LoraCdsTracker>(mg); }

nlohmann::json cds_timeline_to_json(const CdsTimeline& timeline) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : timeline.events)
        events.push_back({{"snapshot", e.snapshot}, {"event", to_string(e.event)}});
    nlohmann::json entries = nlohmann::json::array();
    for (int j = 0; j < static_cast<int>(timeline.entries.size()); ++j) {
        nlohmann::json row{{"snapshot", j}};
        row["cds_nodes"] = timeline.entries[j] ? nlohmann::json(*timeline.entries[j]) : nlohmann::json();
        entries.push_back(std::move(row));
    }
    return nlohmann::json{
        {"strategy", to_string(timeline.strategy)},
        {"total_snapshots", timeline.total_snapshots},
        {"events", std::move(events)},
        {"entries", std::move(entries)},
    };
}

} // namespace manet
