#include "manet/routing.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace manet {

const char* to_string(PathEvent e) {
    switch (e) {
    case PathEvent::Discovered: return "discovered";
    case PathEvent::Revalidated: return "revalidated";
    case PathEvent::Broken: return "broken";
    case PathEvent::Unreachable: return "unreachable";
    }
    return "?";
}

std::optional<Path> bfs_min_hop(const StaticGraph& graph, int source, int destination) {
    const int n = graph.node_count();
    if (source < 0 || source >= n || destination < 0 || destination >= n)
        throw std::invalid_argument("bfs endpoint out of range");
    if (source == destination)
        return Path{{source}};
    std::vector<int> parent(n, -1);
    std::deque<int> frontier{source};
    parent[source] = source;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop_front();
        // Adjacency lists are sorted, so expansion is in ascending id order.
        for (int v : graph.neighbors(u)) {
            if (parent[v] != -1)
                continue;
            parent[v] = u;
            if (v == destination) {
                Path path;
                for (int w = destination; w != source; w = parent[w])
                    path.nodes.push_back(w);
                path.nodes.push_back(source);
                std::reverse(path.nodes.begin(), path.nodes.end());
                return path;
            }
            frontier.push_back(v);
        }
    }
    return std::nullopt;
}

bool path_exists(const StaticGraph& graph, const Path& path) {
    if (path.nodes.empty())
        return false;
    const int n = graph.node_count();
    for (int v : path.nodes)
        if (v < 0 || v >= n)
            return false;
    for (std::size_t i = 1; i < path.nodes.size(); ++i)
        if (!graph.has_edge(path.nodes[i - 1], path.nodes[i]))
            return false;
    return true;
}

namespace {

void check_session(const SdSession& session, int total_snapshots) {
    if (session.source < 0 || session.destination < 0)
        throw std::invalid_argument("session endpoints must be non-negative");
    if (session.source == session.destination)
        throw std::invalid_argument("session endpoints must be distinct");
    if (session.start_snapshot < 0 || session.start_snapshot >= total_snapshots)
        throw std::invalid_argument("session start_snapshot out of range");
}

} // namespace

OraPathTracker::OraPathTracker(SdSession session, int total_snapshots) {
    check_session(session, total_snapshots);
    timeline_.strategy = Strategy::Ora;
    timeline_.session = session;
    timeline_.total_snapshots = total_snapshots;
    timeline_.entries.reserve(total_snapshots - session.start_snapshot);
}

void OraPathTracker::observe(const StaticGraph& graph) {
    const int snapshot = next_snapshot_++;
    if (snapshot < timeline_.session.start_snapshot)
        return;
    auto path = bfs_min_hop(graph, timeline_.session.source, timeline_.session.destination);
    timeline_.events.push_back(
        {snapshot, path ? PathEvent::Discovered : PathEvent::Unreachable});
    timeline_.entries.push_back(std::move(path));
}

PathTimeline OraPathTracker::take() { return std::move(timeline_); }

LoraPathTracker::LoraPathTracker(SdSession session, int total_snapshots) {
    check_session(session, total_snapshots);
    timeline_.strategy = Strategy::Lora;
    timeline_.session = session;
    timeline_.total_snapshots = total_snapshots;
    timeline_.entries.reserve(total_snapshots - session.start_snapshot);
}

void LoraPathTracker::observe(const StaticGraph& graph) {
    const int snapshot = next_snapshot_++;
    if (snapshot < timeline_.session.start_snapshot)
        return;
    if (current_ && path_exists(graph, *current_)) {
        timeline_.events.push_back({snapshot, PathEvent::Revalidated});
        timeline_.entries.push_back(current_);
        return;
    }
    if (current_) {
        timeline_.events.push_back({snapshot, PathEvent::Broken});
        current_.reset();
    }
    auto path = bfs_min_hop(graph, timeline_.session.source, timeline_.session.destination);
    timeline_.events.push_back(
        {snapshot, path ? PathEvent::Discovered : PathEvent::Unreachable});
    current_ = path;
    timeline_.entries.push_back(std::move(path));
}

PathTimeline LoraPathTracker::take() { return std::move(timeline_); }

namespace {

PathTimeline run_tracker(const MobileGraph& mg, const SdSession& session, Strategy strategy) {
    if (strategy == Strategy::Ora) {
        OraPathTracker tracker(session, mg.size());
        for (int j = 0; j < mg.size(); ++j)
            tracker.observe(mg.at(j));
        return tracker.take();
    }
    LoraPathTracker tracker(session, mg.size());
    for (int j = 0; j < mg.size(); ++j)
        tracker.observe(mg.at(j));
    return tracker.take();
}

} // namespace

PathTimeline ora_path_timeline(const MobileGraph& mg, const SdSession& session) {
    return run_tracker(mg, session, Strategy::Ora);
}

PathTimeline lora_path_timeline(const MobileGraph& mg, const SdSession& session) {
    return run_tracker(mg, session, Strategy::Lora);
}

nlohmann::json timeline_to_json(const PathTimeline& timeline) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : timeline.events)
        events.push_back({{"snapshot", e.snapshot}, {"event", to_string(e.event)}});
    nlohmann::json entries = nlohmann::json::array();
    for (int k = 0; k < timeline.window_size(); ++k) {
        const auto& entry = timeline.entries[k];
        nlohmann::json row{{"snapshot", timeline.session.start_snapshot + k}};
        row["path"] = entry ? nlohmann::json(entry->nodes) : nlohmann::json();
        entries.push_back(std::move(row));
    }
    return nlohmann::json{
        {"strategy", to_string(timeline.strategy)},
        {"session",
         {{"source", timeline.session.source},
          {"destination", timeline.session.destination},
          {"start_snapshot", timeline.session.start_snapshot}}},
        {"total_snapshots", timeline.total_snapshots},
        {"events", std::move(events)},
        {"entries", std::move(entries)},
    };
}

} // namespace manet
