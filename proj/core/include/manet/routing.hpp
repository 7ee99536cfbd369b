#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "manet/graph.hpp"

namespace manet {

/// Simple path from source to first() to destination back(); hop count is
/// edge count.
struct Path {
    std::vector<int> nodes;

    int hop_count() const { return static_cast<int>(nodes.size()) - 1; }
    bool operator==(const Path&) const = default;
};

/// One source-destination session, tracked from start_snapshot (0-based) to
/// the end of the simulation.
struct SdSession {
    int source = 0;
    int destination = 0;
    int start_snapshot = 0;
};

enum class PathEvent { Discovered, Revalidated, Broken, Unreachable };
const char* to_string(PathEvent e);

struct PathTimelineEvent {
    int snapshot;
    PathEvent event;
};

/// Per-snapshot route state of one session under one strategy. entries[k]
/// corresponds to snapshot session.start_snapshot + k; snapshots before the
/// session start carry no entry at all.
struct PathTimeline {
    Strategy strategy = Strategy::Ora;
    SdSession session;
    int total_snapshots = 0;
    std::vector<std::optional<Path>> entries;
    std::vector<PathTimelineEvent> events;

    int window_size() const { return static_cast<int>(entries.size()); }
    const std::optional<Path>& at_snapshot(int snapshot) const {
        return entries[snapshot - session.start_snapshot];
    }
};

/// BFS minimum-hop path, expanding neighbors in ascending node-id order.
/// Returns a path as soon as the destination is reached (even in globally
/// disconnected graphs), nullopt if unreachable, path {s} when s == d.
std::optional<Path> bfs_min_hop(const StaticGraph& graph, int source, int destination);

/// True iff every consecutive pair of path nodes is an edge of graph.
bool path_exists(const StaticGraph& graph, const Path& path);

/// Incremental ORA route state: fresh BFS per observed snapshot.
class OraPathTracker {
public:
    OraPathTracker(SdSession session, int total_snapshots);
    void observe(const StaticGraph& graph);
    PathTimeline take();

private:
    PathTimeline timeline_;
    int next_snapshot_ = 0;
};

/// Incremental LORA route state: reuse the current path while every
/// constituent edge survives, otherwise rediscover at the same snapshot.
class LoraPathTracker {
public:
    LoraPathTracker(SdSession session, int total_snapshots);
    void observe(const StaticGraph& graph);
    PathTimeline take();

private:
    PathTimeline timeline_;
    std::optional<Path> current_;
    int next_snapshot_ = 0;
};

PathTimeline ora_path_timeline(const MobileGraph& mg, const SdSession& session);
PathTimeline lora_path_timeline(const MobileGraph& mg, const SdSession& session);

/// Debug dump: JSON array of {snapshot, event, path} records.
nlohmann::json timeline_to_json(const PathTimeline& timeline);

} // namespace manet
