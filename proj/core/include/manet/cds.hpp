#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "manet/graph.hpp"

namespace manet {

/// Output of the MaxD-CDS construction. cds_nodes keeps insertion order;
/// covered_nodes is sorted ascending and, on success, holds every node.
struct CdsResult {
    std::vector<int> cds_nodes;
    std::vector<int> covered_nodes;
};

/// BFS reachability test from node 0 (connectivity is start-independent).
bool is_connected(const StaticGraph& graph);

/// Greedy maximum-density CDS: seed with the highest-degree node, then
/// repeatedly add the covered non-member with the most uncovered neighbors
/// (at least one) until everything is covered. All ties break toward the
/// lowest node id. Precondition: graph is connected (throws otherwise).
CdsResult max_density_cds(const StaticGraph& graph);

/// True iff cds_nodes induce a connected subgraph of graph and dominate
/// every node outside the set. cds_nodes must be non-empty with valid ids.
bool validate_cds(const StaticGraph& graph, const std::vector<int>& cds_nodes);

enum class CdsEvent { Constructed, Revalidated, Invalidated, Disconnected };
const char* to_string(CdsEvent e);

struct CdsTimelineEvent {
    int snapshot;
    CdsEvent event;
};

/// Per-snapshot CDS node set under one strategy; absent entries mark
/// snapshots whose graph was disconnected (and, under LORA, not yet
/// reconstructible). Covers every snapshot from 0.
struct CdsTimeline {
    Strategy strategy = Strategy::Ora;
    int total_snapshots = 0;
    std::vector<std::optional<std::vector<int>>> entries;
    std::vector<CdsTimelineEvent> events;
};

/// Incremental ORA CDS state: fresh construction per connected snapshot.
class OraCdsTracker {
public:
    explicit OraCdsTracker(int total_snapshots);
    void observe(const StaticGraph& graph);
    CdsTimeline take();

private:
    CdsTimeline timeline_;
    int next_snapshot_ = 0;
};

/// Incremental LORA CDS state: reuse the current set while it validates,
/// otherwise invalidate and reconstruct at the same snapshot if the graph
/// is connected.
class LoraCdsTracker {
public:
    explicit LoraCdsTracker(int total_snapshots);
    void observe(const StaticGraph& graph);
    CdsTimeline take();

private:
    CdsTimeline timeline_;
    std::optional<std::vector<int>> current_;
    int next_snapshot_ = 0;
};

CdsTimeline ora_cds_timeline(const MobileGraph& mg);
CdsTimeline lora_cds_timeline(const MobileGraph& mg);

/// Debug dump: JSON array of {snapshot, event, cds_nodes} records.
nlohmann::json cds_timeline_to_json(const CdsTimeline& timeline);

} // namespace manet
