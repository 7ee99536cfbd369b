#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "manet/mobility.hpp"

namespace manet {

/// Undirected unit-disk graph at one snapshot. Adjacency lists are sorted
/// ascending and symmetric; node ids are 0-based and dense.
struct StaticGraph {
    int snapshot_index = 0;
    double time = 0.0;
    std::vector<std::vector<int>> adjacency;

    int node_count() const { return static_cast<int>(adjacency.size()); }
    const std::vector<int>& neighbors(int v) const { return adjacency[v]; }
    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
    bool has_edge(int u, int v) const;
    int edge_count() const;

    /// Builds a graph from an explicit edge list (self-loops rejected,
    /// duplicates collapsed). Intended for tests and worked examples.
    static StaticGraph from_edge_list(int node_count,
                                      const std::vector<std::pair<int, int>>& edges,
                                      int snapshot_index = 0, double time = 0.0);
};

/// Edge (a, b) present iff Euclidean distance <= range (inclusive).
StaticGraph build_static_graph(std::span<const NodePosition> positions, double range,
                               int snapshot_index = 0, double time = 0.0);

/// Ordered sequence of unit-disk graphs over a trace. The unit-disk form is
/// lazy: graphs are built on demand so a 4000-snapshot run never materializes
/// the whole sequence. The explicit form wraps a prebuilt vector (tests,
/// worked examples).
class MobileGraph {
public:
    MobileGraph(MobilityTrace trace, double range);
    explicit MobileGraph(std::vector<StaticGraph> graphs);

    int size() const;
    StaticGraph at(int snapshot) const;

    /// Underlying trace; only valid for the lazy unit-disk form.
    const MobilityTrace& trace() const { return trace_; }
    double range() const { return range_; }

private:
    MobilityTrace trace_;
    double range_ = 0.0;
    std::vector<StaticGraph> graphs_;
    bool lazy_ = false;
};

inline MobileGraph build_mobile_graph(MobilityTrace trace, double range) {
    return MobileGraph(std::move(trace), range);
}

/// Debug edge-list dump, one "u v" pair per line. Not a stability contract.
void write_edge_list(const StaticGraph& graph, std::ostream& out);

} // namespace manet
