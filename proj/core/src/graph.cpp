#include "manet/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace manet {

bool StaticGraph::has_edge(int u, int v) const {
    const auto& adj = adjacency[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

int StaticGraph::edge_count() const {
    long twice = 0;
    for (const auto& adj : adjacency)
        twice += static_cast<long>(adj.size());
    return static_cast<int>(twice / 2);
}

StaticGraph StaticGraph::from_edge_list(int node_count,
                                        const std::vector<std::pair<int, int>>& edges,
                                        int snapshot_index, double time) {
    StaticGraph g;
    g.snapshot_index = snapshot_index;
    g.time = time;
    g.adjacency.assign(node_count, {});
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= node_count || b < 0 || b >= node_count)
            throw std::invalid_argument("edge endpoint out of range");
        if (a == b)
            throw std::invalid_argument("self-loops are not allowed");
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    for (auto& adj : g.adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return g;
}

StaticGraph build_static_graph(std::span<const NodePosition> positions, double range,
                               int snapshot_index, double time) {
    StaticGraph g;
    g.snapshot_index = snapshot_index;
    g.time = time;
    const int n = static_cast<int>(positions.size());
    g.adjacency.assign(n, {});
    const double range_sq = range * range;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double dx = positions[u].x - positions[v].x;
            const double dy = positions[u].y - positions[v].y;
            if (dx * dx + dy * dy <= range_sq) {
                g.adjacency[u].push_back(v);
                g.adjacency[v].push_back(u);
            }
        }
    }
    // Filled in ascending order already; no sort needed.
    return g;
}

MobileGraph::MobileGraph(MobilityTrace trace, double range)
    : trace_(std::move(trace)), range_(range), lazy_(true) {
    if (!(range_ > 0.0))
        throw std::invalid_argument("transmission range must be > 0");
}

MobileGraph::MobileGraph(std::vector<StaticGraph> graphs)
    : graphs_(std::move(graphs)), lazy_(false) {}

int MobileGraph::size() const {
    return lazy_ ? trace_.snapshot_count() : static_cast<int>(graphs_.size());
}

StaticGraph MobileGraph::at(int snapshot) const {
    if (snapshot < 0 || snapshot >= size())
        throw std::out_of_range("snapshot index out of range");
    if (!lazy_)
        return graphs_[snapshot];
    return build_static_graph(trace_.snapshots[snapshot], range_, snapshot,
                              trace_.time_at(snapshot));
}

void write_edge_list(const StaticGraph& graph, std::ostream& out) {
    for (int u = 0; u < graph.node_count(); ++u)
        for (int v : graph.neighbors(u))
            if (u < v)
                out << u << ' ' << v << '\n';
}

} // namespace manet
