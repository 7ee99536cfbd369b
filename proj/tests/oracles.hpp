#pragma once

// Independent reference implementations the tests check the library against.
// Everything here is deliberately naive (matrix relaxation, union-find,
// subset enumeration) so agreement with the library is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "manet/graph.hpp"
#include "manet/mobility.hpp"
#include "manet/rng.hpp"

namespace oracle {

constexpr int kUnreachable = -1;

inline std::vector<std::vector<bool>> disk_adjacency(const std::vector<manet::NodePosition>& pos,
                                                     double range) {
    const int n = static_cast<int>(pos.size());
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y) <= range)
                adj[i][j] = true;
    return adj;
}

/// All-pairs shortest hop counts by Floyd-Warshall relaxation.
inline std::vector<std::vector<int>> all_pairs_hops(const manet::StaticGraph& g) {
    const int n = g.node_count();
    const int inf = n + 1;
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, inf));
    for (int v = 0; v < n; ++v) {
        dist[v][v] = 0;
        for (int u : g.neighbors(v))
            dist[v][u] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
    for (auto& row : dist)
        for (int& d : row)
            if (d >= inf)
                d = kUnreachable;
    return dist;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline int component_count(const manet::StaticGraph& g) {
    UnionFind uf(g.node_count());
    for (int v = 0; v < g.node_count(); ++v)
        for (int u : g.neighbors(v))
            uf.unite(v, u);
    int components = 0;
    for (int v = 0; v < g.node_count(); ++v)
        components += uf.find(v) == v;
    return components;
}

/// Brute-force connected-dominating-set check over an explicit member mask.
inline bool is_cds_mask(const manet::StaticGraph& g, std::uint32_t mask) {
    const int n = g.node_count();
    if (mask == 0)
        return false;
    // Domination.
    for (int v = 0; v < n; ++v) {
        if (mask & (1u << v))
            continue;
        bool dominated = false;
        for (int u : g.neighbors(v))
            if (mask & (1u << u)) {
                dominated = true;
                break;
            }
        if (!dominated)
            return false;
    }
    // Induced connectivity, by union-find over members.
    UnionFind uf(n);
    for (int v = 0; v < n; ++v) {
        if (!(mask & (1u << v)))
            continue;
        for (int u : g.neighbors(v))
            if (u > v && (mask & (1u << u)))
                uf.unite(v, u);
    }
    int roots = 0;
    for (int v = 0; v < n; ++v)
        if ((mask & (1u << v)) && uf.find(v) == v)
            ++roots;
    return roots == 1;
}

inline bool is_cds(const manet::StaticGraph& g, const std::vector<int>& nodes) {
    std::uint32_t mask = 0;
    for (int v : nodes)
        mask |= 1u << v;
    return is_cds_mask(g, mask);
}

/// Exact minimum CDS size by subset enumeration; usable up to ~12 nodes.
inline int exact_mcds_size(const manet::StaticGraph& g) {
    const int n = g.node_count();
    int best = n + 1;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (size >= best)
            continue;
        if (is_cds_mask(g, mask))
            best = size;
    }
    return best;
}

/// Shortest street-grid walk between intersections, counted in blocks, by
/// exhaustive breadth-first search over the intersection lattice.
inline int grid_shortest_blocks(manet::GridPoint from, manet::GridPoint to, int blocks_x,
                                int blocks_y) {
    const int w = blocks_x + 1, h = blocks_y + 1;
    const auto id = [&](manet::GridPoint p) { return p.iy * w + p.ix; };
    std::vector<int> dist(static_cast<std::size_t>(w) * h, -1);
    std::vector<manet::GridPoint> frontier{from};
    dist[id(from)] = 0;
    std::size_t head = 0;
    while (head < frontier.size()) {
        const manet::GridPoint p = frontier[head++];
        if (p == to)
            return dist[id(p)];
        const manet::GridPoint around[4] = {
            {p.ix + 1, p.iy}, {p.ix - 1, p.iy}, {p.ix, p.iy + 1}, {p.ix, p.iy - 1}};
        for (const manet::GridPoint q : around) {
            if (q.ix < 0 || q.ix > blocks_x || q.iy < 0 || q.iy > blocks_y)
                continue;
            if (dist[id(q)] == -1) {
                dist[id(q)] = dist[id(p)] + 1;
                frontier.push_back(q);
            }
        }
    }
    return -1;
}

/// Mean maximal-run length (in seconds) over a timeline's entries, by
/// explicit run-length encoding. T is any entry type with ==.
template <typename T>
inline std::optional<double> rle_mean_run_seconds(const std::vector<std::optional<T>>& entries,
                                                  double interval) {
    std::vector<long> runs;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!entries[k])
            continue;
        if (k == 0 || !entries[k - 1] || !(*entries[k - 1] == *entries[k]))
            runs.push_back(1);
        else
            ++runs.back();
    }
    if (runs.empty())
        return std::nullopt;
    double total = 0.0;
    for (long r : runs)
        total += static_cast<double>(r);
    return total / static_cast<double>(runs.size()) * interval;
}

/// Random positions whose unit-disk graph is connected (union-find check).
/// The region side scales with sqrt(n) so rejection stays cheap at any n.
inline std::vector<manet::NodePosition> random_connected_positions(manet::Rng& rng, int n,
                                                                   double range) {
    const double side = std::max(range, 100.0 * std::sqrt(static_cast<double>(n)));
    for (;;) {
        std::vector<manet::NodePosition> pos(n);
        for (auto& p : pos)
            p = {rng.uniform_real(0.0, side), rng.uniform_real(0.0, side)};
        const auto g = manet::build_static_graph(pos, range);
        if (component_count(g) == 1)
            return pos;
    }
}

} // namespace oracle
