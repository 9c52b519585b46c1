#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace locspan {

using NodeId = std::uint32_t;
using EdgeId = std::uint64_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr std::uint32_t kInfDist = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::uint32_t kUnclustered = std::numeric_limits<std::uint32_t>::max();

struct EdgeRecord {
    EdgeId id;
    NodeId u;
    NodeId v;

    NodeId other(NodeId x) const { return x == u ? v : u; }
    bool operator==(const EdgeRecord&) const = default;
};

struct AdjEntry {
    NodeId neighbor;
    EdgeId edge;
};

/// Undirected multigraph with globally unique 64-bit edge IDs. Parallel edges
/// are allowed (and arise from cluster contraction); self-loops are not.
/// Immutable after construction; safe to read from many threads.
class MultiGraph {
public:
    MultiGraph() = default;

    /// Edges with explicit IDs.
    MultiGraph(NodeId n, const std::vector<std::tuple<NodeId, NodeId, EdgeId>>& triples) {
        n_ = n;
        edges_.reserve(triples.size());
        for (const auto& [u, v, id] : triples) edges_.push_back({id, u, v});
        finish_build();
    }

    /// Edges without IDs; IDs are assigned sequentially from 0 in list order.
    MultiGraph(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
        n_ = n;
        edges_.reserve(pairs.size());
        EdgeId next = 0;
        for (const auto& [u, v] : pairs) edges_.push_back({next++, u, v});
        finish_build();
    }

    NodeId node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// All edges, sorted by ID.
    const std::vector<EdgeRecord>& edges() const { return edges_; }

    bool has_edge(EdgeId id) const { return find_edge(id) != nullptr; }

    const EdgeRecord& edge(EdgeId id) const {
        const EdgeRecord* e = find_edge(id);
        if (!e) throw std::out_of_range("MultiGraph: unknown edge id " + std::to_string(id));
        return *e;
    }

    /// Adjacency of v, sorted by (neighbor, edge id); parallel edges repeat
    /// the neighbor. The key set is N(v), the entry count |E(v)|.
    std::span<const AdjEntry> neighbors(NodeId v) const {
        check_node(v);
        return adj_[v];
    }

    /// IDs of the edges with endpoints {u, v}, ascending; empty when not adjacent.
    std::vector<EdgeId> edges_between(NodeId u, NodeId v) const {
        check_node(u);
        check_node(v);
        std::vector<EdgeId> out;
        const auto& a = adj_[u];
        auto it = std::lower_bound(a.begin(), a.end(), v,
                                   [](const AdjEntry& e, NodeId x) { return e.neighbor < x; });
        for (; it != a.end() && it->neighbor == v; ++it) out.push_back(it->edge);
        return out;
    }

    std::size_t incident_count(NodeId v) const { return neighbors(v).size(); }

    std::vector<EdgeId> incident_edges(NodeId v) const {
        std::vector<EdgeId> out;
        for (const AdjEntry& e : neighbors(v)) out.push_back(e.edge);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t distinct_neighbor_count(NodeId v) const {
        std::size_t cnt = 0;
        NodeId last = kNoNode;
        for (const AdjEntry& e : neighbors(v)) {
            if (e.neighbor != last) ++cnt;
            last = e.neighbor;
        }
        return cnt;
    }

private:
    NodeId n_ = 0;
    std::vector<EdgeRecord> edges_;          // sorted by id
    std::vector<std::vector<AdjEntry>> adj_; // per node, sorted by (neighbor, edge)

    void check_node(NodeId v) const {
        if (v >= n_) throw std::out_of_range("MultiGraph: node " + std::to_string(v) + " out of range");
    }

    const EdgeRecord* find_edge(EdgeId id) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                                   [](const EdgeRecord& e, EdgeId x) { return e.id < x; });
        if (it == edges_.end() || it->id != id) return nullptr;
        return &*it;
    }

    void finish_build() {
        for (const EdgeRecord& e : edges_) {
            if (e.u >= n_ || e.v >= n_)
                throw std::invalid_argument("MultiGraph: edge endpoint out of range");
            if (e.u == e.v)
                throw std::invalid_argument("MultiGraph: self-loop at node " + std::to_string(e.u));
        }
        std::sort(edges_.begin(), edges_.end(),
                  [](const EdgeRecord& a, const EdgeRecord& b) { return a.id < b.id; });
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].id == edges_[i - 1].id)
                throw std::invalid_argument("MultiGraph: duplicate edge id " +
                                            std::to_string(edges_[i].id));
        adj_.assign(n_, {});
        for (const EdgeRecord& e : edges_) {
            adj_[e.u].push_back({e.v, e.id});
            adj_[e.v].push_back({e.u, e.id});
        }
        for (auto& a : adj_)
            std::sort(a.begin(), a.end(), [](const AdjEntry& x, const AdjEntry& y) {
                return std::tie(x.neighbor, x.edge) < std::tie(y.neighbor, y.edge);
            });
    }
};

/// build_graph helpers mirroring the two constructor forms.
inline MultiGraph build_graph(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
    return MultiGraph(n, pairs);
}
inline MultiGraph build_graph(NodeId n, const std::vector<std::tuple<NodeId, NodeId, EdgeId>>& triples) {
    return MultiGraph(n, triples);
}

/// Exact unweighted hop distances from source; kInfDist marks unreachable
/// nodes. Parallel edges do not change distances.
inline std::vector<std::uint32_t> bfs_distances(const MultiGraph& g, NodeId source) {
    if (source >= g.node_count()) throw std::out_of_range("bfs_distances: source out of range");
    std::vector<std::uint32_t> dist(g.node_count(), kInfDist);
    std::queue<NodeId> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (const AdjEntry& e : g.neighbors(v)) {
            if (dist[e.neighbor] != kInfDist) continue;
            dist[e.neighbor] = dist[v] + 1;
            q.push(e.neighbor);
        }
    }
    return dist;
}

/// Max hop distance over all node pairs; kInfDist when disconnected, 0 for a
/// single node. Throws on the empty graph.
inline std::uint32_t diameter(const MultiGraph& g) {
    if (g.node_count() == 0) throw std::invalid_argument("diameter: empty graph");
    std::uint32_t best = 0;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        const auto d = bfs_distances(g, s);
        for (std::uint32_t x : d) {
            if (x == kInfDist) return kInfDist;
            best = std::max(best, x);
        }
    }
    return best;
}

/// Disjoint non-empty node subsets plus per-node assignment. The union of the
/// clusters need not cover the node set; uncovered nodes map to kUnclustered.
struct Partition {
    std::vector<std::vector<NodeId>> clusters;
    std::vector<std::uint32_t> assignment; // node -> cluster index or kUnclustered

    static Partition from_clusters(NodeId n, std::vector<std::vector<NodeId>> clusters) {
        Partition p;
        p.assignment.assign(n, kUnclustered);
        for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
            if (clusters[ci].empty()) throw std::invalid_argument("Partition: empty cluster");
            for (NodeId v : clusters[ci]) {
                if (v >= n) throw std::invalid_argument("Partition: node out of range");
                if (p.assignment[v] != kUnclustered)
                    throw std::invalid_argument("Partition: node " + std::to_string(v) +
                                                " in two clusters");
                p.assignment[v] = static_cast<std::uint32_t>(ci);
            }
            std::sort(clusters[ci].begin(), clusters[ci].end());
        }
        p.clusters = std::move(clusters);
        return p;
    }

    static Partition singletons(NodeId n) {
        std::vector<std::vector<NodeId>> cs(n);
        for (NodeId v = 0; v < n; ++v) cs[v] = {v};
        return from_clusters(n, std::move(cs));
    }
};

struct ClusterGraphResult {
    MultiGraph graph;                    // nodes = clusters, edges keep their original IDs
    std::vector<EdgeId> surviving_edges; // ascending; the edge-id map is the identity on these
};

/// Contracts each cluster to a node. Output edges are exactly the input edges
/// crossing two distinct clusters, with unchanged IDs; intra-cluster edges and
/// edges touching unclustered nodes are dropped.
inline ClusterGraphResult cluster_graph(const MultiGraph& g, const Partition& p) {
    if (p.assignment.size() != g.node_count())
        throw std::invalid_argument("cluster_graph: partition size mismatch");
    std::vector<std::tuple<NodeId, NodeId, EdgeId>> out;
    std::vector<EdgeId> survivors;
    for (const EdgeRecord& e : g.edges()) {
        const std::uint32_t cu = p.assignment[e.u];
        const std::uint32_t cv = p.assignment[e.v];
        if (cu == kUnclustered || cv == kUnclustered || cu == cv) continue;
        out.emplace_back(static_cast<NodeId>(cu), static_cast<NodeId>(cv), e.id);
        survivors.push_back(e.id);
    }
    std::sort(survivors.begin(), survivors.end());
    return {MultiGraph(static_cast<NodeId>(p.clusters.size()), out), std::move(survivors)};
}

struct InducedSubgraph {
    MultiGraph graph;
    std::vector<NodeId> to_original; // new index -> original node
};

/// Subgraph induced by the given node set; original edge IDs preserved.
inline InducedSubgraph induced_subgraph(const MultiGraph& g, std::span<const NodeId> nodes) {
    if (nodes.empty()) throw std::invalid_argument("induced_subgraph: empty node set");
    std::vector<NodeId> order(nodes.begin(), nodes.end());
    std::sort(order.begin(), order.end());
    if (std::adjacent_find(order.begin(), order.end()) != order.end())
        throw std::invalid_argument("induced_subgraph: duplicate node");
    std::vector<NodeId> relabel(g.node_count(), kNoNode);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= g.node_count())
            throw std::invalid_argument("induced_subgraph: node out of range");
        relabel[order[i]] = static_cast<NodeId>(i);
    }
    std::vector<std::tuple<NodeId, NodeId, EdgeId>> out;
    for (const EdgeRecord& e : g.edges())
        if (relabel[e.u] != kNoNode && relabel[e.v] != kNoNode)
            out.emplace_back(relabel[e.u], relabel[e.v], e.id);
    return {MultiGraph(static_cast<NodeId>(order.size()), out), std::move(order)};
}

} // namespace locspan
