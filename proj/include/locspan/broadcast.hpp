#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "locspan/engine.hpp"
#include "locspan/multigraph.hpp"

namespace locspan {

/// One t-local broadcast task: every node must deliver its message to every
/// node within G-distance t, by flooding over the spanner H = (V, S) for
/// alpha * t rounds. alpha must be at least the spanner's actual stretch or
/// completeness may fail.
struct BroadcastInstance {
    std::uint32_t t = 0;
    std::uint32_t alpha = 1;
    std::vector<EdgeId> spanner_edges;       // S
    std::vector<std::string> payloads;       // M_v per node; may be empty (origin-only mode)
};

struct BroadcastResult {
    // received[u] = origins whose message reached u, ascending (dedup by origin)
    std::vector<std::vector<NodeId>> received;
    Counters counters;
    std::uint64_t spanner_size = 0;
    // formula evaluations of the predicted complexity for gamma = k (not
    // measurements): t * n^(1 + 2/(2^(gamma+1)-1)) messages, 3^gamma t + 6^gamma rounds
    double predicted_messages = 0.0;
    double predicted_rounds = 0.0;
};

namespace detail {
inline MultiGraph spanner_subgraph(const MultiGraph& g, const std::vector<EdgeId>& spanner) {
    std::vector<std::tuple<NodeId, NodeId, EdgeId>> triples;
    triples.reserve(spanner.size());
    for (EdgeId id : spanner) {
        const EdgeRecord& e = g.edge(id);
        triples.emplace_back(e.u, e.v, e.id);
    }
    return MultiGraph(g.node_count(), triples);
}
} // namespace detail

/// Floods every node's origin tag over the spanner edges for exactly
/// alpha * t synchronous rounds. A node forwards an origin the round after
/// first receiving it, over all its incident spanner edges, so each spanner
/// edge carries each origin at most once per direction.
inline BroadcastResult t_local_broadcast(const MultiGraph& g, const BroadcastInstance& inst) {
    const MultiGraph h = detail::spanner_subgraph(g, inst.spanner_edges);
    Engine<std::vector<NodeId>> eng(h);
    eng.set_attribution(0);

    const NodeId n = h.node_count();
    std::vector<std::vector<NodeId>> received(n);
    std::vector<std::vector<NodeId>> fresh(n);
    for (NodeId v = 0; v < n; ++v) {
        received[v] = {v};
        fresh[v] = {v};
    }

    const std::uint64_t rounds = static_cast<std::uint64_t>(inst.alpha) * inst.t;
    for (std::uint64_t r = 0; r < rounds; ++r) {
        for (NodeId v = 0; v < n; ++v) {
            if (fresh[v].empty()) continue;
            for (const AdjEntry& a : h.neighbors(v))
                eng.send(v, a.edge, fresh[v], fresh[v].size());
            fresh[v].clear();
        }
        eng.step_round();
        for (NodeId v = 0; v < n; ++v) {
            for (const auto& d : eng.inbox(v)) {
                for (NodeId origin : d.payload) {
                    if (std::binary_search(received[v].begin(), received[v].end(), origin))
                        continue;
                    received[v].insert(
                        std::lower_bound(received[v].begin(), received[v].end(), origin), origin);
                    fresh[v].push_back(origin);
                }
            }
            std::sort(fresh[v].begin(), fresh[v].end());
            fresh[v].erase(std::unique(fresh[v].begin(), fresh[v].end()), fresh[v].end());
        }
    }

    BroadcastResult out;
    out.received = std::move(received);
    out.counters = eng.counters();
    out.spanner_size = inst.spanner_edges.size();
    return out;
}

inline double predicted_broadcast_messages(std::uint64_t n, std::uint32_t gamma, std::uint32_t t) {
    const double ex = 1.0 + 2.0 / (std::pow(2.0, gamma + 1) - 1.0);
    return static_cast<double>(t) * std::pow(static_cast<double>(n), ex);
}
inline double predicted_broadcast_rounds(std::uint32_t gamma, std::uint32_t t) {
    return std::pow(3.0, gamma) * t + std::pow(6.0, gamma);
}

/// Origins every node must have received: the distance-t ball around it in G.
inline std::vector<NodeId> completeness_misses(const MultiGraph& g, std::uint32_t t,
                                               const std::vector<std::vector<NodeId>>& received) {
    std::vector<NodeId> offenders;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto dist = bfs_distances(g, v);
        for (NodeId u = 0; u < g.node_count(); ++u) {
            if (dist[u] > t) continue;
            if (!std::binary_search(received[u].begin(), received[u].end(), v)) {
                offenders.push_back(u);
            }
        }
    }
    std::sort(offenders.begin(), offenders.end());
    offenders.erase(std::unique(offenders.begin(), offenders.end()), offenders.end());
    return offenders;
}

} // namespace locspan
