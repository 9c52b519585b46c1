#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "locspan/multigraph.hpp"
#include "locspan/rng.hpp"

namespace locspan {

struct GeneratedGraph {
    MultiGraph graph;
    std::string note; // e.g. largest-component reduction record; empty when none
};

namespace gen {

inline GeneratedGraph complete(NodeId n) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return {MultiGraph(n, edges), ""};
}

inline GeneratedGraph cycle(NodeId n) {
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return {MultiGraph(n, edges), ""};
}

inline GeneratedGraph path(NodeId n) {
    if (n < 1) throw std::invalid_argument("path: n must be >= 1");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return {MultiGraph(n, edges), ""};
}

inline GeneratedGraph star(NodeId n) {
    if (n < 1) throw std::invalid_argument("star: n must be >= 1");
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 1; v < n; ++v) edges.emplace_back(0, v);
    return {MultiGraph(n, edges), ""};
}

/// rows x cols lattice with 4-neighbor edges, row-major node layout.
inline GeneratedGraph grid(NodeId rows, NodeId cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid: dimensions must be >= 1");
    std::vector<std::pair<NodeId, NodeId>> edges;
    auto id = [cols](NodeId r, NodeId c) { return r * cols + c; };
    for (NodeId r = 0; r < rows; ++r)
        for (NodeId c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return {MultiGraph(rows * cols, edges), ""};
}

/// Two K_a cliques joined by a path of bridge_len intermediate nodes
/// (bridge_len = 0 gives a single bridge edge).
inline GeneratedGraph barbell(NodeId clique_size, NodeId bridge_len) {
    if (clique_size < 2) throw std::invalid_argument("barbell: clique size must be >= 2");
    const NodeId n = 2 * clique_size + bridge_len;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < clique_size; ++u)
        for (NodeId v = u + 1; v < clique_size; ++v) edges.emplace_back(u, v);
    const NodeId right = clique_size + bridge_len;
    for (NodeId u = right; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    NodeId prev = clique_size - 1;
    for (NodeId b = 0; b < bridge_len; ++b) {
        edges.emplace_back(prev, clique_size + b);
        prev = clique_size + b;
    }
    edges.emplace_back(prev, right);
    return {MultiGraph(n, edges), ""};
}

/// Erdos-Renyi G(n, p) via geometric skipping. When the sample is
/// disconnected only the largest connected component is retained (nodes
/// relabeled densely); the note records the reduction.
inline GeneratedGraph gnp(NodeId n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gnp: n must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("gnp: p must be in [0, 1]");
    std::vector<std::pair<NodeId, NodeId>> edges;
    if (p >= 1.0) {
        return {complete(n).graph, ""};
    } else if (p > 0.0) {
        SplitMix64 rng = derive_stream(seed, StreamTag::GraphGen, n);
        const double logq = std::log1p(-p);
        // walk the upper-triangle pair sequence with geometric skips
        std::uint64_t idx = 0;
        const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        for (;;) {
            const double u = rng.next_unit();
            const std::uint64_t skip =
                static_cast<std::uint64_t>(std::floor(std::log1p(-u) / logq));
            idx += skip;
            if (idx >= total) break;
            // invert pair index -> (a, b), a < b
            std::uint64_t a = 0;
            std::uint64_t rem = idx;
            std::uint64_t row = n - 1;
            while (rem >= row) {
                rem -= row;
                ++a;
                --row;
            }
            const std::uint64_t b = a + 1 + rem;
            edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
            ++idx;
        }
    }
    MultiGraph g(n, edges);

    // connectivity: keep the largest component when needed
    std::vector<std::uint32_t> comp(n, kUnclustered);
    std::uint32_t ncomp = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] != kUnclustered) continue;
        const auto dist = bfs_distances(g, s);
        for (NodeId v = 0; v < n; ++v)
            if (dist[v] != kInfDist) comp[v] = ncomp;
        ++ncomp;
    }
    if (ncomp <= 1) return {std::move(g), ""};

    std::vector<std::uint64_t> size(ncomp, 0);
    for (NodeId v = 0; v < n; ++v) ++size[comp[v]];
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < ncomp; ++c)
        if (size[c] > size[best]) best = c;
    std::vector<NodeId> keep;
    for (NodeId v = 0; v < n; ++v)
        if (comp[v] == best) keep.push_back(v);
    InducedSubgraph sub = induced_subgraph(g, keep);
    // edge IDs reassigned densely for a clean standalone graph
    std::vector<std::pair<NodeId, NodeId>> relabeled;
    for (const EdgeRecord& e : sub.graph.edges()) relabeled.emplace_back(e.u, e.v);
    std::string note = "largest connected component retained: " + std::to_string(keep.size()) +
                       " of " + std::to_string(n) + " nodes";
    return {MultiGraph(static_cast<NodeId>(keep.size()), relabeled), note};
}

} // namespace gen

/// Dispatch by model name; params: p for gnp, rows/cols for grid,
/// clique_size/bridge_len for barbell.
struct GenSpec {
    std::string model;
    NodeId n = 0;
    double p = 0.0;
    NodeId rows = 0, cols = 0;
    NodeId clique_size = 0, bridge_len = 0;
    std::uint64_t seed = 0;
};

inline GeneratedGraph generate_graph(const GenSpec& s) {
    if (s.model == "gnp") return gen::gnp(s.n, s.p, s.seed);
    if (s.model == "complete") return gen::complete(s.n);
    if (s.model == "cycle") return gen::cycle(s.n);
    if (s.model == "path") return gen::path(s.n);
    if (s.model == "star") return gen::star(s.n);
    if (s.model == "grid") {
        NodeId r = s.rows, c = s.cols;
        if (r == 0 && c == 0 && s.n > 0) {
            r = static_cast<NodeId>(std::lround(std::sqrt(static_cast<double>(s.n))));
            if (r == 0 || r * r != s.n)
                throw std::invalid_argument("grid: n is not a perfect square; give --rows/--cols");
            c = r;
        }
        return gen::grid(r, c);
    }
    if (s.model == "barbell") return gen::barbell(s.clique_size, s.bridge_len);
    throw std::invalid_argument("unknown graph model: " + s.model);
}

} // namespace locspan
