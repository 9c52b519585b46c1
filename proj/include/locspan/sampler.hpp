#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "locspan/multigraph.hpp"
#include "locspan/params.hpp"
#include "locspan/rng.hpp"

namespace locspan {

// ---------------------------------------------------------------------------
// Cluster trees
// ---------------------------------------------------------------------------

/// Rooted parent-pointer tree over original-graph nodes spanning one cluster.
/// Every tree edge is a spanner edge. Height stays below 3^j at level j.
struct ClusterTree {
    NodeId root = kNoNode;
    std::vector<NodeId> members;      // ascending original nodes
    std::vector<NodeId> parent_node;  // parallel to members; root maps to itself
    std::vector<EdgeId> parent_edge;  // parallel to members; kNoEdge at the root
    std::uint32_t height = 0;

    static ClusterTree singleton(NodeId v) {
        ClusterTree t;
        t.root = v;
        t.members = {v};
        t.parent_node = {v};
        t.parent_edge = {kNoEdge};
        t.height = 0;
        return t;
    }

    std::size_t index_of(NodeId v) const {
        auto it = std::lower_bound(members.begin(), members.end(), v);
        if (it == members.end() || *it != v)
            throw std::logic_error("ClusterTree: node not a member");
        return static_cast<std::size_t>(it - members.begin());
    }

    NodeId parent_of(NodeId v) const { return parent_node[index_of(v)]; }
    EdgeId parent_edge_of(NodeId v) const { return parent_edge[index_of(v)]; }

    void recompute_height() {
        std::vector<std::uint32_t> depth(members.size(), 0);
        // members carry parents; depth of v = depth(parent) + 1, resolved by
        // chasing (trees are shallow; paths are at most the height).
        height = 0;
        for (std::size_t i = 0; i < members.size(); ++i) {
            std::uint32_t d = 0;
            NodeId cur = members[i];
            while (cur != root) {
                cur = parent_of(cur);
                ++d;
                if (d > members.size())
                    throw std::logic_error("ClusterTree: parent cycle");
            }
            depth[i] = d;
            height = std::max(height, d);
        }
    }
};

/// Re-roots a tree at new_root by reversing the parent pointers along the
/// path root -> new_root.
inline ClusterTree reroot_tree(const ClusterTree& t, NodeId new_root) {
    ClusterTree out = t;
    std::vector<std::pair<NodeId, EdgeId>> path; // (node, edge to its parent)
    NodeId cur = new_root;
    while (cur != t.root) {
        path.emplace_back(cur, t.parent_edge_of(cur));
        cur = t.parent_of(cur);
    }
    // walk back down flipping: parent(old parent) := child
    cur = new_root;
    for (auto it = path.begin(); it != path.end(); ++it) {
        const NodeId child = it->first;
        const NodeId old_parent = t.parent_of(child);
        const std::size_t pi = out.index_of(old_parent);
        out.parent_node[pi] = child;
        out.parent_edge[pi] = it->second;
    }
    const std::size_t ri = out.index_of(new_root);
    out.parent_node[ri] = new_root;
    out.parent_edge[ri] = kNoEdge;
    out.root = new_root;
    out.recompute_height();
    return out;
}

struct SatelliteLink {
    const ClusterTree* tree;
    NodeId attach_inner; // satellite-side endpoint of the linking edge
    NodeId attach_outer; // center-side endpoint
    EdgeId link_edge;
};

/// Builds T_{j+1}: the center's tree plus each satellite tree re-rooted at its
/// linking-edge endpoint and hooked below the center-side endpoint.
inline ClusterTree merge_cluster_trees(const ClusterTree& center,
                                       const std::vector<SatelliteLink>& sats) {
    ClusterTree out;
    out.root = center.root;
    out.members = center.members;
    std::vector<ClusterTree> rerooted;
    rerooted.reserve(sats.size());
    for (const SatelliteLink& s : sats) rerooted.push_back(reroot_tree(*s.tree, s.attach_inner));
    for (const ClusterTree& rt : rerooted)
        out.members.insert(out.members.end(), rt.members.begin(), rt.members.end());
    std::sort(out.members.begin(), out.members.end());
    std::vector<NodeId> pn(out.members.size());
    std::vector<EdgeId> pe(out.members.size());
    auto place = [&](const ClusterTree& t) {
        for (std::size_t i = 0; i < t.members.size(); ++i) {
            const std::size_t oi = out.index_of(t.members[i]);
            pn[oi] = t.parent_node[i];
            pe[oi] = t.parent_edge[i];
        }
    };
    place(center);
    for (const ClusterTree& rt : rerooted) place(rt);
    out.parent_node = std::move(pn);
    out.parent_edge = std::move(pe);
    for (const SatelliteLink& s : sats) {
        const std::size_t ai = out.index_of(s.attach_inner);
        out.parent_node[ai] = s.attach_outer;
        out.parent_edge[ai] = s.link_edge;
    }
    out.recompute_height();
    return out;
}

// ---------------------------------------------------------------------------
// Per-level trial state
// ---------------------------------------------------------------------------

enum class NodeClass : std::uint8_t { Pending, Light, Heavy, Failed };

struct TrialNodeState {
    std::vector<EdgeId> unexplored; // X_v, ascending
    std::vector<EdgeId> accepted;   // F_v, acceptance order (one edge per queried neighbor)
    std::vector<NodeId> queried;    // N-hat_j(v), acceptance order
    std::uint32_t trials_run = 0;
    NodeClass cls = NodeClass::Pending;
};

struct LevelState {
    std::uint32_t level = 0;
    const MultiGraph* graph = nullptr; // G_j
    std::vector<TrialNodeState> nodes;

    LevelState(const MultiGraph& g, std::uint32_t lvl) : level(lvl), graph(&g) {
        nodes.resize(g.node_count());
        for (NodeId v = 0; v < g.node_count(); ++v)
            nodes[v].unexplored = g.incident_edges(v);
    }
};

/// Draws one trial's batch from x: distinct sampled edge IDs, ascending. With
/// the full-scan shortcut and samples >= |x| this is all of x.
inline std::vector<EdgeId> draw_trial_batch(const std::vector<EdgeId>& x,
                                            const LevelBudgets& budgets, SplitMix64& rng) {
    if (x.empty()) return {};
    if (budgets.full_scan_shortcut && budgets.samples_per_trial >= x.size()) return x;
    std::vector<std::uint8_t> hit(x.size(), 0);
    for (std::uint64_t s = 0; s < budgets.samples_per_trial; ++s)
        hit[rng.next_below(x.size())] = 1;
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (hit[i]) out.push_back(x[i]);
    return out;
}

/// One trial for node v: sample a batch of query edges from X_v (with
/// replacement), then for each queried neighbor accept the lowest-ID hit edge
/// into F_v and remove every parallel edge to that neighbor from X_v.
inline void run_trial(LevelState& state, NodeId v, const LevelBudgets& budgets, SplitMix64& rng) {
    TrialNodeState& ns = state.nodes[v];
    if (ns.unexplored.empty()) {
        ++ns.trials_run;
        return;
    }
    const std::vector<EdgeId> batch = draw_trial_batch(ns.unexplored, budgets, rng);
    std::map<NodeId, EdgeId> per_neighbor; // neighbor -> lowest hit edge id
    for (EdgeId id : batch) {
        const NodeId nb = state.graph->edge(id).other(v);
        per_neighbor.emplace(nb, id); // batch ascending: first wins = lowest id
    }
    std::vector<EdgeId> removed;
    for (const auto& [nb, chosen] : per_neighbor) {
        ns.accepted.push_back(chosen);
        ns.queried.push_back(nb);
        for (EdgeId id : state.graph->edges_between(v, nb)) removed.push_back(id);
    }
    std::sort(removed.begin(), removed.end());
    std::vector<EdgeId> rest;
    std::set_difference(ns.unexplored.begin(), ns.unexplored.end(), removed.begin(), removed.end(),
                        std::back_inserter(rest));
    ns.unexplored = std::move(rest);
    ++ns.trials_run;
}

/// Light when every neighbor was queried, Heavy when at least
/// neighbor_threshold were, Failed otherwise (the whp-excluded event; the
/// caller records it and continues).
inline NodeClass classify(const LevelState& state, NodeId v, const LevelBudgets& budgets) {
    const TrialNodeState& ns = state.nodes[v];
    if (ns.unexplored.empty()) return NodeClass::Light;
    if (ns.queried.size() >= budgets.neighbor_threshold) return NodeClass::Heavy;
    return NodeClass::Failed;
}

/// Runs v's full trial loop. The guard is evaluated at trial boundaries on
/// the distinct queried-neighbor count (= |F_v| there).
inline void run_trial_loop(LevelState& state, NodeId v, const LevelBudgets& budgets,
                           const Params& p) {
    TrialNodeState& ns = state.nodes[v];
    while (ns.trials_run < budgets.trial_count && ns.queried.size() < budgets.neighbor_threshold &&
           !ns.unexplored.empty()) {
        SplitMix64 rng = derive_stream(p.seed, StreamTag::TrialSamples, state.level, v, ns.trials_run);
        run_trial(state, v, budgets, rng);
    }
    ns.cls = classify(state, v, budgets);
}

// ---------------------------------------------------------------------------
// Second step: center marking and cluster formation
// ---------------------------------------------------------------------------

struct LevelClustering {
    std::vector<std::uint8_t> is_center;
    std::vector<NodeId> chosen_center;      // per node; kNoNode for centers and unclustered
    std::vector<NodeId> center_of_cluster;  // cluster index -> center node, ascending centers
    Partition partition;                    // over V_j; unclustered nodes unassigned
};

/// Marks centers with probability p_j and merges every non-center that
/// queried at least one center into the lowest-indexed such center.
inline LevelClustering second_step(const LevelState& state, const Params& p,
                                   const LevelBudgets& budgets) {
    const NodeId n_j = state.graph->node_count();
    LevelClustering out;
    out.is_center.assign(n_j, 0);
    out.chosen_center.assign(n_j, kNoNode);
    for (NodeId v = 0; v < n_j; ++v) {
        SplitMix64 rng = derive_stream(p.seed, StreamTag::CenterCoin, state.level, v);
        out.is_center[v] = rng.bernoulli(budgets.center_prob) ? 1 : 0;
    }
    for (NodeId v = 0; v < n_j; ++v) {
        if (out.is_center[v]) continue;
        NodeId best = kNoNode;
        for (NodeId u : state.nodes[v].queried)
            if (out.is_center[u] && u < best) best = u;
        out.chosen_center[v] = best;
    }
    std::vector<std::vector<NodeId>> clusters;
    for (NodeId u = 0; u < n_j; ++u) {
        if (!out.is_center[u]) continue;
        out.center_of_cluster.push_back(u);
        clusters.push_back({u});
    }
    for (NodeId v = 0; v < n_j; ++v) {
        const NodeId u = out.chosen_center[v];
        if (u == kNoNode) continue;
        const auto it =
            std::lower_bound(out.center_of_cluster.begin(), out.center_of_cluster.end(), u);
        clusters[static_cast<std::size_t>(it - out.center_of_cluster.begin())].push_back(v);
    }
    out.partition = Partition::from_clusters(n_j, std::move(clusters));
    return out;
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

struct ClassificationFailureRecord {
    std::uint32_t level;
    NodeId virtual_node;
};

struct LevelReport {
    std::uint32_t level = 0;
    std::uint64_t virtual_nodes = 0; // n_j
    std::uint64_t virtual_edges = 0; // m_j
    std::uint64_t samples_per_trial = 0;
    std::uint64_t neighbor_threshold = 0;
    double center_prob = 1.0;
    std::uint64_t f_size = 0;      // |F^(j)|
    std::uint64_t center_count = 0;
    std::uint64_t light_count = 0;
    std::uint64_t heavy_count = 0;
    std::uint64_t failed_count = 0;
    std::uint64_t heavy_clustered = 0; // heavy nodes merged into a center
};

struct FinalCluster {
    std::uint32_t level; // r(v)
    NodeId virtual_node; // v in V_{r(v)}
    std::vector<NodeId> members;
};

struct ClusterAssignment {
    // members[j][v] = C_j(v), trees[j][v] = T_j(v)
    std::vector<std::vector<std::vector<NodeId>>> members;
    std::vector<std::vector<ClusterTree>> trees;
    std::vector<std::vector<std::uint8_t>> is_center;  // levels 0..k-1
    std::vector<std::vector<NodeId>> chosen_center;    // levels 0..k-1
    std::vector<FinalCluster> final_clusters;          // {C(v) : v in V'}, a partition of V
    std::vector<std::uint32_t> final_cluster_of;       // original node -> final cluster index
};

struct SpannerResult {
    std::vector<EdgeId> edges; // S, ascending original edge IDs
    std::vector<std::vector<EdgeId>> per_level_edges; // F^(j), ascending; S is their union
    std::vector<LevelReport> levels;
    std::uint32_t stretch_bound = 0; // 2 * 3^k - 1
    std::vector<ClassificationFailureRecord> failures;
};

struct SamplerOutput {
    SpannerResult result;
    ClusterAssignment assignment;
};

// ---------------------------------------------------------------------------
// The full centralized algorithm
// ---------------------------------------------------------------------------

inline SamplerOutput run_sampler(const MultiGraph& g, const Params& p) {
    p.validate();
    if (p.n != g.node_count())
        throw std::invalid_argument("run_sampler: params.n must equal the graph node count");

    SamplerOutput out;
    ClusterAssignment& asg = out.assignment;
    SpannerResult& res = out.result;
    res.stretch_bound = stretch_bound_for(p.k);

    const NodeId n0 = g.node_count();
    asg.members.resize(p.k + 1);
    asg.trees.resize(p.k + 1);
    asg.is_center.resize(p.k);
    asg.chosen_center.resize(p.k);
    asg.members[0].resize(n0);
    asg.trees[0].reserve(n0);
    for (NodeId v = 0; v < n0; ++v) {
        asg.members[0][v] = {v};
        asg.trees[0].push_back(ClusterTree::singleton(v));
    }

    std::set<EdgeId> spanner;
    MultiGraph level_graph = g; // G_j

    for (std::uint32_t j = 0; j <= p.k; ++j) {
        const LevelBudgets budgets = derive_budgets(p, j);
        LevelState state(level_graph, j);
        LevelReport rep;
        rep.level = j;
        rep.virtual_nodes = level_graph.node_count();
        rep.virtual_edges = level_graph.edge_count();
        rep.samples_per_trial = budgets.samples_per_trial;
        rep.neighbor_threshold = budgets.neighbor_threshold;
        rep.center_prob = budgets.center_prob;

        std::set<EdgeId> f_level;
        for (NodeId v = 0; v < level_graph.node_count(); ++v) {
            run_trial_loop(state, v, budgets, p);
            const TrialNodeState& ns = state.nodes[v];
            switch (ns.cls) {
            case NodeClass::Light: ++rep.light_count; break;
            case NodeClass::Heavy: ++rep.heavy_count; break;
            default:
                ++rep.failed_count;
                res.failures.push_back({j, v});
                break;
            }
            f_level.insert(ns.accepted.begin(), ns.accepted.end());
        }
        rep.f_size = f_level.size();
        res.per_level_edges.emplace_back(f_level.begin(), f_level.end());
        spanner.insert(f_level.begin(), f_level.end());

        if (j < p.k) {
            const LevelClustering clus = second_step(state, p, budgets);
            asg.is_center[j].assign(clus.is_center.begin(), clus.is_center.end());
            asg.chosen_center[j] = clus.chosen_center;
            for (NodeId v = 0; v < level_graph.node_count(); ++v) {
                if (clus.is_center[v]) ++rep.center_count;
                if (state.nodes[v].cls == NodeClass::Heavy &&
                    (clus.is_center[v] || clus.chosen_center[v] != kNoNode))
                    ++rep.heavy_clustered; // centers count: they head their own cluster
            }

            // unclustered nodes finalize here
            for (NodeId v = 0; v < level_graph.node_count(); ++v)
                if (!clus.is_center[v] && clus.chosen_center[v] == kNoNode)
                    asg.final_clusters.push_back({j, v, asg.members[j][v]});

            // next-level members and trees
            const std::size_t next_n = clus.center_of_cluster.size();
            asg.members[j + 1].resize(next_n);
            asg.trees[j + 1].resize(next_n);
            for (std::size_t ci = 0; ci < next_n; ++ci) {
                const NodeId center = clus.center_of_cluster[ci];
                std::vector<NodeId> merged = asg.members[j][center];
                std::vector<SatelliteLink> links;
                for (NodeId v : clus.partition.clusters[ci]) {
                    if (v == center) continue;
                    merged.insert(merged.end(), asg.members[j][v].begin(),
                                  asg.members[j][v].end());
                    // the F_v edge to the chosen center
                    const TrialNodeState& ns = state.nodes[v];
                    EdgeId link = kNoEdge;
                    for (std::size_t qi = 0; qi < ns.queried.size(); ++qi)
                        if (ns.queried[qi] == center) link = ns.accepted[qi];
                    if (link == kNoEdge)
                        throw std::logic_error("run_sampler: satellite without F-edge to center");
                    const EdgeRecord& orig = g.edge(link);
                    const bool a_in_sat = std::binary_search(asg.members[j][v].begin(),
                                                             asg.members[j][v].end(), orig.u);
                    links.push_back({&asg.trees[j][v], a_in_sat ? orig.u : orig.v,
                                     a_in_sat ? orig.v : orig.u, link});
                }
                std::sort(merged.begin(), merged.end());
                asg.members[j + 1][ci] = std::move(merged);
                asg.trees[j + 1][ci] = merge_cluster_trees(asg.trees[j][center], links);
                if (asg.trees[j + 1][ci].height > static_cast<std::uint32_t>(pow3(j + 1) - 1))
                    throw std::logic_error("run_sampler: cluster tree height bound violated");
            }
            level_graph = cluster_graph(level_graph, clus.partition).graph;
        } else {
            // final level: clustering is skipped, every node finalizes
            for (NodeId v = 0; v < level_graph.node_count(); ++v)
                asg.final_clusters.push_back({j, v, asg.members[j][v]});
        }
        res.levels.push_back(std::move(rep));
    }

    res.edges.assign(spanner.begin(), spanner.end());
    asg.final_cluster_of.assign(n0, kUnclustered);
    for (std::size_t ci = 0; ci < asg.final_clusters.size(); ++ci)
        for (NodeId v : asg.final_clusters[ci].members)
            asg.final_cluster_of[v] = static_cast<std::uint32_t>(ci);
    return out;
}

} // namespace locspan
