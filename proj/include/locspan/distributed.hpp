#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "locspan/engine.hpp"
#include "locspan/multigraph.hpp"
#include "locspan/params.hpp"
#include "locspan/rng.hpp"
#include "locspan/sampler.hpp"

namespace locspan {

struct DistributedOutput {
    SpannerResult result;
    ClusterAssignment assignment;
    Counters counters;
};

namespace dist {

using ExposedSet = std::vector<EdgeId>; // sorted candidate edge IDs of one cluster
using ExposedPtr = std::shared_ptr<const ExposedSet>;

struct ProbeBody {
    EdgeId probe_edge;
    NodeId src_virtual;
    bool center_query;
};
struct ProbeReplyBody {
    EdgeId probe_edge;
    bool peer_finalized;
    NodeId peer_virtual;
    bool peer_center;
    ExposedPtr peer_exposed;
};
struct CenterStatusBody {
    bool is_center;
};
using EdgeCountLedger = std::vector<std::pair<EdgeId, std::uint8_t>>; // sorted by edge

struct JoinLedger {
    NodeId satellite_virtual;
    EdgeId link_edge;
    std::vector<NodeId> members;
    EdgeCountLedger edge_count;
    std::vector<EdgeId> dead_edges;
    ClusterTree tree;
};
struct JoinBody {
    std::shared_ptr<JoinLedger> ledger;
};
struct MemberUpdateBody {
    bool finalized;
    NodeId new_virtual;
    NodeId new_parent;
    EdgeId new_parent_edge;
    ExposedPtr exposed;
};

using ItemBody = std::variant<ProbeBody, ProbeReplyBody, CenterStatusBody, JoinBody, MemberUpdateBody>;

struct RoutedItem {
    NodeId target; // addressed member (down), or kNoNode = "to the cluster root" (up)
    ItemBody body;
};
using Bundle = std::vector<RoutedItem>;

} // namespace dist

/// Distributed form of the sampler, simulated round by round on the engine.
/// Virtual node v in G_j is hosted at the root of T_j(v); a message over a
/// virtual edge travels down the sender's tree, one hop over the edge, then
/// up the peer's tree, with tree traffic bundled per (tree edge, round). All
/// clusters advance through trial i of level j in lock-step; finished
/// clusters idle (rounds tick, no messages).
class DistributedSampler {
public:
    using EngineT = Engine<dist::Bundle>;

    DistributedSampler(const MultiGraph& g, const Params& p)
        : g_(&g), p_(p), eng_(g), member_(g.node_count()), moving_(g.node_count()),
          arrived_(g.node_count()) {
        p_.validate();
        if (p_.n != g.node_count())
            throw std::invalid_argument("DistributedSampler: params.n must equal node count");
    }

    DistributedOutput run() {
        init_level_zero();
        res_.stretch_bound = stretch_bound_for(p_.k);
        asg_.members.resize(p_.k + 1);
        asg_.trees.resize(p_.k + 1);
        asg_.is_center.resize(p_.k);
        asg_.chosen_center.resize(p_.k);
        for (std::uint32_t j = 0; j <= p_.k; ++j) run_level(j);

        std::set<EdgeId> s;
        for (const auto& f : f_by_level_) s.insert(f.begin(), f.end());
        res_.edges.assign(s.begin(), s.end());
        res_.per_level_edges = std::move(f_by_level_);
        asg_.final_cluster_of.assign(g_->node_count(), kUnclustered);
        for (std::size_t ci = 0; ci < asg_.final_clusters.size(); ++ci)
            for (NodeId v : asg_.final_clusters[ci].members)
                asg_.final_cluster_of[v] = static_cast<std::uint32_t>(ci);
        return {std::move(res_), std::move(asg_), eng_.counters()};
    }

private:
    struct MemberState {
        bool finalized = false;
        NodeId cluster = kNoNode; // current virtual index while alive
        bool cluster_center = false;
        dist::ExposedPtr exposed;     // current cluster's candidate set (for probe replies)
        NodeId parent = kNoNode;      // tree routing, current level
        EdgeId parent_edge = kNoEdge;
    };

    struct Cluster {
        NodeId virtual_index = kNoNode;
        NodeId host = kNoNode;
        std::vector<NodeId> members;
        ClusterTree tree;
        dist::EdgeCountLedger edge_count; // members' incident original edges, count 1 or 2
        std::vector<EdgeId> dead_edges;   // discovered dead, sorted
        dist::ExposedPtr exposed;
        TrialNodeState trial;
        bool is_center = false;
        NodeId chosen_center = kNoNode;
        EdgeId link_edge = kNoEdge; // F-edge to the chosen center
    };

    const MultiGraph* g_;
    Params p_;
    EngineT eng_;
    std::vector<MemberState> member_;
    std::vector<dist::Bundle> moving_;  // in transit at each node
    std::vector<dist::Bundle> arrived_; // delivered to their addressed member
    std::vector<Cluster> clusters_;
    MultiGraph level_graph_; // bookkeeping mirror of G_j (sizes, sanity checks)
    ClusterAssignment asg_;
    SpannerResult res_;
    std::vector<std::vector<EdgeId>> f_by_level_;

    // ---- routing -----------------------------------------------------------

    std::pair<NodeId, EdgeId> next_hop_toward(NodeId from, NodeId target) const {
        NodeId cur = target, prev = kNoNode;
        EdgeId prev_edge = kNoEdge;
        while (cur != from) {
            prev = cur;
            prev_edge = member_[cur].parent_edge;
            const NodeId up = member_[cur].parent;
            if (up == cur) throw std::logic_error("next_hop_toward: target not in subtree");
            cur = up;
        }
        return {prev, prev_edge};
    }

    /// Sends every moving item one hop toward its target, delivering items
    /// already at their target into arrived_. Returns the number of sends.
    std::size_t forward_down() {
        std::size_t sends = 0;
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            if (moving_[v].empty()) continue;
            std::map<std::pair<NodeId, EdgeId>, dist::Bundle> by_hop;
            for (dist::RoutedItem& item : moving_[v]) {
                if (item.target == v)
                    arrived_[v].push_back(std::move(item));
                else
                    by_hop[next_hop_toward(v, item.target)].push_back(std::move(item));
            }
            moving_[v].clear();
            for (auto& [hop, bundle] : by_hop) {
                const std::size_t items = bundle.size();
                eng_.send(v, hop.second, std::move(bundle), items);
                ++sends;
            }
        }
        return sends;
    }

    /// Sends every moving item one hop up its tree, delivering items already
    /// at their cluster root into arrived_.
    std::size_t forward_up() {
        std::size_t sends = 0;
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            if (moving_[v].empty()) continue;
            if (member_[v].parent == v) {
                for (dist::RoutedItem& item : moving_[v]) arrived_[v].push_back(std::move(item));
                moving_[v].clear();
                continue;
            }
            const std::size_t items = moving_[v].size();
            eng_.send(v, member_[v].parent_edge, std::move(moving_[v]), items);
            moving_[v].clear();
            ++sends;
        }
        return sends;
    }

    void collect_inboxes() {
        for (NodeId v = 0; v < g_->node_count(); ++v)
            for (const auto& d : eng_.inbox(v))
                for (const dist::RoutedItem& item : d.payload) moving_[v].push_back(item);
    }

    void route_down(std::uint32_t rounds) {
        std::size_t sends = forward_down();
        for (std::uint32_t r = 0; r < rounds; ++r) {
            eng_.step_round();
            collect_inboxes();
            sends = forward_down();
        }
        if (sends != 0) throw std::logic_error("route_down: items undelivered within budget");
    }

    void route_up(std::uint32_t rounds) {
        std::size_t sends = forward_up();
        for (std::uint32_t r = 0; r < rounds; ++r) {
            eng_.step_round();
            collect_inboxes();
            sends = forward_up();
        }
        if (sends != 0) throw std::logic_error("route_up: items undelivered within budget");
    }

    // ---- setup -------------------------------------------------------------

    void init_level_zero() {
        const NodeId n = g_->node_count();
        clusters_.resize(n);
        asg_.members.clear();
        level_graph_ = *g_;
        for (NodeId v = 0; v < n; ++v) {
            Cluster& c = clusters_[v];
            c.virtual_index = v;
            c.host = v;
            c.members = {v};
            c.tree = ClusterTree::singleton(v);
            for (EdgeId e : g_->incident_edges(v)) c.edge_count.emplace_back(e, 1);
            c.exposed = compute_exposed(c);
            member_[v].cluster = v;
            member_[v].exposed = c.exposed;
            member_[v].parent = v;
            member_[v].parent_edge = kNoEdge;
        }
    }

    static dist::ExposedPtr compute_exposed(const Cluster& c) {
        auto out = std::make_shared<dist::ExposedSet>();
        for (const auto& [e, cnt] : c.edge_count)
            if (cnt == 1 && !std::binary_search(c.dead_edges.begin(), c.dead_edges.end(), e))
                out->push_back(e);
        return out;
    }

    /// Adds rhs into lhs, merging by edge id and capping counts at 2.
    static void merge_edge_counts(dist::EdgeCountLedger& lhs, const dist::EdgeCountLedger& rhs) {
        dist::EdgeCountLedger merged;
        merged.reserve(lhs.size() + rhs.size());
        auto a = lhs.begin();
        auto b = rhs.begin();
        while (a != lhs.end() || b != rhs.end()) {
            if (b == rhs.end() || (a != lhs.end() && a->first < b->first))
                merged.push_back(*a++);
            else if (a == lhs.end() || b->first < a->first)
                merged.push_back(*b++);
            else {
                merged.emplace_back(a->first,
                                    static_cast<std::uint8_t>(std::min(2, a->second + b->second)));
                ++a;
                ++b;
            }
        }
        lhs = std::move(merged);
    }

    std::uint32_t max_tree_height() const {
        std::uint32_t d = 0;
        for (const Cluster& c : clusters_) d = std::max(d, c.tree.height);
        return d;
    }

    NodeId member_side_endpoint(const Cluster& c, EdgeId e) const {
        const EdgeRecord& rec = g_->edge(e);
        if (!member_[rec.u].finalized && member_[rec.u].cluster == c.virtual_index) return rec.u;
        if (!member_[rec.v].finalized && member_[rec.v].cluster == c.virtual_index) return rec.v;
        throw std::logic_error("member_side_endpoint: edge does not touch cluster");
    }

    // ---- one level ---------------------------------------------------------

    void run_level(std::uint32_t j) {
        eng_.set_attribution(j);
        const LevelBudgets budgets = derive_budgets(p_, j);
        const std::uint32_t depth = max_tree_height();
        if (depth > (pow3(j) - 1) / 2)
            throw std::logic_error("run_level: tree height bound violated");

        LevelReport rep;
        rep.level = j;
        rep.virtual_nodes = clusters_.size();
        rep.virtual_edges = level_graph_.edge_count();
        rep.samples_per_trial = budgets.samples_per_trial;
        rep.neighbor_threshold = budgets.neighbor_threshold;
        rep.center_prob = budgets.center_prob;

        asg_.members[j].resize(clusters_.size());
        asg_.trees[j].resize(clusters_.size());
        for (const Cluster& c : clusters_) {
            asg_.members[j][c.virtual_index] = c.members;
            asg_.trees[j][c.virtual_index] = c.tree;
            sanity_check_candidates(c);
        }

        for (Cluster& c : clusters_) {
            c.trial = TrialNodeState{};
            c.trial.unexplored = *c.exposed;
        }

        for (std::uint32_t trial = 0; trial < budgets.trial_count; ++trial)
            run_trial_phase(j, trial, budgets, depth);

        std::set<EdgeId> f_level;
        for (Cluster& c : clusters_) {
            TrialNodeState& t = c.trial;
            t.cls = t.unexplored.empty() ? NodeClass::Light
                    : t.queried.size() >= budgets.neighbor_threshold ? NodeClass::Heavy
                                                                     : NodeClass::Failed;
            switch (t.cls) {
            case NodeClass::Light: ++rep.light_count; break;
            case NodeClass::Heavy: ++rep.heavy_count; break;
            default:
                ++rep.failed_count;
                res_.failures.push_back({j, c.virtual_index});
                break;
            }
            f_level.insert(t.accepted.begin(), t.accepted.end());
        }
        rep.f_size = f_level.size();
        f_by_level_.emplace_back(f_level.begin(), f_level.end());

        if (j < p_.k)
            second_step_phase(j, budgets, depth, rep);
        else
            finalize_all(j, depth);
        res_.levels.push_back(std::move(rep));
    }

    void sanity_check_candidates(const Cluster& c) const {
        // candidate set must contain every live virtual edge of the cluster
        for (EdgeId e : level_graph_.incident_edges(c.virtual_index))
            if (!std::binary_search(c.exposed->begin(), c.exposed->end(), e))
                throw std::logic_error("distributed: live edge missing from candidate set");
    }

    bool trial_guard(const Cluster& c, std::uint32_t trial, const LevelBudgets& b) const {
        return c.trial.trials_run == trial && c.trial.queried.size() < b.neighbor_threshold &&
               !c.trial.unexplored.empty();
    }

    void run_trial_phase(std::uint32_t j, std::uint32_t trial, const LevelBudgets& budgets,
                         std::uint32_t depth) {
        // phase A: sample at hosts, route probe requests down to the edge endpoints
        for (Cluster& c : clusters_) {
            if (!trial_guard(c, trial, budgets)) continue;
            SplitMix64 rng =
                derive_stream(p_.seed, StreamTag::TrialSamples, j, c.virtual_index, trial);
            const std::vector<EdgeId> batch = draw_trial_batch(c.trial.unexplored, budgets, rng);
            for (EdgeId e : batch)
                moving_[c.host].push_back({member_side_endpoint(c, e),
                                           dist::ProbeBody{e, c.virtual_index, false}});
            ++c.trial.trials_run;
        }
        route_down(depth);

        // phase B: one hop over each probed edge
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            for (dist::RoutedItem& item : arrived_[v]) {
                const auto& pb = std::get<dist::ProbeBody>(item.body);
                eng_.send(v, pb.probe_edge, dist::Bundle{{kNoNode, pb}}, 1);
            }
            arrived_[v].clear();
        }
        eng_.step_round();

        // phase C: endpoints reply from local cluster knowledge
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            for (const auto& d : eng_.inbox(v)) {
                for (const dist::RoutedItem& item : d.payload) {
                    const auto& pb = std::get<dist::ProbeBody>(item.body);
                    const MemberState& ms = member_[v];
                    if (!ms.finalized && ms.cluster == pb.src_virtual)
                        throw std::logic_error("distributed: probe reached its own cluster");
                    dist::ProbeReplyBody reply{pb.probe_edge, ms.finalized,
                                               ms.finalized ? kNoNode : ms.cluster,
                                               ms.cluster_center, ms.exposed};
                    eng_.send(v, pb.probe_edge, dist::Bundle{{kNoNode, reply}}, 1);
                }
            }
        }
        eng_.step_round();
        collect_inboxes();

        // phase D: replies climb to the hosts, which peel and accept
        route_up(depth);
        for (Cluster& c : clusters_) {
            dist::Bundle& in = arrived_[c.host];
            if (in.empty()) continue;
            std::vector<const dist::ProbeReplyBody*> replies;
            for (const dist::RoutedItem& item : in)
                replies.push_back(&std::get<dist::ProbeReplyBody>(item.body));
            std::sort(replies.begin(), replies.end(),
                      [](const auto* a, const auto* b) { return a->probe_edge < b->probe_edge; });
            std::vector<EdgeId> removal;
            std::set<NodeId> seen_live;
            for (const dist::ProbeReplyBody* r : replies) {
                if (r->peer_finalized) {
                    // peel X_v against the dead cluster's reported edge set;
                    // dead edges stay dead at every later level
                    std::vector<EdgeId> peel;
                    std::set_intersection(c.trial.unexplored.begin(), c.trial.unexplored.end(),
                                          r->peer_exposed->begin(), r->peer_exposed->end(),
                                          std::back_inserter(peel));
                    std::vector<EdgeId> merged;
                    std::set_union(c.dead_edges.begin(), c.dead_edges.end(), peel.begin(),
                                   peel.end(), std::back_inserter(merged));
                    c.dead_edges = std::move(merged);
                    removal.insert(removal.end(), peel.begin(), peel.end());
                } else {
                    if (seen_live.insert(r->peer_virtual).second) {
                        c.trial.accepted.push_back(r->probe_edge); // lowest probe id wins
                        c.trial.queried.push_back(r->peer_virtual);
                        // X_v ∩ reported set equals E_j(v, u); read it off the
                        // level mirror instead of intersecting the full sets
                        const auto parallels =
                            level_graph_.edges_between(c.virtual_index, r->peer_virtual);
                        removal.insert(removal.end(), parallels.begin(), parallels.end());
                    }
                }
            }
            std::sort(removal.begin(), removal.end());
            removal.erase(std::unique(removal.begin(), removal.end()), removal.end());
            std::vector<EdgeId> rest;
            std::set_difference(c.trial.unexplored.begin(), c.trial.unexplored.end(),
                                removal.begin(), removal.end(), std::back_inserter(rest));
            c.trial.unexplored = std::move(rest);
            in.clear();
        }
    }

    void second_step_phase(std::uint32_t j, const LevelBudgets& budgets, std::uint32_t depth,
                           LevelReport& rep) {
        // local coins at the hosts
        for (Cluster& c : clusters_) {
            SplitMix64 rng = derive_stream(p_.seed, StreamTag::CenterCoin, j, c.virtual_index);
            c.is_center = rng.bernoulli(budgets.center_prob);
            if (c.is_center) ++rep.center_count;
        }

        // phase E: broadcast center status to all members; route center
        // queries down to the F-edge endpoints
        for (Cluster& c : clusters_) {
            for (NodeId m : c.members)
                moving_[c.host].push_back({m, dist::CenterStatusBody{c.is_center}});
            for (std::size_t qi = 0; qi < c.trial.accepted.size(); ++qi)
                moving_[c.host].push_back(
                    {member_side_endpoint(c, c.trial.accepted[qi]),
                     dist::ProbeBody{c.trial.accepted[qi], c.virtual_index, true}});
        }
        route_down(depth);
        std::vector<dist::Bundle> queries(g_->node_count());
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            for (dist::RoutedItem& item : arrived_[v]) {
                if (std::holds_alternative<dist::CenterStatusBody>(item.body))
                    member_[v].cluster_center = std::get<dist::CenterStatusBody>(item.body).is_center;
                else
                    queries[v].push_back(std::move(item));
            }
            arrived_[v].clear();
        }

        // phases F..H: query hop, reply hop, replies climb to the hosts
        for (NodeId v = 0; v < g_->node_count(); ++v)
            for (dist::RoutedItem& item : queries[v]) {
                const auto& pb = std::get<dist::ProbeBody>(item.body);
                eng_.send(v, pb.probe_edge, dist::Bundle{{kNoNode, pb}}, 1);
            }
        eng_.step_round();
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            for (const auto& d : eng_.inbox(v)) {
                for (const dist::RoutedItem& item : d.payload) {
                    const auto& pb = std::get<dist::ProbeBody>(item.body);
                    const MemberState& ms = member_[v];
                    if (ms.finalized)
                        throw std::logic_error("distributed: center query reached dead cluster");
                    dist::ProbeReplyBody reply{pb.probe_edge, false, ms.cluster,
                                               ms.cluster_center, nullptr};
                    eng_.send(v, pb.probe_edge, dist::Bundle{{kNoNode, reply}}, 1);
                }
            }
        }
        eng_.step_round();
        collect_inboxes();
        route_up(depth);
        for (Cluster& c : clusters_) {
            dist::Bundle& in = arrived_[c.host];
            c.chosen_center = kNoNode;
            c.link_edge = kNoEdge;
            if (c.is_center) {
                in.clear();
                continue;
            }
            for (const dist::RoutedItem& item : in) {
                const auto& r = std::get<dist::ProbeReplyBody>(item.body);
                if (r.peer_center && r.peer_virtual < c.chosen_center) {
                    c.chosen_center = r.peer_virtual;
                    c.link_edge = r.probe_edge;
                }
            }
            in.clear();
        }

        // bookkeeping mirror of the clustering
        asg_.is_center[j].assign(clusters_.size(), 0);
        asg_.chosen_center[j].assign(clusters_.size(), kNoNode);
        for (const Cluster& c : clusters_) {
            asg_.is_center[j][c.virtual_index] = c.is_center ? 1 : 0;
            asg_.chosen_center[j][c.virtual_index] = c.chosen_center;
            if (c.trial.cls == NodeClass::Heavy && (c.is_center || c.chosen_center != kNoNode))
                ++rep.heavy_clustered;
        }

        // phase I: satellites ship their ledgers to the chosen centers
        for (Cluster& c : clusters_) {
            if (c.is_center || c.chosen_center == kNoNode) continue;
            auto ledger = std::make_shared<dist::JoinLedger>();
            ledger->satellite_virtual = c.virtual_index;
            ledger->link_edge = c.link_edge;
            ledger->members = c.members;
            ledger->edge_count = c.edge_count;
            ledger->dead_edges = c.dead_edges;
            ledger->tree = c.tree;
            moving_[c.host].push_back(
                {member_side_endpoint(c, c.link_edge), dist::JoinBody{std::move(ledger)}});
        }
        route_down(depth);
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            for (dist::RoutedItem& item : arrived_[v]) {
                const auto& jb = std::get<dist::JoinBody>(item.body);
                eng_.send(v, jb.ledger->link_edge, dist::Bundle{{kNoNode, jb}}, 1);
            }
            arrived_[v].clear();
        }
        eng_.step_round();
        collect_inboxes();
        // phase J: joins climb the center trees
        route_up(depth);

        std::map<NodeId, std::vector<std::shared_ptr<dist::JoinLedger>>> joins; // by center index
        for (Cluster& c : clusters_) {
            if (!c.is_center) continue;
            for (const dist::RoutedItem& item : arrived_[c.host])
                joins[c.virtual_index].push_back(std::get<dist::JoinBody>(item.body).ledger);
            arrived_[c.host].clear();
        }

        build_next_level(j, joins, depth);
    }

    void build_next_level(std::uint32_t j,
                          std::map<NodeId, std::vector<std::shared_ptr<dist::JoinLedger>>>& joins,
                          std::uint32_t depth) {
        std::vector<Cluster> next;
        std::vector<std::vector<NodeId>> partition_clusters;
        for (Cluster& c : clusters_) {
            if (!c.is_center) continue;
            auto& js = joins[c.virtual_index];
            std::sort(js.begin(), js.end(), [](const auto& a, const auto& b) {
                return a->satellite_virtual < b->satellite_virtual;
            });
            Cluster nc;
            nc.virtual_index = static_cast<NodeId>(next.size());
            nc.host = c.host;
            nc.members = c.members;
            nc.edge_count = c.edge_count;
            nc.dead_edges = c.dead_edges;
            std::vector<SatelliteLink> links;
            std::vector<NodeId> part = {c.virtual_index};
            for (const auto& ledger : js) {
                part.push_back(ledger->satellite_virtual);
                nc.members.insert(nc.members.end(), ledger->members.begin(),
                                  ledger->members.end());
                merge_edge_counts(nc.edge_count, ledger->edge_count);
                std::vector<EdgeId> merged_dead;
                std::set_union(nc.dead_edges.begin(), nc.dead_edges.end(),
                               ledger->dead_edges.begin(), ledger->dead_edges.end(),
                               std::back_inserter(merged_dead));
                nc.dead_edges = std::move(merged_dead);
                const EdgeRecord& rec = g_->edge(ledger->link_edge);
                const bool u_in_sat = std::binary_search(ledger->members.begin(),
                                                         ledger->members.end(), rec.u);
                links.push_back({&ledger->tree, u_in_sat ? rec.u : rec.v,
                                 u_in_sat ? rec.v : rec.u, ledger->link_edge});
            }
            std::sort(nc.members.begin(), nc.members.end());
            nc.tree = merge_cluster_trees(c.tree, links);
            if (nc.tree.height > static_cast<std::uint32_t>(pow3(j + 1) - 1))
                throw std::logic_error("distributed: merged tree height bound violated");
            nc.exposed = compute_exposed(nc);
            partition_clusters.push_back(std::move(part));
            next.push_back(std::move(nc));
        }

        // unclustered virtual nodes finalize at this level
        for (Cluster& c : clusters_) {
            if (c.is_center || c.chosen_center != kNoNode) continue;
            asg_.final_clusters.push_back({j, c.virtual_index, c.members});
        }

        // phase K: announce the new clusters down the new trees and the
        // finalizations down the old trees
        std::uint32_t next_depth = 0;
        for (const Cluster& nc : next) next_depth = std::max(next_depth, nc.tree.height);
        const std::uint32_t k_rounds = std::max(next_depth, depth);
        for (const Cluster& nc : next) {
            for (std::size_t i = 0; i < nc.tree.members.size(); ++i) {
                const NodeId m = nc.tree.members[i];
                moving_[nc.host].push_back(
                    {m, dist::MemberUpdateBody{false, nc.virtual_index, nc.tree.parent_node[i],
                                               nc.tree.parent_edge[i], nc.exposed}});
            }
        }
        for (Cluster& c : clusters_) {
            if (c.is_center || c.chosen_center != kNoNode) continue;
            for (NodeId m : c.members)
                moving_[c.host].push_back(
                    {m, dist::MemberUpdateBody{true, kNoNode, kNoNode, kNoEdge, c.exposed}});
        }
        // members of the new trees route over the new structure
        for (const Cluster& nc : next)
            for (std::size_t i = 0; i < nc.tree.members.size(); ++i) {
                member_[nc.tree.members[i]].parent = nc.tree.parent_node[i];
                member_[nc.tree.members[i]].parent_edge = nc.tree.parent_edge[i];
            }
        route_down(k_rounds);
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            for (dist::RoutedItem& item : arrived_[v]) {
                const auto& up = std::get<dist::MemberUpdateBody>(item.body);
                MemberState& ms = member_[v];
                ms.cluster_center = false;
                if (up.finalized) {
                    ms.finalized = true;
                    ms.cluster = kNoNode;
                    ms.exposed = up.exposed;
                } else {
                    ms.cluster = up.new_virtual;
                    ms.exposed = up.exposed;
                }
            }
            arrived_[v].clear();
        }

        // bookkeeping mirror of the contraction
        Partition part = Partition::from_clusters(static_cast<NodeId>(clusters_.size()),
                                                  std::move(partition_clusters));
        level_graph_ = cluster_graph(level_graph_, part).graph;
        clusters_ = std::move(next);
    }

    void finalize_all(std::uint32_t j, std::uint32_t depth) {
        for (Cluster& c : clusters_) {
            asg_.final_clusters.push_back({j, c.virtual_index, c.members});
            for (NodeId m : c.members)
                moving_[c.host].push_back(
                    {m, dist::MemberUpdateBody{true, kNoNode, kNoNode, kNoEdge, c.exposed}});
        }
        route_down(depth);
        for (NodeId v = 0; v < g_->node_count(); ++v) {
            for (dist::RoutedItem& item : arrived_[v]) {
                const auto& up = std::get<dist::MemberUpdateBody>(item.body);
                member_[v].finalized = true;
                member_[v].cluster = kNoNode;
                member_[v].exposed = up.exposed;
            }
            arrived_[v].clear();
        }
    }
};

inline DistributedOutput run_distributed_sampler(const MultiGraph& g, const Params& p) {
    DistributedSampler s(g, p);
    return s.run();
}

} // namespace locspan
