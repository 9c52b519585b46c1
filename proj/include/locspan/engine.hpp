#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "locspan/multigraph.hpp"
#include "locspan/sampler.hpp"

namespace locspan {

struct LevelCounters {
    std::uint64_t messages = 0;
    std::uint64_t rounds = 0;

    bool operator==(const LevelCounters&) const = default;
};

/// Message and round meters. total_messages counts individual (edge,
/// direction, round) sends; payload_messages additionally weighs each send by
/// its payload-item count (used by the flooding accounting).
struct Counters {
    std::uint64_t total_messages = 0;
    std::uint64_t rounds_elapsed = 0;
    std::uint64_t payload_messages = 0;
    std::vector<LevelCounters> per_level;

    bool operator==(const Counters&) const = default;
};

/// Fully synchronous message-passing engine over a fixed graph with unique
/// edge IDs. Messages sent in round r are delivered at the start of round
/// r+1, all at once, ordered by (receiver, edge ID, sender). A node may only
/// send over its own incident edges. Single-threaded and deterministic.
template <typename Payload>
class Engine {
public:
    struct Delivery {
        NodeId to;
        EdgeId edge;
        NodeId from;
        Payload payload;
    };

    explicit Engine(const MultiGraph& g) : graph_(&g), inbox_(g.node_count()) {}

    const MultiGraph& graph() const { return *graph_; }
    std::uint64_t round() const { return round_; }
    const Counters& counters() const { return counters_; }

    /// Attributes subsequent messages and rounds to the given breakdown slot.
    void set_attribution(std::size_t slot) {
        attribution_ = slot;
        if (counters_.per_level.size() <= slot) counters_.per_level.resize(slot + 1);
    }

    /// Queues a message from `from` over its incident edge for delivery next
    /// round. Sends over non-incident edges are protocol violations and abort.
    void send(NodeId from, EdgeId edge_id, Payload payload, std::size_t payload_items = 1) {
        const EdgeRecord& e = graph_->edge(edge_id);
        if (e.u != from && e.v != from)
            throw std::logic_error("Engine::send: edge " + std::to_string(edge_id) +
                                   " not incident to node " + std::to_string(from));
        pending_.push_back({e.other(from), edge_id, from, std::move(payload)});
        counters_.total_messages += 1;
        counters_.payload_messages += payload_items;
        if (attribution_ < counters_.per_level.size())
            counters_.per_level[attribution_].messages += 1;
    }

    /// Delivers all queued sends and advances the round. Returns the number
    /// of messages delivered.
    std::size_t step_round() {
        for (auto& box : inbox_) box.clear();
        std::stable_sort(pending_.begin(), pending_.end(), [](const Delivery& a, const Delivery& b) {
            return std::tie(a.to, a.edge, a.from) < std::tie(b.to, b.edge, b.from);
        });
        const std::size_t delivered = pending_.size();
        for (Delivery& d : pending_) inbox_[d.to].push_back(std::move(d));
        pending_.clear();
        ++round_;
        counters_.rounds_elapsed += 1;
        if (attribution_ < counters_.per_level.size())
            counters_.per_level[attribution_].rounds += 1;
        return delivered;
    }

    /// Messages delivered to v at the start of the current round.
    const std::vector<Delivery>& inbox(NodeId v) const { return inbox_[v]; }

private:
    const MultiGraph* graph_;
    std::uint64_t round_ = 0;
    Counters counters_;
    std::size_t attribution_ = static_cast<std::size_t>(-1);
    std::vector<Delivery> pending_;
    std::vector<std::vector<Delivery>> inbox_;
};

// ---------------------------------------------------------------------------
// Tree sessions
// ---------------------------------------------------------------------------

namespace detail {
/// Children lists and depths for a cluster tree, for session scheduling.
struct TreeRouting {
    std::vector<std::vector<std::pair<NodeId, EdgeId>>> children_of; // indexed like tree.members
    std::vector<std::uint32_t> depth;                                // indexed like tree.members

    explicit TreeRouting(const ClusterTree& t) {
        children_of.resize(t.members.size());
        depth.resize(t.members.size());
        for (std::size_t i = 0; i < t.members.size(); ++i) {
            const NodeId v = t.members[i];
            if (v == t.root) continue;
            children_of[t.index_of(t.parent_node[i])].emplace_back(v, t.parent_edge[i]);
        }
        for (std::size_t i = 0; i < t.members.size(); ++i) {
            std::uint32_t d = 0;
            NodeId cur = t.members[i];
            while (cur != t.root) {
                cur = t.parent_of(cur);
                ++d;
            }
            depth[i] = d;
        }
    }
};
} // namespace detail

template <typename T>
struct SessionMsg {
    std::optional<T> down;                     // broadcast payload
    std::vector<std::pair<NodeId, T>> up;      // aggregated replies
};

/// One broadcast-convergecast session over a cluster tree rooted at its root:
/// the payload travels to every member, each member's reply is aggregated
/// back. Costs exactly 2 * |tree edges| messages and 2 * height rounds in
/// isolation; replies arrive sorted by member.
template <typename T, typename ReplyFn>
std::vector<std::pair<NodeId, T>> broadcast_convergecast(Engine<SessionMsg<T>>& eng,
                                                         const ClusterTree& tree, const T& payload,
                                                         ReplyFn reply) {
    const detail::TreeRouting routing(tree);
    const std::uint32_t height = tree.height;

    // down: the bundle crossing an edge at depth d crosses it in round d
    for (std::uint32_t r = 1; r <= height; ++r) {
        for (std::size_t i = 0; i < tree.members.size(); ++i) {
            if (routing.depth[i] != r - 1) continue;
            for (const auto& [child, edge] : routing.children_of[i])
                eng.send(tree.members[i], edge, SessionMsg<T>{payload, {}});
        }
        eng.step_round();
    }
    // up: a node at depth d has its subtree aggregated after height - d rounds
    std::vector<std::vector<std::pair<NodeId, T>>> gathered(tree.members.size());
    for (std::size_t i = 0; i < tree.members.size(); ++i)
        gathered[i].emplace_back(tree.members[i], reply(tree.members[i]));
    for (std::uint32_t r = 1; r <= height; ++r) {
        for (std::size_t i = 0; i < tree.members.size(); ++i) {
            if (routing.depth[i] != height - r + 1) continue;
            eng.send(tree.members[i], tree.parent_edge[i],
                     SessionMsg<T>{std::nullopt, std::move(gathered[i])});
            gathered[i].clear();
        }
        eng.step_round();
        for (std::size_t i = 0; i < tree.members.size(); ++i)
            for (const auto& d : eng.inbox(tree.members[i]))
                for (const auto& item : d.payload.up) gathered[i].push_back(item);
    }
    auto& result = gathered[tree.index_of(tree.root)];
    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return std::move(result);
}

} // namespace locspan
