#include <catch2/catch_amalgamated.hpp>

#include "locspan/multigraph.hpp"
#include "locspan/rng.hpp"

using namespace locspan;

namespace {

MultiGraph path_graph(NodeId n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return MultiGraph(n, e);
}

MultiGraph random_multigraph(SplitMix64& rng, NodeId n, std::size_t m) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (std::size_t i = 0; i < m; ++i) {
        NodeId u = static_cast<NodeId>(rng.next_below(n));
        NodeId v = static_cast<NodeId>(rng.next_below(n));
        if (u == v) continue; // may generate parallel edges, never loops
        e.emplace_back(u, v);
    }
    return MultiGraph(n, e);
}

} // namespace

TEST_CASE("build_graph basics") {
    SECTION("single edge") {
        MultiGraph g = build_graph(2, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
        REQUIRE(g.edge_count() == 1);
        REQUIRE(g.edges()[0].id == 0);
    }
    SECTION("explicit parallel edge") {
        MultiGraph g = build_graph(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {0, 1}});
        REQUIRE(g.edges_between(0, 1).size() == 2);
        REQUIRE(g.edges_between(0, 1) == std::vector<EdgeId>{0, 2});
    }
    SECTION("self-loop rejected") {
        REQUIRE_THROWS_AS(build_graph(3, std::vector<std::pair<NodeId, NodeId>>{{0, 0}}),
                          std::invalid_argument);
    }
    SECTION("duplicate explicit id rejected") {
        REQUIRE_THROWS_AS(
            build_graph(3, std::vector<std::tuple<NodeId, NodeId, EdgeId>>{{0, 1, 7}, {1, 2, 7}}),
            std::invalid_argument);
    }
    SECTION("endpoint out of range rejected") {
        REQUIRE_THROWS_AS(build_graph(2, std::vector<std::pair<NodeId, NodeId>>{{0, 5}}),
                          std::invalid_argument);
    }
}

TEST_CASE("edges_between") {
    SECTION("non-adjacent on a path") {
        MultiGraph g = path_graph(3);
        REQUIRE(g.edges_between(0, 2).empty());
    }
    SECTION("parallel multigraph and symmetry") {
        MultiGraph g = build_graph(
            2, std::vector<std::tuple<NodeId, NodeId, EdgeId>>{{0, 1, 0}, {0, 1, 2}});
        REQUIRE(g.edges_between(0, 1) == std::vector<EdgeId>{0, 2});
        REQUIRE(g.edges_between(1, 0) == std::vector<EdgeId>{0, 2});
    }
}

TEST_CASE("bfs_distances") {
    SECTION("path") {
        MultiGraph g = path_graph(3);
        auto d = bfs_distances(g, 0);
        REQUIRE(d == std::vector<std::uint32_t>{0, 1, 2});
    }
    SECTION("disconnected pair") {
        MultiGraph g(2, std::vector<std::pair<NodeId, NodeId>>{});
        auto d = bfs_distances(g, 0);
        REQUIRE(d[1] == kInfDist);
    }
    SECTION("complete K4") {
        std::vector<std::pair<NodeId, NodeId>> e;
        for (NodeId u = 0; u < 4; ++u)
            for (NodeId v = u + 1; v < 4; ++v) e.emplace_back(u, v);
        MultiGraph g(4, e);
        auto d = bfs_distances(g, 0);
        REQUIRE(d == std::vector<std::uint32_t>{0, 1, 1, 1});
    }
}

TEST_CASE("induced_subgraph") {
    std::vector<std::pair<NodeId, NodeId>> tri{{0, 1}, {1, 2}, {0, 2}};
    MultiGraph g(3, tri);
    SECTION("triangle down to an edge") {
        std::vector<NodeId> nodes{0, 1};
        auto sub = induced_subgraph(g, nodes);
        REQUIRE(sub.graph.node_count() == 2);
        REQUIRE(sub.graph.edge_count() == 1);
        REQUIRE(sub.graph.edges()[0].id == 0); // the (0,1) edge keeps its id
        REQUIRE(sub.to_original == std::vector<NodeId>{0, 1});
    }
    SECTION("identity induction") {
        std::vector<NodeId> nodes{0, 1, 2};
        auto sub = induced_subgraph(g, nodes);
        REQUIRE(sub.graph.edge_count() == 3);
        REQUIRE(sub.graph.edges() == g.edges());
    }
    SECTION("star leaves only") {
        std::vector<std::pair<NodeId, NodeId>> star{{0, 1}, {0, 2}, {0, 3}};
        MultiGraph s(4, star);
        std::vector<NodeId> leaves{1, 2, 3};
        auto sub = induced_subgraph(s, leaves);
        REQUIRE(sub.graph.node_count() == 3);
        REQUIRE(sub.graph.edge_count() == 0);
    }
    SECTION("empty node set rejected") {
        REQUIRE_THROWS_AS(induced_subgraph(g, std::vector<NodeId>{}), std::invalid_argument);
    }
}

TEST_CASE("cluster_graph") {
    SECTION("hand contraction") {
        MultiGraph g(3, std::vector<std::pair<NodeId, NodeId>>{{0, 2}, {1, 2}, {0, 1}});
        Partition p = Partition::from_clusters(3, {{0, 1}, {2}});
        auto res = cluster_graph(g, p);
        REQUIRE(res.graph.node_count() == 2);
        REQUIRE(res.graph.edge_count() == 2);
        REQUIRE(res.graph.edges_between(0, 1).size() == 2);
        REQUIRE(res.surviving_edges == std::vector<EdgeId>{0, 1}); // (0,1) intra edge dropped
    }
    SECTION("singleton clusters are the identity") {
        MultiGraph g(4, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        auto res = cluster_graph(g, Partition::singletons(4));
        REQUIRE(res.graph.edge_count() == g.edge_count());
        REQUIRE(res.surviving_edges.size() == 4);
        REQUIRE(res.graph.edges() == g.edges());
    }
    SECTION("one big cluster") {
        MultiGraph g(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}});
        Partition p = Partition::from_clusters(3, {{0, 1, 2}});
        auto res = cluster_graph(g, p);
        REQUIRE(res.graph.node_count() == 1);
        REQUIRE(res.graph.edge_count() == 0);
    }
    SECTION("overlapping partition rejected") {
        REQUIRE_THROWS_AS(Partition::from_clusters(3, {{0, 1}, {1, 2}}), std::invalid_argument);
    }
    SECTION("unclustered nodes dropped with their edges") {
        MultiGraph g(4, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 3}});
        Partition p = Partition::from_clusters(4, {{0}, {1}}); // 2, 3 unclustered
        auto res = cluster_graph(g, p);
        REQUIRE(res.graph.node_count() == 2);
        REQUIRE(res.surviving_edges == std::vector<EdgeId>{0});
    }
}

TEST_CASE("diameter") {
    SECTION("single node") {
        MultiGraph g(1, std::vector<std::pair<NodeId, NodeId>>{});
        REQUIRE(diameter(g) == 0);
    }
    SECTION("path on 4 nodes") { REQUIRE(diameter(path_graph(4)) == 3); }
    SECTION("two disconnected nodes") {
        MultiGraph g(2, std::vector<std::pair<NodeId, NodeId>>{});
        REQUIRE(diameter(g) == kInfDist);
    }
    SECTION("empty graph rejected") {
        MultiGraph g;
        REQUIRE_THROWS_AS(diameter(g), std::invalid_argument);
    }
}

TEST_CASE("multigraph invariants on random instances") {
    SplitMix64 rng(20240811);
    for (int iter = 0; iter < 25; ++iter) {
        const NodeId n = 2 + static_cast<NodeId>(rng.next_below(30));
        MultiGraph g = random_multigraph(rng, n, rng.next_below(80));

        // adjacency symmetric and total size 2m
        std::size_t adj_total = 0;
        for (NodeId u = 0; u < n; ++u) {
            adj_total += g.neighbors(u).size();
            for (const AdjEntry& a : g.neighbors(u)) {
                REQUIRE(g.edges_between(u, a.neighbor).size() ==
                        g.edges_between(a.neighbor, u).size());
            }
        }
        REQUIRE(adj_total == 2 * g.edge_count());

        // dist(u,v) == 1 iff adjacent; triangle inequality on a sampled triple
        const auto d0 = bfs_distances(g, 0);
        for (NodeId v = 1; v < n; ++v) {
            const bool adjacent = !g.edges_between(0, v).empty();
            REQUIRE((d0[v] == 1) == adjacent);
        }
        const NodeId a = static_cast<NodeId>(rng.next_below(n));
        const NodeId b = static_cast<NodeId>(rng.next_below(n));
        const auto da = bfs_distances(g, a);
        const auto db = bfs_distances(g, b);
        for (NodeId w = 0; w < n; ++w) {
            if (da[b] == kInfDist || db[w] == kInfDist) continue;
            REQUIRE(da[w] <= da[b] + db[w]);
        }

        // cluster_graph keeps exactly the inter-cluster ids
        std::vector<std::vector<NodeId>> cl(1 + rng.next_below(4));
        for (NodeId v = 0; v < n; ++v) cl[rng.next_below(cl.size())].push_back(v);
        cl.erase(std::remove_if(cl.begin(), cl.end(), [](auto& c) { return c.empty(); }),
                 cl.end());
        Partition p = Partition::from_clusters(n, cl);
        auto res = cluster_graph(g, p);
        std::vector<EdgeId> expect;
        for (const EdgeRecord& e : g.edges())
            if (p.assignment[e.u] != p.assignment[e.v]) expect.push_back(e.id);
        std::sort(expect.begin(), expect.end());
        REQUIRE(res.surviving_edges == expect);

        // induced over everything + singleton contraction is the identity on ids
        std::vector<NodeId> all(n);
        for (NodeId v = 0; v < n; ++v) all[v] = v;
        auto sub = induced_subgraph(g, all);
        auto ident = cluster_graph(sub.graph, Partition::singletons(n));
        REQUIRE(ident.graph.edges() == g.edges());
    }
}
