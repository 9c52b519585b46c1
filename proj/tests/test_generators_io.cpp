#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "locspan/generators.hpp"
#include "locspan/graph_io.hpp"

using namespace locspan;

TEST_CASE("generator edge counts") {
    REQUIRE(gen::complete(4).graph.edge_count() == 6);
    REQUIRE(gen::cycle(8).graph.edge_count() == 8);
    REQUIRE(gen::path(32).graph.edge_count() == 31);
    REQUIRE(gen::star(9).graph.edge_count() == 8);
    REQUIRE(gen::grid(32, 32).graph.edge_count() == 2 * 32 * 31);
    REQUIRE(gen::grid(32, 32).graph.node_count() == 1024);
    // two K_5 plus a 3-node bridge path
    const GeneratedGraph bb = gen::barbell(5, 3);
    REQUIRE(bb.graph.node_count() == 13);
    REQUIRE(bb.graph.edge_count() == 2 * 10 + 4);
    REQUIRE(diameter(bb.graph) == 6);
}

TEST_CASE("gnp with p = 1 equals the complete graph") {
    const GeneratedGraph g = gen::gnp(100, 1.0, 5);
    REQUIRE(g.graph.edge_count() == 4950);
    REQUIRE(g.note.empty());
}

TEST_CASE("gnp is deterministic per seed and respects density") {
    const GeneratedGraph a = gen::gnp(200, 0.1, 9);
    const GeneratedGraph b = gen::gnp(200, 0.1, 9);
    REQUIRE(a.graph.edges() == b.graph.edges());
    const GeneratedGraph c = gen::gnp(200, 0.1, 10);
    REQUIRE(a.graph.edges() != c.graph.edges());
    // expectation 1990; allow a wide deterministic window
    REQUIRE(a.graph.edge_count() > 1500);
    REQUIRE(a.graph.edge_count() < 2500);
}

TEST_CASE("gnp keeps only the largest component when disconnected") {
    // sparse enough to disconnect almost surely
    const GeneratedGraph g = gen::gnp(64, 0.01, 3);
    REQUIRE_FALSE(g.note.empty());
    REQUIRE(g.graph.node_count() < 64);
    REQUIRE(diameter(g.graph) != kInfDist); // connected after reduction
}

TEST_CASE("graph text round trip") {
    const MultiGraph g = gen::gnp(50, 0.2, 7).graph;
    std::stringstream ss;
    write_graph_text(ss, g, {"model=gnp n=50 p=0.2 seed=7"});
    const MultiGraph back = read_graph_text(ss);
    REQUIRE(back.node_count() == g.node_count());
    REQUIRE(back.edges() == g.edges());
}

TEST_CASE("graph text parsing") {
    SECTION("comments and blank lines are ignored") {
        std::stringstream ss("# a comment\n\n3 2\n0 1\n# inner comment\n1 2\n");
        const MultiGraph g = read_graph_text(ss);
        REQUIRE(g.node_count() == 3);
        REQUIRE(g.edge_count() == 2);
        REQUIRE(g.edges()[0].id == 0); // sequential assignment
    }
    SECTION("explicit ids are honored") {
        std::stringstream ss("2 1\n0 1 42\n");
        const MultiGraph g = read_graph_text(ss);
        REQUIRE(g.edges()[0].id == 42);
    }
    SECTION("mixed id columns are rejected") {
        std::stringstream ss("3 2\n0 1 5\n1 2\n");
        REQUIRE_THROWS_AS(read_graph_text(ss), std::invalid_argument);
    }
    SECTION("edge count mismatch is rejected") {
        std::stringstream ss("3 5\n0 1\n1 2\n");
        REQUIRE_THROWS_AS(read_graph_text(ss), std::invalid_argument);
    }
    SECTION("missing header is rejected") {
        std::stringstream ss("# only comments\n");
        REQUIRE_THROWS_AS(read_graph_text(ss), std::invalid_argument);
    }
    SECTION("self-loop is rejected at build") {
        std::stringstream ss("2 1\n1 1\n");
        REQUIRE_THROWS_AS(read_graph_text(ss), std::invalid_argument);
    }
}

TEST_CASE("generate_graph dispatch") {
    GenSpec spec;
    spec.model = "grid";
    spec.n = 1024;
    REQUIRE(generate_graph(spec).graph.node_count() == 1024);
    spec.model = "nonesuch";
    REQUIRE_THROWS_AS(generate_graph(spec), std::invalid_argument);
    spec.model = "grid";
    spec.n = 1000; // not a perfect square and no rows/cols
    REQUIRE_THROWS_AS(generate_graph(spec), std::invalid_argument);
}
