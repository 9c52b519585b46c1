#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "locspan/multigraph.hpp"

namespace locspan {

// Graph text format: header line "n m", then m lines "u v [id]"
// (whitespace-separated, 0-indexed). A missing id column means sequential
// assignment; id columns must be used on all edge lines or none. Lines
// beginning with '#' are comments.

inline MultiGraph read_graph_text(std::istream& in) {
    std::string line;
    std::uint64_t n = 0, m = 0;
    bool have_header = false;
    std::vector<std::tuple<NodeId, NodeId, EdgeId>> triples;
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> n >> m))
                throw std::invalid_argument("graph text: bad header at line " +
                                            std::to_string(lineno));
            have_header = true;
            continue;
        }
        std::uint64_t u, v;
        if (!(ls >> u >> v))
            throw std::invalid_argument("graph text: bad edge at line " + std::to_string(lineno));
        std::uint64_t id;
        if (ls >> id) {
            if (!pairs.empty())
                throw std::invalid_argument("graph text: mixed id columns at line " +
                                            std::to_string(lineno));
            triples.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v), id);
        } else {
            if (!triples.empty())
                throw std::invalid_argument("graph text: mixed id columns at line " +
                                            std::to_string(lineno));
            pairs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        }
    }
    if (!have_header) throw std::invalid_argument("graph text: missing header");
    const std::size_t got = triples.size() + pairs.size();
    if (got != m)
        throw std::invalid_argument("graph text: header announces " + std::to_string(m) +
                                    " edges, found " + std::to_string(got));
    if (!triples.empty()) return MultiGraph(static_cast<NodeId>(n), triples);
    return MultiGraph(static_cast<NodeId>(n), pairs);
}

inline MultiGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file: " + path);
    return read_graph_text(in);
}

inline void write_graph_text(std::ostream& out, const MultiGraph& g,
                             const std::vector<std::string>& comments = {}) {
    for (const std::string& c : comments) out << "# " << c << "\n";
    out << g.node_count() << " " << g.edge_count() << "\n";
    for (const EdgeRecord& e : g.edges()) out << e.u << " " << e.v << " " << e.id << "\n";
}

inline void write_graph_file(const std::string& path, const MultiGraph& g,
                             const std::vector<std::string>& comments = {}) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    write_graph_text(out, g, comments);
}

} // namespace locspan
