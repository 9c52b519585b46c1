#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "locspan/broadcast.hpp"
#include "locspan/distributed.hpp"
#include "locspan/multigraph.hpp"
#include "locspan/params.hpp"
#include "locspan/sampler.hpp"
#include "locspan/verify.hpp"

namespace locspan {

using Json = nlohmann::ordered_json;

struct GraphDescriptor {
    std::string model; // generator model or "file"
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t seed = 0;   // generator seed when applicable
    std::string source;       // file path when loaded
    std::string note;
};

/// One self-describing run: re-running from the echoed fields reproduces the
/// results exactly (wall time aside).
struct RunRecord {
    Params params;
    std::string mode; // "centralized" | "distributed"
    GraphDescriptor graph;

    std::uint64_t spanner_size = 0;
    std::vector<EdgeId> spanner_edges;
    std::uint32_t stretch_bound = 0;
    std::uint32_t measured_max_stretch = 0;
    Counters counters;
    std::vector<LevelReport> level_stats;
    VerificationReport verification;
    bool faithful = true; // false when budget_scale != 1
    double wall_time_ms = 0.0;

    bool hard_pass() const { return verification.pass(); }
};

inline Json to_json(const GraphDescriptor& g) {
    Json j;
    j["model"] = g.model;
    j["n"] = g.n;
    j["m"] = g.m;
    j["seed"] = g.seed;
    if (!g.source.empty()) j["source"] = g.source;
    if (!g.note.empty()) j["note"] = g.note;
    return j;
}

inline Json to_json(const Params& p) {
    Json j;
    j["n"] = p.n;
    j["k"] = p.k;
    j["h"] = p.h;
    j["c"] = p.c;
    j["seed"] = p.seed;
    j["budget_scale"] = p.budget_scale;
    j["delta"] = p.delta();
    j["epsilon"] = p.epsilon();
    return j;
}

inline Json to_json(const Counters& c) {
    Json j;
    j["total_messages"] = c.total_messages;
    j["rounds_elapsed"] = c.rounds_elapsed;
    j["payload_messages"] = c.payload_messages;
    Json levels = Json::array();
    for (const LevelCounters& lc : c.per_level)
        levels.push_back({{"messages", lc.messages}, {"rounds", lc.rounds}});
    j["per_level"] = levels;
    return j;
}

inline Json to_json(const LevelReport& lr) {
    Json j;
    j["level"] = lr.level;
    j["n_j"] = lr.virtual_nodes;
    j["m_j"] = lr.virtual_edges;
    j["samples_per_trial"] = lr.samples_per_trial;
    j["neighbor_threshold"] = lr.neighbor_threshold;
    j["center_prob"] = lr.center_prob;
    j["f_size"] = lr.f_size;
    j["centers"] = lr.center_count;
    j["light"] = lr.light_count;
    j["heavy"] = lr.heavy_count;
    j["failed"] = lr.failed_count;
    j["heavy_clustered"] = lr.heavy_clustered;
    return j;
}

inline Json to_json(const VerificationReport& v) {
    Json j;
    j["pass"] = v.pass();
    j["stretch_bound"] = v.stretch_bound;
    Json sv = Json::array();
    for (const StretchViolation& x : v.stretch_violations)
        sv.push_back({{"edge", x.edge},
                      {"u", x.u},
                      {"v", x.v},
                      {"h_distance", x.h_distance == kInfDist ? Json(nullptr) : Json(x.h_distance)}});
    j["stretch_violations"] = sv;
    Json dv = Json::array();
    for (const DiameterViolation& x : v.diameter_violations)
        dv.push_back({{"level", x.level},
                      {"virtual_node", x.virtual_node},
                      {"measured", x.measured == kInfDist ? Json(nullptr) : Json(x.measured)},
                      {"bound", x.bound}});
    j["diameter_violations"] = dv;
    j["partition_ok"] = v.partition.ok;
    j["uncovered"] = v.partition.uncovered;
    j["multiply_covered"] = v.partition.multiply_covered;
    Json counts;
    counts["spanner_size"] = v.counts.spanner_size;
    counts["exact_budget_bound"] = v.counts.exact_budget_bound;
    counts["edge_exact_ok"] = v.counts.edge_exact_ok;
    counts["paper_ratio"] = v.counts.paper_ratio;
    counts["edge_paper_ok"] = v.counts.edge_paper_ok;
    Json nb = Json::array();
    for (const NodeBoundCheck& x : v.counts.node_bounds)
        nb.push_back({{"level", x.level},
                      {"n_j", x.n_j},
                      {"lower", x.lower},
                      {"upper", x.upper},
                      {"hard", x.hard},
                      {"within", x.within}});
    counts["node_bounds"] = nb;
    counts["node_hard_ok"] = v.counts.node_hard_ok;
    counts["metered"] = v.counts.metered;
    if (v.counts.metered) {
        counts["round_bound"] = v.counts.round_bound;
        counts["round_ok"] = v.counts.round_ok;
        counts["message_bound"] = v.counts.message_bound;
        counts["message_ok"] = v.counts.message_ok;
    }
    j["counts"] = counts;
    j["classification_failures"] = v.failure_count;
    return j;
}

inline Json to_json(const RunRecord& r, bool include_timing = true) {
    Json j;
    j["params"] = to_json(r.params);
    j["mode"] = r.mode;
    j["graph"] = to_json(r.graph);
    Json results;
    results["spanner_size"] = r.spanner_size;
    results["stretch_bound"] = r.stretch_bound;
    results["measured_max_stretch"] =
        r.measured_max_stretch == kInfDist ? Json(nullptr) : Json(r.measured_max_stretch);
    results["counters"] = to_json(r.counters);
    Json levels = Json::array();
    for (const LevelReport& lr : r.level_stats) levels.push_back(to_json(lr));
    results["levels"] = levels;
    results["spanner_edges"] = r.spanner_edges;
    j["results"] = results;
    j["verification"] = to_json(r.verification);
    j["faithful"] = r.faithful;
    if (include_timing) j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

/// Runs the requested mode, verifies everything, and assembles the record.
inline RunRecord execute_run(const MultiGraph& g, const GraphDescriptor& desc, const Params& params,
                             const std::string& mode) {
    if (mode != "centralized" && mode != "distributed")
        throw std::invalid_argument("mode must be centralized or distributed");
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.params = params;
    rec.mode = mode;
    rec.graph = desc;
    rec.graph.n = g.node_count();
    rec.graph.m = g.edge_count();

    SpannerResult res;
    ClusterAssignment asg;
    Counters counters;
    if (mode == "centralized") {
        SamplerOutput out = run_sampler(g, params);
        res = std::move(out.result);
        asg = std::move(out.assignment);
    } else {
        DistributedOutput out = run_distributed_sampler(g, params);
        res = std::move(out.result);
        asg = std::move(out.assignment);
        counters = out.counters;
    }

    rec.spanner_size = res.edges.size();
    rec.spanner_edges = res.edges;
    rec.stretch_bound = res.stretch_bound;
    rec.measured_max_stretch = measured_max_stretch(g, res.edges);
    rec.counters = counters;
    rec.level_stats = res.levels;
    rec.verification = verify_run(g, res, asg, params, counters);
    rec.faithful = params.budget_scale == 1.0;
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// ---------------------------------------------------------------------------
// sweep CSV
// ---------------------------------------------------------------------------

inline std::string sweep_csv_header() {
    return "n,m,k,h,c,budget_scale,mode,S_size,messages,rounds,max_stretch,violations,failures";
}

inline std::string sweep_csv_row(const RunRecord& r) {
    const std::uint64_t violations = r.verification.stretch_violations.size() +
                                     r.verification.diameter_violations.size() +
                                     (r.verification.partition.ok ? 0 : 1);
    std::string stretch = r.measured_max_stretch == kInfDist
                              ? std::string("inf")
                              : std::to_string(r.measured_max_stretch);
    std::string row;
    row += std::to_string(r.graph.n) + ",";
    row += std::to_string(r.graph.m) + ",";
    row += std::to_string(r.params.k) + ",";
    row += std::to_string(r.params.h) + ",";
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%g", r.params.c);
        row += std::string(buf) + ",";
        std::snprintf(buf, sizeof buf, "%g", r.params.budget_scale);
        row += std::string(buf) + ",";
    }
    row += r.mode + ",";
    row += std::to_string(r.spanner_size) + ",";
    row += std::to_string(r.counters.total_messages) + ",";
    row += std::to_string(r.counters.rounds_elapsed) + ",";
    row += stretch + ",";
    row += std::to_string(violations) + ",";
    row += std::to_string(r.verification.failure_count);
    return row;
}

// ---------------------------------------------------------------------------
// broadcast report
// ---------------------------------------------------------------------------

struct BroadcastReport {
    std::uint32_t t = 0;
    std::uint32_t alpha = 0;
    std::uint64_t rounds = 0;
    std::uint64_t messages = 0;
    std::uint64_t payload_messages = 0;
    std::uint64_t completeness_misses = 0;
    std::uint64_t spanner_size = 0;
    double formula_messages = 0.0; // predicted-complexity formula values, not measurements
    double formula_rounds = 0.0;
    bool pass() const { return completeness_misses == 0; }
};

inline Json to_json(const BroadcastReport& b) {
    Json j;
    j["t"] = b.t;
    j["alpha"] = b.alpha;
    j["rounds"] = b.rounds;
    j["messages"] = b.messages;
    j["payload_messages"] = b.payload_messages;
    j["completeness_misses"] = b.completeness_misses;
    j["spanner_size"] = b.spanner_size;
    j["formula"] = {{"messages", b.formula_messages}, {"rounds", b.formula_rounds}};
    j["pass"] = b.pass();
    return j;
}

inline BroadcastReport run_broadcast(const MultiGraph& g, const std::vector<EdgeId>& spanner,
                                     std::uint32_t t, std::uint32_t alpha, std::uint32_t gamma) {
    BroadcastInstance inst;
    inst.t = t;
    inst.alpha = alpha;
    inst.spanner_edges = spanner;
    const BroadcastResult res = t_local_broadcast(g, inst);
    BroadcastReport rep;
    rep.t = t;
    rep.alpha = alpha;
    rep.rounds = res.counters.rounds_elapsed;
    rep.messages = res.counters.total_messages;
    rep.payload_messages = res.counters.payload_messages;
    rep.completeness_misses = completeness_misses(g, t, res.received).size();
    rep.spanner_size = spanner.size();
    rep.formula_messages = predicted_broadcast_messages(g.node_count(), gamma, t);
    rep.formula_rounds = predicted_broadcast_rounds(gamma, t);
    return rep;
}

} // namespace locspan
