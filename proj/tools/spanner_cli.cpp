// Experiment harness: graph generation, spanner construction runs
// (centralized or round-simulated distributed), parameter sweeps, and
// spanner-based t-local broadcast, with machine-readable output.
//
// Exit codes: 0 = run completed and all hard verifications passed,
// 2 = completed with verification violations, 1 = usage or I/O error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "locspan/generators.hpp"
#include "locspan/graph_io.hpp"
#include "locspan/run_record.hpp"

using namespace locspan;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content;
    if (!content.empty() && content.back() != '\n') out << "\n";
}

Params params_for(const MultiGraph& g, std::uint32_t k, std::uint32_t h, double c,
                  std::uint64_t seed, double budget_scale) {
    Params p;
    p.n = g.node_count();
    p.k = k;
    p.h = h;
    p.c = c;
    p.seed = seed;
    p.budget_scale = budget_scale;
    p.validate();
    return p;
}

struct GenOptions {
    std::string model = "gnp";
    std::uint64_t n = 0;
    double p = 0.1;
    std::uint64_t rows = 0, cols = 0;
    std::uint64_t clique_size = 0, bridge_len = 0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenOptions& o) {
    GenSpec spec;
    spec.model = o.model;
    spec.n = static_cast<NodeId>(o.n);
    spec.p = o.p;
    spec.rows = static_cast<NodeId>(o.rows);
    spec.cols = static_cast<NodeId>(o.cols);
    spec.clique_size = static_cast<NodeId>(o.clique_size);
    spec.bridge_len = static_cast<NodeId>(o.bridge_len);
    spec.seed = o.seed;
    const GeneratedGraph g = generate_graph(spec);
    std::vector<std::string> comments;
    std::ostringstream head;
    head << "model=" << o.model << " n=" << o.n << " seed=" << o.seed;
    if (o.model == "gnp") head << " p=" << o.p;
    comments.push_back(head.str());
    if (!g.note.empty()) comments.push_back(g.note);
    std::ostringstream body;
    write_graph_text(body, g.graph, comments);
    write_output(o.out, body.str());
    return 0;
}

struct RunOptions {
    std::string graph;
    std::uint64_t k = 1, h = 1;
    double c = 4.0;
    std::uint64_t seed = 0;
    std::string mode = "centralized";
    double budget_scale = 1.0;
    std::string out;
    std::string format = "json";
    bool all_pairs = false;
};

int cmd_run(const RunOptions& o) {
    const MultiGraph g = read_graph_file(o.graph);
    const Params p = params_for(g, static_cast<std::uint32_t>(o.k), static_cast<std::uint32_t>(o.h),
                                o.c, o.seed, o.budget_scale);
    GraphDescriptor desc;
    desc.model = "file";
    desc.source = o.graph;
    RunRecord rec = execute_run(g, desc, p, o.mode);
    if (o.all_pairs) {
        const auto extra = check_stretch_all_pairs(g, rec.spanner_edges, rec.stretch_bound);
        for (const AllPairsViolation& x : extra)
            rec.verification.stretch_violations.push_back({kNoEdge, x.u, x.v, x.h_distance});
    }
    if (o.format == "json") {
        write_output(o.out, to_json(rec).dump(2));
    } else if (o.format == "csv") {
        write_output(o.out, sweep_csv_header() + "\n" + sweep_csv_row(rec));
    } else {
        throw std::invalid_argument("unknown format: " + o.format);
    }
    return rec.hard_pass() ? 0 : 2;
}

struct SweepOptions {
    std::string model = "gnp";
    double p = 0.1;
    std::string n_list = "256";
    std::string k_list = "1";
    std::string h_list = "auto";
    std::string c_list = "4";
    std::string budget_scale_list = "1";
    std::string mode = "centralized";
    std::string seeds = "1";
    std::uint64_t graph_seed = 0;
    std::string out;
};

int cmd_sweep(const SweepOptions& o) {
    std::vector<std::string> modes;
    if (o.mode == "both")
        modes = {"centralized", "distributed"};
    else
        modes = {o.mode};
    std::ostringstream csv;
    csv << sweep_csv_header() << "\n";
    bool violations = false;
    for (const std::string& ns : split_list(o.n_list)) {
        GenSpec spec;
        spec.model = o.model;
        spec.n = static_cast<NodeId>(std::stoull(ns));
        spec.p = o.p;
        spec.seed = o.graph_seed;
        const GeneratedGraph gg = generate_graph(spec);
        for (const std::string& ks : split_list(o.k_list))
            for (const std::string& hs : split_list(o.h_list))
                for (const std::string& cs : split_list(o.c_list))
                    for (const std::string& bs : split_list(o.budget_scale_list))
                        for (const std::string& mode : modes)
                            for (const std::string& ss : split_list(o.seeds)) {
                                const std::uint32_t h =
                                    hs == "auto"
                                        ? static_cast<std::uint32_t>(std::ceil(std::log2(
                                              static_cast<double>(gg.graph.node_count()))))
                                        : static_cast<std::uint32_t>(std::stoul(hs));
                                const Params p = params_for(
                                    gg.graph, static_cast<std::uint32_t>(std::stoul(ks)), h,
                                    std::stod(cs), std::stoull(ss), std::stod(bs));
                                GraphDescriptor desc;
                                desc.model = o.model;
                                desc.seed = o.graph_seed;
                                desc.note = gg.note;
                                const RunRecord rec = execute_run(gg.graph, desc, p, mode);
                                if (!rec.hard_pass()) violations = true;
                                csv << sweep_csv_row(rec) << "\n";
                            }
    }
    write_output(o.out, csv.str());
    return violations ? 2 : 0;
}

struct BroadcastOptions {
    std::string graph;
    std::string spanner_record;
    std::uint64_t t = 1;
    std::string alpha = "auto";
    std::string out;
};

int cmd_broadcast(const BroadcastOptions& o) {
    const MultiGraph g = read_graph_file(o.graph);
    std::ifstream in(o.spanner_record);
    if (!in) throw std::invalid_argument("cannot open spanner record: " + o.spanner_record);
    Json rec = Json::parse(in);
    if (!rec.contains("results") || !rec["results"].contains("spanner_edges"))
        throw std::invalid_argument("spanner record missing results.spanner_edges");
    if (rec["graph"]["n"].get<std::uint64_t>() != g.node_count() ||
        rec["graph"]["m"].get<std::uint64_t>() != g.edge_count())
        throw std::invalid_argument("spanner record does not match the graph file");
    std::vector<EdgeId> spanner;
    for (const auto& e : rec["results"]["spanner_edges"]) spanner.push_back(e.get<EdgeId>());
    for (EdgeId id : spanner)
        if (!g.has_edge(id))
            throw std::invalid_argument("spanner record references unknown edge " +
                                        std::to_string(id));
    const std::uint32_t bound = rec["results"]["stretch_bound"].get<std::uint32_t>();
    const std::uint32_t alpha =
        o.alpha == "auto" ? bound : static_cast<std::uint32_t>(std::stoul(o.alpha));
    const std::uint32_t gamma = rec["params"]["k"].get<std::uint32_t>();
    const BroadcastReport rep =
        run_broadcast(g, spanner, static_cast<std::uint32_t>(o.t), alpha, gamma);
    write_output(o.out, to_json(rep).dump(2));
    return rep.pass() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LOCAL-model spanner construction and message-reduction simulator"};
    app.set_help_flag("--help", "print help"); // frees -h; --h is a run parameter
    app.require_subcommand(1);

    GenOptions gen_o;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a graph file");
    gen_cmd->add_option("--model", gen_o.model,
                        "gnp|complete|cycle|path|grid|star|barbell")->capture_default_str();
    gen_cmd->add_option("--n", gen_o.n, "node count");
    gen_cmd->add_option("--p", gen_o.p, "gnp edge probability")->capture_default_str();
    gen_cmd->add_option("--rows", gen_o.rows, "grid rows");
    gen_cmd->add_option("--cols", gen_o.cols, "grid cols");
    gen_cmd->add_option("--clique-size", gen_o.clique_size, "barbell clique size");
    gen_cmd->add_option("--bridge-len", gen_o.bridge_len, "barbell bridge length");
    gen_cmd->add_option("--seed", gen_o.seed, "generator seed")->capture_default_str();
    gen_cmd->add_option("--out", gen_o.out, "output path (default stdout)");

    RunOptions run_o;
    CLI::App* run_cmd = app.add_subcommand("run", "construct and verify one spanner");
    run_cmd->add_option("--graph", run_o.graph, "graph file")->required();
    run_cmd->add_option("--k", run_o.k, "level parameter (>= 1)")->required();
    run_cmd->add_option("--h", run_o.h, "trial parameter (>= 1)")->required();
    run_cmd->add_option("--c", run_o.c, "success constant (> 0)")->capture_default_str();
    run_cmd->add_option("--seed", run_o.seed, "run seed")->capture_default_str();
    run_cmd->add_option("--mode", run_o.mode, "centralized|distributed")->capture_default_str();
    run_cmd->add_option("--budget-scale", run_o.budget_scale,
                        "sample-budget multiplier; != 1 is non-faithful mode")
        ->capture_default_str();
    run_cmd->add_option("--out", run_o.out, "output path (default stdout)");
    run_cmd->add_option("--format", run_o.format, "json|csv")->capture_default_str();
    run_cmd->add_flag("--all-pairs", run_o.all_pairs, "also run the all-pairs stretch check");

    SweepOptions sweep_o;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid of runs, CSV output");
    sweep_cmd->add_option("--model", sweep_o.model, "graph model")->capture_default_str();
    sweep_cmd->add_option("--p", sweep_o.p, "gnp edge probability")->capture_default_str();
    sweep_cmd->add_option("--n", sweep_o.n_list, "comma list of node counts")->capture_default_str();
    sweep_cmd->add_option("--k", sweep_o.k_list, "comma list of k values")->capture_default_str();
    sweep_cmd->add_option("--h", sweep_o.h_list, "comma list of h values, or auto = ceil(log2 n)")
        ->capture_default_str();
    sweep_cmd->add_option("--c", sweep_o.c_list, "comma list of c values")->capture_default_str();
    sweep_cmd->add_option("--budget-scale", sweep_o.budget_scale_list, "comma list of scales")
        ->capture_default_str();
    sweep_cmd->add_option("--mode", sweep_o.mode, "centralized|distributed|both")
        ->capture_default_str();
    sweep_cmd->add_option("--seeds", sweep_o.seeds, "comma list of run seeds")->capture_default_str();
    sweep_cmd->add_option("--graph-seed", sweep_o.graph_seed, "generator seed")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_o.out, "output CSV path (default stdout)");

    BroadcastOptions bc_o;
    CLI::App* bc_cmd = app.add_subcommand("broadcast", "t-local broadcast over a built spanner");
    bc_cmd->add_option("--graph", bc_o.graph, "graph file")->required();
    bc_cmd->add_option("--spanner", bc_o.spanner_record, "run record JSON with the spanner")
        ->required();
    bc_cmd->add_option("--t", bc_o.t, "locality radius")->required();
    bc_cmd->add_option("--alpha", bc_o.alpha, "flooding stretch, or auto = record's bound")
        ->capture_default_str();
    bc_cmd->add_option("--out", bc_o.out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (gen_cmd->parsed()) return cmd_gen(gen_o);
        if (run_cmd->parsed()) return cmd_run(run_o);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_o);
        if (bc_cmd->parsed()) return cmd_broadcast(bc_o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
