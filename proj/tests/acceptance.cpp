// Acceptance suite: runs every guarantee the library promises at desk scale
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "locspan/broadcast.hpp"
#include "locspan/distributed.hpp"
#include "locspan/generators.hpp"
#include "locspan/run_record.hpp"
#include "locspan/sampler.hpp"
#include "locspan/verify.hpp"

using namespace locspan;

namespace {

bool g_all_pass = true;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%s %-12s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    if (!pass) g_all_pass = false;
}

Params make_params(std::uint64_t n, std::uint32_t k, std::uint64_t seed, double c = 4.0) {
    Params p;
    p.n = n;
    p.k = k;
    p.h = static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(n))));
    p.c = c;
    p.seed = seed;
    return p;
}

struct NamedGraph {
    std::string name;
    MultiGraph g;
    std::uint64_t gen_seed;
};

} // namespace

int main() {
    std::vector<NamedGraph> suite;
    suite.push_back({"gnp(256,0.1)", gen::gnp(256, 0.1, 42).graph, 42});
    suite.push_back({"gnp(1024,0.05)", gen::gnp(1024, 0.05, 43).graph, 43});
    suite.push_back({"K_64", gen::complete(64).graph, 0});
    suite.push_back({"grid32x32", gen::grid(32, 32).graph, 0});
    suite.push_back({"P_64", gen::path(64).graph, 0});
    suite.push_back({"C_64", gen::cycle(64).graph, 0});

    // ---- criteria 1, 2, 3, 4 (exact bound), 9 over the shared run set ------
    std::uint64_t c1_runs = 0, c1_stretch_viol = 0, c1_failures = 0;
    std::uint64_t c2_viol = 0, c3_bad = 0, c4_exact_bad = 0, c9_mismatch = 0;
    for (const NamedGraph& ng : suite) {
        for (std::uint32_t k : {1u, 2u}) {
            for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                const Params p = make_params(ng.g.node_count(), k, seed);
                GraphDescriptor desc;
                desc.model = ng.name;
                desc.seed = ng.gen_seed;
                const RunRecord rec = execute_run(ng.g, desc, p, "centralized");
                ++c1_runs;
                c1_stretch_viol += rec.verification.stretch_violations.size();
                c1_failures += rec.verification.failure_count;
                c2_viol += rec.verification.diameter_violations.size();
                if (!rec.verification.partition.ok) ++c3_bad;
                if (!rec.verification.counts.edge_exact_ok) ++c4_exact_bad;
                const RunRecord again = execute_run(ng.g, desc, p, "centralized");
                if (to_json(rec, false).dump() != to_json(again, false).dump()) ++c9_mismatch;
            }
        }
    }
    {
        std::ostringstream d;
        d << c1_runs << " runs, " << c1_stretch_viol << " stretch violations, " << c1_failures
          << " classification failures (bound 2*3^k-1)";
        report("C1-stretch", c1_stretch_viol == 0 && c1_failures == 0, d.str());
    }
    {
        std::ostringstream d;
        d << c2_viol << " cluster diameter violations across all levels (bound 3^j-1, exact BFS)";
        report("C2-diameter", c2_viol == 0, d.str());
    }
    {
        std::ostringstream d;
        d << c3_bad << " runs with an invalid final partition";
        report("C3-partition", c3_bad == 0, d.str());
    }

    // ---- criterion 4: exact budget bound + the 10x trend band --------------
    double trend_min_ratio = 1e300, trend_max_ratio = 0;
    for (std::uint64_t n : {512ull, 1024ull, 2048ull}) {
        const MultiGraph g = gen::gnp(static_cast<NodeId>(n), 0.2, 1000 + n).graph;
        for (std::uint64_t seed : {1ull, 2ull}) {
            const Params p = make_params(g.node_count(), 1, seed);
            const SamplerOutput out = run_sampler(g, p);
            const CountsReport counts = check_counts(out.result, p, Counters{});
            if (!counts.edge_exact_ok) ++c4_exact_bad;
            trend_min_ratio = std::min(trend_min_ratio, counts.paper_ratio);
            trend_max_ratio = std::max(trend_max_ratio, counts.paper_ratio);
        }
    }

    // ---- criteria 5, 6, 10: distributed runs --------------------------------
    std::uint64_t c5_bad = 0, c6_bad = 0, c10_bad = 0, dist_runs = 0;
    {
        std::vector<const NamedGraph*> cross = {&suite[0], &suite[2], &suite[5]};
        for (const NamedGraph* ng : cross) {
            for (std::uint32_t k : {1u, 2u}) {
                for (std::uint64_t seed : {1ull, 2ull}) {
                    const Params p = make_params(ng->g.node_count(), k, seed);
                    const DistributedOutput out = run_distributed_sampler(ng->g, p);
                    ++dist_runs;
                    const CountsReport counts = check_counts(out.result, p, out.counters);
                    if (!counts.round_ok) ++c5_bad;
                    if (!counts.message_ok) ++c6_bad;
                    if (!counts.edge_exact_ok) ++c4_exact_bad;
                    // criterion 10: both modes pass criteria 1-3 on the same inputs
                    const VerificationReport dv =
                        verify_run(ng->g, out.result, out.assignment, p, out.counters);
                    const SamplerOutput cent = run_sampler(ng->g, p);
                    const VerificationReport cv =
                        verify_run(ng->g, cent.result, cent.assignment, p, Counters{});
                    const bool both = dv.stretch_violations.empty() &&
                                      dv.diameter_violations.empty() && dv.partition.ok &&
                                      cv.stretch_violations.empty() &&
                                      cv.diameter_violations.empty() && cv.partition.ok &&
                                      out.result.failures.empty() && cent.result.failures.empty();
                    if (!both) ++c10_bad;
                }
            }
        }
    }
    // pinning run included in the round-bound check
    {
        const MultiGraph g = gen::complete(16).graph;
        Params p;
        p.n = 16;
        p.k = 1;
        p.h = 4;
        p.c = 4.0;
        p.seed = 7;
        const DistributedOutput out = run_distributed_sampler(g, p);
        ++dist_runs;
        if (out.counters.rounds_elapsed > kRoundConstant * pow3(p.k) * p.h) ++c5_bad;
        if (out.counters.rounds_elapsed != 53) ++c5_bad; // frozen, 0% tolerance
    }

    // criterion 6 trend: budget-scaled complete graphs, messages/m decreasing
    std::vector<double> trend;
    {
        for (std::uint64_t n : {512ull, 1024ull, 2048ull}) {
            const MultiGraph g = gen::complete(static_cast<NodeId>(n)).graph;
            Params p = make_params(n, 1, 5);
            const double log_n = p.log2_n();
            p.budget_scale = 4.0 / (p.c * p.c * log_n * log_n * log_n);
            const DistributedOutput out = run_distributed_sampler(g, p);
            ++dist_runs;
            const CountsReport counts = check_counts(out.result, p, out.counters);
            if (!counts.round_ok) ++c5_bad;
            if (!counts.message_ok) ++c6_bad;
            if (!counts.edge_exact_ok) ++c4_exact_bad;
            trend.push_back(static_cast<double>(out.counters.total_messages) /
                            static_cast<double>(g.edge_count()));
        }
    }
    {
        const double band = trend_max_ratio / trend_min_ratio;
        std::ostringstream d;
        d << c4_exact_bad << " runs over the exact budget bound"
          << "; |S|/(k h n^{4/3} log^3 n) band over n in {512,1024,2048}: " << band << "x (< 10x)";
        report("C4-edges", c4_exact_bad == 0 && band < 10.0, d.str());
    }
    {
        std::ostringstream d;
        d << dist_runs << " distributed runs, " << c5_bad
          << " over C_r*3^k*h (C_r=" << kRoundConstant << "), K_16 pin at 53 rounds";
        report("C5-rounds", c5_bad == 0, d.str());
    }
    {
        const bool decreasing = trend.size() == 3 && trend[0] > trend[1] && trend[1] > trend[2];
        std::ostringstream d;
        d << c6_bad << " over the pinned message bound; budget-scaled messages/m trend "
          << trend[0] << " > " << trend[1] << " > " << trend[2]
          << (decreasing ? " strictly decreasing" : " NOT decreasing");
        report("C6-messages", c6_bad == 0 && decreasing, d.str());
    }

    // ---- criterion 7: node-count concentration ------------------------------
    {
        const MultiGraph g = gen::gnp(2048, 0.2, 77).graph;
        std::uint64_t within = 0;
        std::ostringstream soft;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Params p = make_params(g.node_count(), 2, seed);
            const SamplerOutput out = run_sampler(g, p);
            const CountsReport counts = check_counts(out.result, p, Counters{});
            if (counts.node_bounds.at(0).within) ++within;
            if (seed == 1) {
                for (const NodeBoundCheck& nb : counts.node_bounds)
                    if (!nb.hard)
                        soft << " level " << nb.level << " soft: n_j=" << nb.n_j << " in ["
                             << nb.lower << "," << nb.upper << "]=" << (nb.within ? "yes" : "no");
            }
        }
        std::ostringstream d;
        d << "n_1 within [n p_0/2, 3 n p_0/2] in " << within << "/20 runs (need >= 19);"
          << soft.str();
        report("C7-counts", within >= 19, d.str());
    }

    // ---- criterion 8: t-local broadcast completeness ------------------------
    {
        const MultiGraph g = gen::gnp(512, 0.1, 99).graph;
        std::uint64_t misses = 0, round_mismatch = 0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const Params p = make_params(g.node_count(), 1, seed);
            const SamplerOutput out = run_sampler(g, p);
            for (std::uint32_t t : {1u, 2u, 3u}) {
                BroadcastInstance inst;
                inst.t = t;
                inst.alpha = 5;
                inst.spanner_edges = out.result.edges;
                const BroadcastResult res = t_local_broadcast(g, inst);
                misses += completeness_misses(g, t, res.received).size();
                if (res.counters.rounds_elapsed != 5ull * t) ++round_mismatch;
            }
        }
        std::ostringstream d;
        d << "5 seeds x t in {1,2,3}, alpha=5: " << misses << " missed deliveries, "
          << round_mismatch << " round-count mismatches (= alpha*t)";
        report("C8-broadcast", misses == 0 && round_mismatch == 0, d.str());
    }

    // ---- criterion 9: determinism -------------------------------------------
    {
        std::ostringstream d;
        d << c9_mismatch << " of " << c1_runs << " repeated runs differed byte-for-byte";
        report("C9-determinism", c9_mismatch == 0, d.str());
    }

    // ---- criterion 10: centralized vs distributed cross-check ---------------
    {
        std::ostringstream d;
        d << c10_bad << " cross-mode configurations where either mode failed criteria 1-3";
        report("C10-crossmode", c10_bad == 0, d.str());
    }

    // ---- CLI smoke (build glue, informational but must pass) ----------------
    {
#ifdef LOCSPAN_CLI_PATH
        const std::string cli = LOCSPAN_CLI_PATH;
        const std::string dir = "/tmp/locspan_acceptance";
        int rc0 = std::system(("mkdir -p " + dir).c_str());
        int rc1 = std::system((cli + " gen --model gnp --n 64 --p 0.3 --seed 9 --out " + dir +
                               "/g.txt").c_str());
        int rc2 = std::system((cli + " run --graph " + dir + "/g.txt --k 1 --h 6 --c 4 --seed 1 " +
                               "--mode distributed --out " + dir + "/rec.json").c_str());
        int rc3 = std::system((cli + " broadcast --graph " + dir + "/g.txt --spanner " + dir +
                               "/rec.json --t 2 --alpha auto --out " + dir + "/bc.json").c_str());
        int rc4 = std::system((cli + " sweep --model complete --n 16,32 --k 1 --h 4 --seeds 1,2 " +
                               "--out " + dir + "/sweep.csv").c_str());
        std::size_t rows = 0;
        {
            std::ifstream in(dir + "/sweep.csv");
            std::string line;
            while (std::getline(in, line))
                if (!line.empty()) ++rows;
        }
        const bool ok = rc0 == 0 && rc1 == 0 && rc2 == 0 && rc3 == 0 && rc4 == 0 && rows == 5;
        std::ostringstream d;
        d << "gen/run/broadcast/sweep exit codes " << rc1 << "/" << rc2 << "/" << rc3 << "/" << rc4
          << ", sweep rows " << rows - (rows > 0 ? 1 : 0) << " (2 n x 2 seeds = 4)";
        report("CLI-smoke", ok, d.str());
#endif
    }

    return g_all_pass ? 0 : 1;
}
