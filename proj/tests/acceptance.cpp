// Acceptance suite: runs every shipping criterion and prints one PASS/FAIL
// line each.  The CLI binary path is taken from argv[1] for the determinism
// checks.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "halin/generators.hpp"
#include "halin/instance_io.hpp"
#include "halin/oracle.hpp"
#include "halin/solver.hpp"

using namespace halin;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("%s criterion-%d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
}

ObjectiveKind kind_of(int k) {
    return k == 1 ? ObjectiveKind::TSP1 : k == 2 ? ObjectiveKind::TSP2 : ObjectiveKind::TSP3;
}

std::vector<Instance> corpus;  // criterion-1 instances, reused by 2-5

void criterion_1_to_5() {
    // 1: oracle equivalence on >= 200 seeded instances, 6 <= n <= 14.
    uint64_t seed = 0;
    while (corpus.size() < 200) {
        ++seed;
        int internal = 2 + static_cast<int>(seed % 3);
        Instance inst = gen_random_halin(internal, 4, seed);
        int n = inst.graph.num_nodes();
        if (n < 6 || n > 14) continue;
        corpus.push_back(std::move(inst));
    }

    bool ok1 = true, ok2 = true, ok3 = true, ok4 = true, ok5 = true;
    std::string d1, d2, d3, d4, d5;
    int cycles_checked = 0;
    for (size_t i = 0; i < corpus.size() && ok1; ++i) {
        const Instance& inst = corpus[i];
        for (int k = 1; k <= 3; ++k) {
            Solution dp = solve(inst.graph, inst.costs, k);
            Solution ref = brute_solve(inst.graph, inst.costs, kind_of(k));
            if (dp.value.internal != ref.value.internal) {
                ok1 = false;
                d1 = "instance " + std::to_string(i) + " k=" + std::to_string(k) +
                     " dp=" + std::to_string(dp.value.internal) +
                     " brute=" + std::to_string(ref.value.internal);
                break;
            }
            if (tour_objective(inst.graph, dp.tour, inst.costs, k).internal != dp.value.internal) {
                ok1 = false;
                d1 = "instance " + std::to_string(i) + " tour does not realize the value";
                break;
            }
        }
    }
    report(1, "oracle equivalence on 200 instances, k in {1,2,3}, exact", ok1, d1);

    for (size_t i = 0; i < corpus.size(); ++i) {
        const Instance& inst = corpus[i];
        auto cycles = enumerate_hamilton_cycles(inst.graph);
        for (const auto& tour : cycles) {
            ++cycles_checked;
            if (inst.graph.num_nodes() >= 7 && ok2) {
                if (stsp3_objective(inst.graph, tour, inst.costs).internal !=
                    tour_objective(inst.graph, tour, inst.costs, 3).internal) {
                    ok2 = false;
                    d2 = "instance " + std::to_string(i);
                }
            }
            if (ok3 && !check_consecutiveness(inst.graph, tour)) {
                ok3 = false;
                d3 = "instance " + std::to_string(i);
            }
        }
    }
    report(2, "triple-sum identity with the k=3 objective over every cycle (n >= 7)", ok2, d2);
    report(3, "consecutive-edges property over " + std::to_string(cycles_checked) + " cycles",
           ok3, d3);

    for (size_t i = 0; i < corpus.size() && ok4; ++i) {
        HalinEmbedding h = corpus[i].graph;
        int internal = h.num_internal();
        int steps = 0;
        while (!is_wheel(h)) {
            auto fans = find_fans(h);
            if (fans.size() < 2) {
                ok4 = false;
                d4 = "instance " + std::to_string(i) + " has fewer than two fans";
                break;
            }
            auto [g, rec] = contract_fan(h, fans[0]);
            try {
                g.validate();
            } catch (const HalinError& e) {
                ok4 = false;
                d4 = std::string("contraction invalid: ") + e.what();
                break;
            }
            h = std::move(g);
            ++steps;
        }
        if (ok4 && steps != internal - 1) {
            ok4 = false;
            d4 = "instance " + std::to_string(i) + " contracted in " + std::to_string(steps) +
                 " steps";
        }
    }
    report(4, "two fans per non-wheel, valid contractions, termination in internal-1 steps", ok4,
           d4);

    // Criterion 5 as stated: no edge in more than 6 candidate paths, per
    // instance.  This is not attainable: the stated figure holds per tour,
    // not per instance (see the supplementary checks below), and internal
    // tree edges reach 12 paths.  The check is kept faithful and reported
    // honestly.
    int worst5 = 0;
    bool sup_tour = true, sup_struct = true;
    for (size_t i = 0; i < corpus.size(); ++i) {
        auto paths = enumerate_candidate_paths(corpus[i].graph, 3);
        std::map<EdgeId, int> per_edge;
        for (const auto& p : paths)
            for (EdgeId e : p.edges) ++per_edge[e];
        for (auto [e, cnt] : per_edge) {
            if (cnt > worst5) {
                worst5 = cnt;
                d5 = "edge " + std::to_string(e) + " of instance " + std::to_string(i) + " lies in " +
                     std::to_string(cnt) + " candidate paths";
            }
            if (cnt > 12) sup_struct = false;
        }
        for (const auto& tour : enumerate_hamilton_cycles(corpus[i].graph)) {
            auto es = tour_edges(corpus[i].graph, tour);
            std::map<EdgeId, int> windows;
            const int n = static_cast<int>(es.size());
            for (int w = 0; w < n; ++w)
                for (int off = 0; off < 3; ++off) ++windows[es[(w + off) % n]];
            for (auto [e, cnt] : windows)
                if (cnt > 6) sup_tour = false;
        }
    }
    ok5 = worst5 <= 6;
    report(5, "k=3 candidate-path bound as stated (<= 6 per edge per instance)", ok5, d5);
    if (!ok5) {
        std::printf("  note: the 6-path figure is a per-tour bound; the structural bound is "
                    "k*2^(k-1) = 12.  Supplementary checks:\n");
        std::printf("  %s supplementary-5a: per-tour windows containing each edge <= 6\n",
                    sup_tour ? "PASS" : "FAIL");
        std::printf("  %s supplementary-5b: per-instance candidate paths per edge <= 12\n",
                    sup_struct ? "PASS" : "FAIL");
        if (!sup_tour || !sup_struct) ++failures;
    }
}

void criterion_6() {
    bool ok = true;
    std::string detail;
    Rng rng(4242);
    auto random_cnf = [&](int t, int h) {
        CnfFormula f;
        f.variable_count = t;
        for (int c = 0; c < h; ++c) {
            std::array<int, 3> cl;
            for (int i = 0; i < 3; ++i) {
                int var = static_cast<int>(rng.range(1, t));
                cl[i] = rng.range(0, 1) ? var : -var;
            }
            f.clauses.push_back(cl);
        }
        return f;
    };

    std::vector<CnfFormula> formulas;
    for (int trial = 0; trial < 60; ++trial)
        formulas.push_back(random_cnf(1 + static_cast<int>(rng.range(0, 3)),
                                      1 + static_cast<int>(rng.range(0, 2))));
    {
        CnfFormula unsat;
        unsat.variable_count = 1;
        unsat.clauses.push_back({1, 1, 1});
        unsat.clauses.push_back({-1, -1, -1});
        formulas.push_back(unsat);
    }

    int satisfiable = 0;
    for (size_t i = 0; i < formulas.size() && ok; ++i) {
        const CnfFormula& f = formulas[i];
        ReductionOutput red = sat_to_rqtsp(f);
        bool want_sat = sat_brute(f);
        Solution s = brute_solve(red.instance.graph, red.instance.costs, ObjectiveKind::QTSP, 24);
        if ((s.value.internal == 0) != want_sat) {
            ok = false;
            detail = "formula " + std::to_string(i) + " sat=" + std::to_string(want_sat) +
                     " min=" + std::to_string(s.value.internal);
            break;
        }
        if (want_sat) {
            ++satisfiable;
            // every zero-cost tour decodes to a satisfying assignment
            for (const auto& tour : enumerate_hamilton_cycles(red.instance.graph, 24)) {
                if (qtsp_objective(red.instance.graph, tour, red.instance.costs).internal != 0)
                    continue;
                Assignment a = decode_tour_to_assignment(red, tour);
                if (!a.satisfies(f)) {
                    ok = false;
                    detail = "formula " + std::to_string(i) + " decoded assignment fails";
                    break;
                }
            }
        }
    }
    report(6, "reduction soundness and completeness over " + std::to_string(formulas.size()) +
                  " formulas (" + std::to_string(satisfiable) + " satisfiable)",
           ok, detail);
}

void criterion_7() {
    auto timed_solve = [](const Instance& inst) {
        auto t0 = std::chrono::steady_clock::now();
        Solution s = solve(inst.graph, inst.costs, 3);
        double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return std::make_pair(ms, s.value.external());
    };

    // Random Halin graphs around the two sizes (exact node counts depend on
    // the seed; the ratio bound scales with the measured sizes).
    Instance small = gen_random_halin(2400, 6, 1);
    Instance large = gen_random_halin(24000, 6, 1);
    auto [ms_small, v_small] = timed_solve(small);
    auto [ms_large, v_large] = timed_solve(large);
    (void)v_small;
    (void)v_large;
    double size_ratio =
        static_cast<double>(large.graph.num_nodes()) / small.graph.num_nodes();
    double allowed = 1.3 * size_ratio;
    bool ok_rand = ms_large / ms_small <= allowed && ms_large < 5000.0;

    // Wheels hit the exact sizes and exercise the wheel procedure alone.
    Instance wsmall = gen_wheel(9999, 2);
    Instance wlarge = gen_wheel(99999, 2);
    auto [wms_small, wv1] = timed_solve(wsmall);
    auto [wms_large, wv2] = timed_solve(wlarge);
    (void)wv1;
    (void)wv2;
    bool ok_wheel = wms_large / std::max(wms_small, 0.1) <= 13.0 && wms_large < 5000.0;

    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(1);
    d << "random n=" << small.graph.num_nodes() << ": " << ms_small << " ms, n="
      << large.graph.num_nodes() << ": " << ms_large << " ms (ratio "
      << ms_large / ms_small << ", allowed " << allowed << "); wheel n=10^4: " << wms_small
      << " ms, n=10^5: " << wms_large << " ms";
    report(7, "linear-time scaling, k=3", ok_rand && ok_wheel, d.str());
}

std::string slurp(const fs::path& p) {
    FILE* f = std::fopen(p.string().c_str(), "rb");
    if (!f) return "<missing>";
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    std::fclose(f);
    return out;
}

void criterion_8(const std::string& cli) {
    bool ok = true;
    std::string detail;
    fs::path dir = fs::temp_directory_path() / "halin_acceptance";
    fs::create_directories(dir);
    auto run = [&](const std::string& args, const fs::path& out) {
        std::string cmd = cli + " " + args + " > " + out.string() + " 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
    };

    fs::path inst = dir / "inst.json";
    fs::path cnf = dir / "f.cnf";
    write_file(cnf.string(), "p cnf 3 2\n1 -2 3 0\n-1 2 3 0\n");

    struct Step {
        std::string name, args;
    };
    if (!run("generate --type random --internal 5 --seed 7 --out " + inst.string(),
             dir / "gen_setup.out")) {
        report(8, "determinism of subcommands", false, "setup failed");
        return;
    }
    fs::path tour = dir / "tour.txt";
    {
        InstanceFile f = load_instance(inst.string());
        Solution s = solve(f.instance.graph, f.instance.costs, 3);
        write_file(tour.string(), tour_to_text(s.tour));
    }
    std::vector<Step> steps = {
        {"generate", "generate --type random --internal 5 --seed 7"},
        {"generate-wheel", "generate --type wheel --rim 9 --seed 3"},
        {"solve", "solve " + inst.string() + " -k 3"},
        {"solve-verify", "solve " + inst.string() + " -k 2 --verify"},
        {"reduce", "reduce --cnf " + cnf.string() + " --out " + (dir / "red.json").string()},
        {"verify", "verify --input " + inst.string() + " --tour " + tour.string()},
    };
    for (const auto& s : steps) {
        fs::path a = dir / (s.name + ".a"), b = dir / (s.name + ".b");
        if (!run(s.args, a) || !run(s.args, b)) {
            ok = false;
            detail = s.name + " failed to run";
            break;
        }
        if (slurp(a) != slurp(b)) {
            ok = false;
            detail = s.name + " output differs between runs";
            break;
        }
    }
    report(8, "byte-identical reruns of solve/generate/reduce/verify", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "./halin_tsp";
    double t0 = now_ms();
    criterion_1_to_5();
    criterion_6();
    criterion_7();
    criterion_8(cli);
    std::printf("acceptance finished in %.1f s, %d failure(s)\n", (now_ms() - t0) / 1000.0,
                failures);
    return failures == 0 ? 0 : 1;
}
