#include <chrono>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "halin/instance_io.hpp"
#include "halin/oracle.hpp"
#include "halin/solver.hpp"

using json = nlohmann::json;
using namespace halin;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

json report(const Solution& sol, int k, const std::string& solver, double elapsed_ms,
            bool timing) {
    json out;
    out["tour"] = sol.tour;
    out["value_external"] = sol.value.external();
    out["value_internal"] = sol.value.internal;
    out["k"] = k;
    out["solver"] = solver;
    if (timing) out["elapsed_ms"] = elapsed_ms;
    return out;
}

ObjectiveKind kind_of(int k) {
    switch (k) {
        case 1: return ObjectiveKind::TSP1;
        case 2: return ObjectiveKind::TSP2;
        default: return ObjectiveKind::TSP3;
    }
}

int run_solve(const std::string& input, int k, bool oracle, bool verify, int cap, bool timing) {
    InstanceFile f = load_instance(input);
    if (k == 0) k = f.k;
    auto t0 = std::chrono::steady_clock::now();
    if (oracle) {
        Solution sol = brute_solve(f.instance.graph, f.instance.costs, kind_of(k), cap);
        std::cout << report(sol, k, "oracle", ms_since(t0), timing).dump(2) << "\n";
        return 0;
    }
    Solution sol = solve(f.instance.graph, f.instance.costs, k);
    double elapsed = ms_since(t0);
    if (verify) {
        Solution ref = brute_solve(f.instance.graph, f.instance.costs, kind_of(k), cap);
        if (ref.value.internal != sol.value.internal) {
            std::cerr << "verification mismatch: dp=" << sol.value.internal
                      << " oracle=" << ref.value.internal << "\n";
            return 2;
        }
        Objective recomputed = tour_objective(f.instance.graph, sol.tour, f.instance.costs, k);
        if (recomputed.internal != sol.value.internal) {
            std::cerr << "verification mismatch: tour does not realize the value\n";
            return 2;
        }
    }
    std::cout << report(sol, k, "dp", elapsed, timing).dump(2) << "\n";
    return 0;
}

int run_generate(const std::string& type, int rim, int internal, int fanout, uint64_t seed,
                 Cost lo, Cost hi, int extra_pairs, int k, const std::string& out_path) {
    Instance inst;
    if (type == "wheel") {
        inst = gen_wheel(rim, seed, lo, hi);
    } else if (type == "random") {
        inst = gen_random_halin(internal, fanout, seed, lo, hi, extra_pairs);
    } else {
        fail(Errc::InvalidParams, "--type must be wheel or random");
    }
    InstanceFile f{1, k, std::move(inst)};
    std::string text = instance_to_json(f);
    if (out_path.empty() || out_path == "-")
        std::cout << text;
    else
        write_file(out_path, text);
    return 0;
}

int run_reduce(const std::string& cnf_path, const std::string& out_path,
               std::string sidecar_path) {
    CnfFormula formula = parse_dimacs(read_file(cnf_path));
    ReductionOutput red = sat_to_rqtsp(formula);
    if (sidecar_path.empty()) sidecar_path = out_path + ".sidecar.json";
    InstanceFile f{1, 3, red.instance};
    write_file(out_path, instance_to_json(f));
    write_file(sidecar_path, sidecar_to_json(red));
    json summary;
    summary["nodes"] = red.instance.graph.num_nodes();
    summary["clauses"] = formula.clauses.size();
    summary["variables"] = formula.variable_count;
    summary["theta"] = red.threshold;
    summary["instance"] = out_path;
    summary["sidecar"] = sidecar_path;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int run_verify(const std::string& input, const std::string& tour_path,
               const std::string& sidecar_path) {
    InstanceFile f = load_instance(input);
    std::vector<NodeId> tour = parse_tour(read_file(tour_path));
    json out;
    for (int k = 1; k <= 3; ++k) {
        Objective o = tour_objective(f.instance.graph, tour, f.instance.costs, k);
        out["tsp" + std::to_string(k)] = {{"internal", o.internal}, {"external", o.external()}};
    }
    Objective q = qtsp_objective(f.instance.graph, tour, f.instance.costs);
    out["qtsp"] = {{"internal", q.internal}, {"external", q.external()}};
    out["consecutive"] = check_consecutiveness(f.instance.graph, tour);
    if (!sidecar_path.empty()) {
        SidecarFile sc = sidecar_from_json(read_file(sidecar_path));
        ReductionOutput red = bind_sidecar(sc, f.instance);
        if (q.internal == 0) {
            Assignment a = decode_tour_to_assignment(red, tour);
            json vals = json::array();
            for (int v = 1; v < static_cast<int>(a.value.size()); ++v)
                vals.push_back(static_cast<bool>(a.value[v]));
            out["assignment"] = std::move(vals);
        } else {
            out["assignment"] = nullptr;
        }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_bench(const std::string& type, const std::vector<int>& sizes, int fanout, uint64_t seed,
              int k) {
    std::cout << "n,elapsed_ms,value\n";
    for (int s : sizes) {
        Instance inst = type == "wheel" ? gen_wheel(s, seed)
                                        : gen_random_halin(s, fanout, seed);
        auto t0 = std::chrono::steady_clock::now();
        Solution sol = solve(inst.graph, inst.costs, k);
        double ms = ms_since(t0);
        std::cout << inst.graph.num_nodes() << "," << ms << "," << sol.value.external() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact k-neighbour TSP solver for Halin graphs"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
    std::string input;
    int k = 0;
    bool oracle = false, verify = false, timing = false;
    int cap = CycleEnumerator::kDefaultCap;
    solve_cmd->add_option("input", input, "instance file")->required();
    solve_cmd->add_option("-k,--k", k, "neighbourhood size (default: the file's k)");
    solve_cmd->add_flag("--oracle", oracle, "solve by exhaustive enumeration instead");
    solve_cmd->add_flag("--verify", verify, "run both solvers and fail on mismatch");
    solve_cmd->add_flag("--timing", timing, "include elapsed_ms in the report");
    solve_cmd->add_option("--cap", cap, "node cap for enumeration");

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Generate a random instance");
    std::string gtype = "random", gout;
    int rim = 6, internal = 3, fanout = 4, extra_pairs = 0, gk = 3;
    uint64_t seed = 1;
    Cost lo = 0, hi = 9;
    gen_cmd->add_option("--type", gtype, "wheel or random")->required();
    gen_cmd->add_option("--rim", rim, "rim size (wheel)");
    gen_cmd->add_option("--internal", internal, "internal node count (random)");
    gen_cmd->add_option("--fanout", fanout, "max leaves per internal node (random)");
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--cost-lo", lo, "minimum cost");
    gen_cmd->add_option("--cost-hi", hi, "maximum cost");
    gen_cmd->add_option("--extra-pairs", extra_pairs, "extra arbitrary quadratic pairs");
    gen_cmd->add_option("-k,--k", gk, "default k stored in the file");
    gen_cmd->add_option("--out", gout, "output path (default: stdout)");

    // reduce
    auto* red_cmd = app.add_subcommand("reduce", "Compile a 3-CNF into an RQTSP instance");
    std::string cnf, rout, sidecar;
    red_cmd->add_option("--cnf", cnf, "DIMACS CNF input")->required();
    red_cmd->add_option("--out", rout, "instance output path")->required();
    red_cmd->add_option("--sidecar", sidecar, "sidecar path (default: <out>.sidecar.json)");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "Evaluate a user-supplied tour");
    std::string vinput, vtour, vsidecar;
    ver_cmd->add_option("--input", vinput, "instance file")->required();
    ver_cmd->add_option("--tour", vtour, "tour file")->required();
    ver_cmd->add_option("--sidecar", vsidecar, "reduction sidecar for assignment decoding");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time the solver; emits CSV rows");
    std::string btype = "random";
    std::vector<int> sizes;
    int bfanout = 6, bk = 3;
    uint64_t bseed = 1;
    bench_cmd->add_option("--type", btype, "wheel or random");
    bench_cmd->add_option("--sizes", sizes, "rim sizes (wheel) or internal counts (random)")
        ->required();
    bench_cmd->add_option("--fanout", bfanout, "max fanout (random)");
    bench_cmd->add_option("--seed", bseed, "random seed");
    bench_cmd->add_option("-k,--k", bk, "neighbourhood size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve_cmd) return run_solve(input, k, oracle, verify, cap, timing);
        if (*gen_cmd) return run_generate(gtype, rim, internal, fanout, seed, lo, hi, extra_pairs,
                                          gk, gout);
        if (*red_cmd) return run_reduce(cnf, rout, sidecar);
        if (*ver_cmd) return run_verify(vinput, vtour, vsidecar);
        if (*bench_cmd) return run_bench(btype, sizes, bfanout, bseed, bk);
    } catch (const HalinError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
