#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halin/generators.hpp"
#include "halin/instance_io.hpp"
#include "halin/oracle.hpp"
#include "halin/solver.hpp"

namespace py = pybind11;
using namespace halin;

namespace {

using NodePair = std::pair<NodeId, NodeId>;
using LinearMap = std::map<NodePair, Cost>;
using QuadMap = std::map<std::pair<NodePair, NodePair>, Cost>;

struct BuiltInstance {
    HalinEmbedding graph;
    CostModel costs;
};

BuiltInstance build(const std::vector<NodePair>& tree_edges, const std::vector<NodeId>& cycle,
                    const LinearMap& linear, const QuadMap& quad) {
    BuiltInstance b{HalinEmbedding::build(tree_edges, cycle), {}};
    auto edge = [&](NodePair p) {
        EdgeId e = b.graph.edge_between(p.first, p.second);
        if (e == kNoEdge)
            fail(Errc::ParseError, "edge (" + std::to_string(p.first) + "," +
                                       std::to_string(p.second) + ") is not in the graph");
        return e;
    };
    for (const auto& [p, c] : linear) b.costs.set_linear(edge(p), c);
    for (const auto& [pq, q] : quad) b.costs.set_quad(edge(pq.first), edge(pq.second), q);
    return b;
}

py::dict solution_dict(const Solution& s) {
    py::dict d;
    d["tour"] = s.tour;
    d["value"] = s.value.external();
    d["value_internal"] = s.value.internal;
    return d;
}

py::dict instance_dict(const Instance& inst) {
    py::dict d;
    const auto& h = inst.graph;
    std::vector<NodePair> tree;
    for (EdgeId e = 0; e < h.edge_capacity(); ++e) {
        if (!h.edge_exists(e) || !h.is_tree_edge(e)) continue;
        auto [u, v] = h.endpoints(e);
        tree.push_back({std::min(u, v), std::max(u, v)});
    }
    d["tree_edges"] = tree;
    d["cycle"] = h.cycle();
    LinearMap lin;
    for (EdgeId e = 0; e < h.edge_capacity(); ++e) {
        if (!h.edge_exists(e)) continue;
        Cost c = inst.costs.linear(e);
        if (!c) continue;
        auto [u, v] = h.endpoints(e);
        lin[{std::min(u, v), std::max(u, v)}] = c;
    }
    d["linear_costs"] = lin;
    QuadMap quad;
    for (const auto& [key, q] : inst.costs.quad_all()) {
        if (!q) continue;
        EdgeId e = static_cast<EdgeId>(key >> 32), g = static_cast<EdgeId>(key & 0xffffffff);
        auto [u1, v1] = h.endpoints(e);
        auto [u2, v2] = h.endpoints(g);
        NodePair a{std::min(u1, v1), std::max(u1, v1)};
        NodePair b{std::min(u2, v2), std::max(u2, v2)};
        quad[{std::min(a, b), std::max(a, b)}] = q;
    }
    d["quadratic_costs"] = quad;
    return d;
}

}  // namespace

PYBIND11_MODULE(_halintsp, m) {
    m.doc() = "Exact k-neighbour TSP on Halin graphs";

    py::register_exception<HalinError>(m, "HalinError");

    m.def(
        "solve",
        [](const std::vector<NodePair>& tree, const std::vector<NodeId>& cycle,
           const LinearMap& linear, const QuadMap& quad, int k) {
            BuiltInstance b = build(tree, cycle, linear, quad);
            return solution_dict(solve(b.graph, b.costs, k));
        },
        py::arg("tree_edges"), py::arg("cycle"), py::arg("linear_costs") = LinearMap{},
        py::arg("quadratic_costs") = QuadMap{}, py::arg("k") = 3,
        "Exact TSP(k) tour and value via fan-contraction dynamic programming");

    m.def(
        "brute_solve",
        [](const std::vector<NodePair>& tree, const std::vector<NodeId>& cycle,
           const LinearMap& linear, const QuadMap& quad, int k, int cap) {
            BuiltInstance b = build(tree, cycle, linear, quad);
            ObjectiveKind kind = k == 0   ? ObjectiveKind::QTSP
                                 : k == 1 ? ObjectiveKind::TSP1
                                 : k == 2 ? ObjectiveKind::TSP2
                                          : ObjectiveKind::TSP3;
            return solution_dict(brute_solve(b.graph, b.costs, kind, cap));
        },
        py::arg("tree_edges"), py::arg("cycle"), py::arg("linear_costs") = LinearMap{},
        py::arg("quadratic_costs") = QuadMap{}, py::arg("k") = 3, py::arg("cap") = 20,
        "Exhaustive minimum (k = 0 selects the full quadratic objective)");

    m.def(
        "tour_objective",
        [](const std::vector<NodePair>& tree, const std::vector<NodeId>& cycle,
           const LinearMap& linear, const QuadMap& quad, const std::vector<NodeId>& tour,
           int k) {
            BuiltInstance b = build(tree, cycle, linear, quad);
            if (k == 0) return qtsp_objective(b.graph, tour, b.costs).external();
            return tour_objective(b.graph, tour, b.costs, k).external();
        },
        py::arg("tree_edges"), py::arg("cycle"), py::arg("linear_costs"),
        py::arg("quadratic_costs"), py::arg("tour"), py::arg("k") = 3);

    m.def(
        "validate",
        [](const std::vector<NodePair>& tree, const std::vector<NodeId>& cycle) {
            HalinEmbedding::build(tree, cycle).validate();
            return true;
        },
        py::arg("tree_edges"), py::arg("cycle"));

    m.def(
        "generate_wheel",
        [](int rim, uint64_t seed) { return instance_dict(gen_wheel(rim, seed)); },
        py::arg("rim"), py::arg("seed") = 1);

    m.def(
        "generate_random",
        [](int internal, int fanout, uint64_t seed) {
            return instance_dict(gen_random_halin(internal, fanout, seed));
        },
        py::arg("internal"), py::arg("fanout") = 4, py::arg("seed") = 1);

    m.def(
        "reduce_3sat",
        [](int variable_count, const std::vector<std::array<int, 3>>& clauses) {
            CnfFormula f;
            f.variable_count = variable_count;
            f.clauses = clauses;
            ReductionOutput red = sat_to_rqtsp(f);
            py::dict d = instance_dict(red.instance);
            d["theta"] = red.threshold;
            d["nodes"] = red.instance.graph.num_nodes();
            py::list lits;
            const auto& h = red.instance.graph;
            for (const auto& le : red.literal_edges) {
                py::dict l;
                l["literal_index"] = le.literal_index;
                l["literal"] = le.literal;
                auto [u1, v1] = h.endpoints(le.mu);
                auto [u2, v2] = h.endpoints(le.mu_prime);
                l["mu"] = std::make_pair(std::min(u1, v1), std::max(u1, v1));
                l["mu_prime"] = std::make_pair(std::min(u2, v2), std::max(u2, v2));
                lits.append(l);
            }
            d["literal_edges"] = lits;
            return d;
        },
        py::arg("variable_count"), py::arg("clauses"));

    m.def(
        "sat_brute",
        [](int variable_count, const std::vector<std::array<int, 3>>& clauses) {
            CnfFormula f;
            f.variable_count = variable_count;
            f.clauses = clauses;
            return sat_brute(f);
        },
        py::arg("variable_count"), py::arg("clauses"));
}
