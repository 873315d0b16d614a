#include <doctest.h>

#include <algorithm>
#include <set>

#include "halin/generators.hpp"
#include "halin/instance_io.hpp"
#include "halin/oracle.hpp"
#include "helpers.hpp"

using namespace halin;
using namespace halin::testing;

namespace {

// Independent DPLL-style satisfiability check.
bool dpll(const CnfFormula& f, std::vector<int>& assign) {
    // find a unit/unassigned variable via the first unsatisfied clause
    for (const auto& cl : f.clauses) {
        bool sat = false, open = false;
        for (int lit : cl) {
            int v = std::abs(lit);
            if (assign[v] == 0)
                open = true;
            else if ((lit > 0) == (assign[v] > 0))
                sat = true;
        }
        if (!sat && !open) return false;
    }
    int var = 0;
    for (int v = 1; v <= f.variable_count && !var; ++v)
        if (assign[v] == 0) var = v;
    if (!var) {
        Assignment a;
        a.value.assign(f.variable_count + 1, false);
        for (int v = 1; v <= f.variable_count; ++v) a.value[v] = assign[v] > 0;
        return a.satisfies(f);
    }
    for (int val : {1, -1}) {
        assign[var] = val;
        if (dpll(f, assign)) return true;
    }
    assign[var] = 0;
    return false;
}

bool dpll_sat(const CnfFormula& f) {
    std::vector<int> assign(f.variable_count + 1, 0);
    return dpll(f, assign);
}

CnfFormula random_cnf(int t, int h, Rng& rng) {
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
}

}  // namespace

TEST_CASE("gen_wheel") {
    SUBCASE("r = 3 is K4-shaped") {
        Instance inst = gen_wheel(3, 1);
        CHECK(inst.graph.num_nodes() == 4);
        CHECK(is_wheel(inst.graph));
    }
    SUBCASE("seeded determinism") {
        InstanceFile a{1, 3, gen_wheel(8, 1)};
        InstanceFile b{1, 3, gen_wheel(8, 1)};
        CHECK(instance_to_json(a) == instance_to_json(b));
        InstanceFile c{1, 3, gen_wheel(8, 2)};
        CHECK(instance_to_json(a) != instance_to_json(c));
    }
    SUBCASE("too small") { CHECK_THROWS_AS(gen_wheel(2, 1), HalinError); }
}

TEST_CASE("gen_random_halin") {
    SUBCASE("single internal node is a wheel") {
        Instance inst = gen_random_halin(1, 5, 3);
        CHECK(is_wheel(inst.graph));
        CHECK(inst.graph.num_nodes() >= 4);
    }
    SUBCASE("internal = 2, fanout = 2 is the prism shape") {
        Instance inst = gen_random_halin(2, 2, 9);
        CHECK(inst.graph.num_nodes() == 6);
        CHECK(inst.graph.num_internal() == 2);
        auto fans = find_fans(inst.graph);
        CHECK(fans.size() == 2);
        for (const auto& f : fans) CHECK(f.r() == 2);
    }
    SUBCASE("every generated instance validates with two fans or more") {
        for (uint64_t seed = 1; seed <= 25; ++seed) {
            Instance inst = gen_random_halin(5, 4, seed * 7);
            inst.graph.validate();
            CHECK(find_fans(inst.graph).size() >= 2);
        }
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(gen_random_halin(0, 3, 1), HalinError);
        CHECK_THROWS_AS(gen_random_halin(2, 1, 1), HalinError);
    }
}

TEST_CASE("DIMACS parsing") {
    CnfFormula f = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
    CHECK(f.variable_count == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.literal(1) == 1);
    CHECK(f.literal(5) == 2);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 -2 0\n"), HalinError);  // 2-literal clause
    CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), HalinError);            // missing header
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 2 3 0\n"), HalinError); // literal out of range
}

TEST_CASE("sat_brute basics") {
    CnfFormula sat = parse_dimacs("p cnf 1 1\n1 1 1 0\n");
    CHECK(sat_brute(sat));
    CnfFormula unsat = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    CHECK(!sat_brute(unsat));
    CnfFormula big;
    big.variable_count = 30;
    CHECK_THROWS_AS(sat_brute(big), HalinError);
}

TEST_CASE("sat_brute agrees with a DPLL check") {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        CnfFormula f = random_cnf(4, 3, rng);
        CHECK(sat_brute(f) == dpll_sat(f));
    }
}

TEST_CASE("reduction structure") {
    CnfFormula f = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
    ReductionOutput red = sat_to_rqtsp(f);
    CHECK(red.instance.graph.num_nodes() == 10);  // 7h + 3
    red.instance.graph.validate();
    CHECK(red.threshold == 0);
    CHECK(red.gadgets.size() == 1);
    CHECK(red.literal_edges.size() == 3);
    // all costs binary, no linear costs
    for (EdgeId e = 0; e < red.instance.graph.edge_capacity(); ++e)
        CHECK(red.instance.costs.linear(e) == 0);
    for (const auto& [key, q] : red.instance.costs.quad_all()) CHECK((q == 0 || q == 1));

    CnfFormula f4 = parse_dimacs("p cnf 4 4\n1 2 3 0\n-1 2 4 0\n-2 -3 -4 0\n1 -2 4 0\n");
    ReductionOutput red4 = sat_to_rqtsp(f4);
    CHECK(red4.instance.graph.num_nodes() == 31);  // 7*4 + 3
    red4.instance.graph.validate();
}

TEST_CASE("reduction correctness on hand-picked formulas") {
    SUBCASE("single satisfiable clause has a zero-cost tour") {
        CnfFormula f = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
        ReductionOutput red = sat_to_rqtsp(f);
        Solution s = brute_solve(red.instance.graph, red.instance.costs, ObjectiveKind::QTSP);
        CHECK(s.value.internal == 0);
        Assignment a = decode_tour_to_assignment(red, s.tour);
        CHECK(a.satisfies(f));
    }
    SUBCASE("x and not-x is infeasible at cost zero") {
        CnfFormula f = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
        ReductionOutput red = sat_to_rqtsp(f);
        CHECK(red.instance.graph.num_nodes() == 17);
        Solution s = brute_solve(red.instance.graph, red.instance.costs, ObjectiveKind::QTSP);
        CHECK(s.value.internal > 0);
    }
}

TEST_CASE("reduction soundness and completeness at desk scale") {
    Rng rng(77);
    int zero_cost_seen = 0;
    for (int trial = 0; trial < 12; ++trial) {
        CnfFormula f = random_cnf(3, 2, rng);
        ReductionOutput red = sat_to_rqtsp(f);
        Solution s = brute_solve(red.instance.graph, red.instance.costs, ObjectiveKind::QTSP);
        bool sat = sat_brute(f);
        INFO("trial ", trial);
        CHECK((s.value.internal == 0) == sat);
        if (sat) {
            Assignment a = decode_tour_to_assignment(red, s.tour);
            CHECK(a.satisfies(f));
            ++zero_cost_seen;
        }
    }
    CHECK(zero_cost_seen > 0);
}

TEST_CASE("every tour through x and y centre-traverses all gadgets") {
    CnfFormula f = parse_dimacs("p cnf 2 2\n1 2 1 0\n-1 2 2 0\n");
    ReductionOutput red = sat_to_rqtsp(f);
    const auto& h = red.instance.graph;
    EdgeId x = h.edge_between(red.v_x, red.w);
    EdgeId y = h.edge_between(red.v_y, red.w);
    int through = 0;
    for (const auto& tour : enumerate_hamilton_cycles(h, 24)) {
        auto edges = tour_edges(h, tour);
        std::set<EdgeId> used(edges.begin(), edges.end());
        if (!used.count(x) || !used.count(y)) continue;
        ++through;
        for (const auto& g : red.gadgets) {
            // centre-traversal: the centre's two tour edges are both spokes
            // inside the gadget (not the edge toward w)
            EdgeId kw = h.edge_between(g.centre, red.w);
            CHECK(!used.count(kw));
        }
    }
    CHECK(through > 0);
}

TEST_CASE("decoding rejects costly tours") {
    CnfFormula f = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
    ReductionOutput red = sat_to_rqtsp(f);
    Solution s = brute_solve(red.instance.graph, red.instance.costs, ObjectiveKind::QTSP);
    REQUIRE(s.value.internal > 0);
    CHECK_THROWS_AS(decode_tour_to_assignment(red, s.tour), HalinError);
}
