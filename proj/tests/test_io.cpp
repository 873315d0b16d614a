#include <doctest.h>

#include "halin/instance_io.hpp"
#include "helpers.hpp"

using namespace halin;
using namespace halin::testing;

TEST_CASE("instance files round-trip byte-identically") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        InstanceFile f{1, 3, gen_random_halin(3, 4, seed)};
        std::string text = instance_to_json(f);
        InstanceFile parsed = instance_from_json(text);
        CHECK(instance_to_json(parsed) == text);
        CHECK(parsed.k == f.k);
        CHECK(parsed.instance.graph.num_nodes() == f.instance.graph.num_nodes());
    }
}

TEST_CASE("canonical keys") {
    CHECK(edge_key(5, 2) == "2,5");
    CHECK(pair_key("2,5", "1,3") == "1,3|2,5");
    CHECK(pair_key("1,3", "2,5") == "1,3|2,5");
}

TEST_CASE("cost fidelity through serialization") {
    InstanceFile f{1, 2, gen_random_halin(2, 3, 42)};
    InstanceFile parsed = instance_from_json(instance_to_json(f));
    const auto& h = f.instance.graph;
    for (EdgeId e = 0; e < h.edge_capacity(); ++e)
        CHECK(parsed.instance.costs.linear(e) == f.instance.costs.linear(e));
    for (const auto& [key, q] : f.instance.costs.quad_all()) {
        EdgeId a = static_cast<EdgeId>(key >> 32), b = static_cast<EdgeId>(key & 0xffffffff);
        CHECK(parsed.instance.costs.quad(a, b) == q);
    }
}

TEST_CASE("malformed instance files") {
    CHECK_THROWS_AS(instance_from_json("{"), HalinError);
    CHECK_THROWS_AS(instance_from_json("{\"version\":1}"), HalinError);
    // cycle mismatch surfaces the structural error
    try {
        instance_from_json(R"({"version":1,"k":3,
            "tree_edges":[[4,0],[4,1],[4,5],[5,2],[5,3]],
            "cycle":[0,1,2],
            "linear_costs":{},"quadratic_costs":{}})");
        CHECK(false);
    } catch (const HalinError& e) {
        CHECK(e.code() == Errc::CycleMismatch);
    }
    // unknown edge in costs
    try {
        instance_from_json(R"({"version":1,"k":3,
            "tree_edges":[[0,1],[0,2],[0,3]],
            "cycle":[1,2,3],
            "linear_costs":{"5,7":1},"quadratic_costs":{}})");
        CHECK(false);
    } catch (const HalinError& e) {
        CHECK(e.code() == Errc::ParseError);
    }
    // negative costs
    CHECK_THROWS_AS(instance_from_json(R"({"version":1,"k":3,
        "tree_edges":[[0,1],[0,2],[0,3]],
        "cycle":[1,2,3],
        "linear_costs":{"0,1":-2},"quadratic_costs":{}})"),
                    HalinError);
}

TEST_CASE("sidecar round-trip and binding") {
    CnfFormula f = parse_dimacs("p cnf 2 2\n1 2 1 0\n-1 -2 -2 0\n");
    ReductionOutput red = sat_to_rqtsp(f);
    std::string sc_text = sidecar_to_json(red);
    SidecarFile sc = sidecar_from_json(sc_text);
    CHECK(sc.threshold == 0);
    CHECK(sc.variable_count == 2);
    CHECK(sc.gadgets.size() == 2);
    CHECK(sc.literal_edges.size() == 6);

    InstanceFile inst_file{1, 3, red.instance};
    InstanceFile parsed = instance_from_json(instance_to_json(inst_file));
    ReductionOutput rebound = bind_sidecar(sc, parsed.instance);
    for (size_t i = 0; i < red.literal_edges.size(); ++i) {
        CHECK(rebound.literal_edges[i].mu == red.literal_edges[i].mu);
        CHECK(rebound.literal_edges[i].mu_prime == red.literal_edges[i].mu_prime);
        CHECK(rebound.literal_edges[i].literal == red.literal_edges[i].literal);
    }
}

TEST_CASE("tour files") {
    CHECK(parse_tour("0 1 2\n3") == std::vector<NodeId>{0, 1, 2, 3});
    CHECK(tour_to_text({5, 1, 2}) == "5 1 2\n");
    CHECK_THROWS_AS(parse_tour("1 two 3"), HalinError);
    CHECK_THROWS_AS(parse_tour("  "), HalinError);
}
