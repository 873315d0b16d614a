#include <doctest.h>

#include <algorithm>
#include <set>

#include "halin/generators.hpp"
#include "halin/graph.hpp"
#include "helpers.hpp"

using namespace halin;
using namespace halin::testing;

TEST_CASE("K4 builds and is a wheel") {
    auto h = k4();
    CHECK(h.num_nodes() == 4);
    CHECK(h.num_internal() == 1);
    CHECK(is_wheel(h));
    CHECK(h.cycle() == std::vector<NodeId>{1, 2, 3});
    h.validate();  // idempotent
    h.validate();
}

TEST_CASE("degree-2 internal node is rejected") {
    CHECK_THROWS_AS(HalinEmbedding::build({{0, 1}, {1, 2}, {2, 3}}, {0, 3}), HalinError);
    try {
        HalinEmbedding::build({{0, 1}, {1, 2}, {2, 3}}, {0, 3});
    } catch (const HalinError& e) {
        CHECK(e.code() == Errc::Degree2Internal);
    }
}

TEST_CASE("malformed trees and cycles") {
    // wrong edge count
    CHECK_THROWS_AS(HalinEmbedding::build({{0, 1}, {0, 2}, {0, 3}, {1, 2}}, {1, 2, 3}),
                    HalinError);
    // disconnected
    try {
        HalinEmbedding::build({{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}}, {1, 2, 3, 5, 6});
        CHECK(false);
    } catch (const HalinError& e) {
        CHECK(e.code() == Errc::NotATree);
    }
    // cycle misses a leaf
    try {
        HalinEmbedding::build({{4, 0}, {4, 1}, {4, 5}, {5, 2}, {5, 3}}, {0, 1, 2});
        CHECK(false);
    } catch (const HalinError& e) {
        CHECK(e.code() == Errc::CycleMismatch);
    }
    // cycle repeats a node
    try {
        HalinEmbedding::build({{4, 0}, {4, 1}, {4, 5}, {5, 2}, {5, 3}}, {0, 1, 2, 2});
        CHECK(false);
    } catch (const HalinError& e) {
        CHECK(e.code() == Errc::CycleMismatch);
    }
}

TEST_CASE("interleaved cycle order is non-planar") {
    try {
        HalinEmbedding::build({{4, 0}, {4, 1}, {4, 5}, {5, 2}, {5, 3}}, {0, 2, 1, 3});
        CHECK(false);
    } catch (const HalinError& e) {
        CHECK(e.code() == Errc::NonPlanar);
    }
}

TEST_CASE("prism builds and validates") {
    auto h = prism();
    CHECK(h.num_nodes() == 6);
    CHECK(h.num_internal() == 2);
    CHECK(!is_wheel(h));
    h.validate();
}

TEST_CASE("cycle canonicalization accepts rotations and reflections") {
    auto a = HalinEmbedding::build({{4, 0}, {4, 1}, {4, 5}, {5, 2}, {5, 3}}, {2, 3, 0, 1});
    auto b = HalinEmbedding::build({{4, 0}, {4, 1}, {4, 5}, {5, 2}, {5, 3}}, {0, 3, 2, 1});
    auto c = prism();
    CHECK(a.cycle() == c.cycle());
    CHECK(b.cycle() == c.cycle());
}

TEST_CASE("find_fans on the prism") {
    auto h = prism();
    auto fans = find_fans(h);
    REQUIRE(fans.size() == 2);
    CHECK(fans[0].centre == 4);
    CHECK(fans[1].centre == 5);
    for (const auto& f : fans) CHECK(f.r() == 2);

    const Fan& f4 = fans[0];
    CHECK(f4.rim == std::vector<NodeId>{0, 1});
    CHECK(f4.attach == 5);
    CHECK(f4.prev == 3);
    CHECK(f4.next == 2);
    CHECK(f4.j == h.edge_between(3, 0));
    CHECK(f4.k == h.edge_between(4, 5));
    CHECK(f4.l == h.edge_between(1, 2));
    // alpha_5 on the j-side face (path 0-4-5-3), alpha_6 on the l-side.
    CHECK(f4.alpha[4] == h.edge_between(5, 3));
    CHECK(f4.alpha[5] == h.edge_between(5, 2));
    CHECK(f4.alpha[0] == h.edge_between(2, 3));
    CHECK(f4.alpha[1] == h.edge_between(5, 3));
    CHECK(f4.alpha[2] == h.edge_between(2, 3));
    CHECK(f4.alpha[3] == h.edge_between(5, 2));
}

TEST_CASE("wheels have no fans") {
    CHECK_THROWS_AS(find_fans(k4()), HalinError);
}

TEST_CASE("removing the cutset disconnects the fan") {
    auto h = prism();
    for (const auto& f : find_fans(h)) {
        std::set<EdgeId> cut{f.j, f.k, f.l};
        CHECK(cut.size() == 3);
        // BFS from the centre avoiding cutset edges must stay inside the fan.
        std::set<NodeId> fan_nodes(f.rim.begin(), f.rim.end());
        fan_nodes.insert(f.centre);
        std::vector<NodeId> stack{f.centre};
        std::set<NodeId> seen{f.centre};
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (EdgeId e : h.incident_edges(v)) {
                if (cut.count(e)) continue;
                NodeId w = h.other_end(e, v);
                if (seen.insert(w).second) stack.push_back(w);
            }
        }
        CHECK(seen == fan_nodes);
    }
}

TEST_CASE("contracting a prism fan yields a wheel") {
    auto h = prism();
    auto fans = find_fans(h);
    auto [g, rec] = contract_fan(h, fans[0]);
    CHECK(rec.pseudo_node == 6);
    CHECK(g.num_nodes() == 4);
    CHECK(is_wheel(g));
    CHECK(g.is_pseudo(6));
    g.validate();
    // Cutset edges survive with one endpoint renamed.
    CHECK(g.edge_between(3, 6) == rec.fan.j);
    CHECK(g.edge_between(6, 2) == rec.fan.l);
    CHECK(g.edge_between(6, 5) == rec.fan.k);
    // Second contraction is impossible: the result is a wheel.
    CHECK_THROWS_AS(find_fans(g), HalinError);
}

TEST_CASE("closure and termination under iterated contraction") {
    for (uint64_t seed : {1ull, 2ull, 7ull, 13ull}) {
        for (int internal : {2, 3, 5}) {
            Instance inst = gen_random_halin(internal, 4, seed);
            HalinEmbedding h = inst.graph;
            int steps = 0;
            while (!is_wheel(h)) {
                auto fans = find_fans(h);
                CHECK(fans.size() >= 2);  // every non-wheel Halin graph has two fans
                auto [g, rec] = contract_fan(h, fans[0]);
                g.validate();
                CHECK(g.num_nodes() == h.num_nodes() - fans[0].r() + 1 - 1);
                h = std::move(g);
                ++steps;
            }
            CHECK(steps == internal - 1);
        }
    }
}

TEST_CASE("generated instances validate and respect rotation consecutiveness") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        Instance inst = gen_random_halin(4, 5, seed);
        inst.graph.validate();
        CHECK(inst.graph.num_internal() == 4);
    }
}
