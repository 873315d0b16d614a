#pragma once

#include "halin/generators.hpp"
#include "halin/graph.hpp"

namespace halin::testing {

// Smallest Halin graph: the wheel on 4 nodes.
inline HalinEmbedding k4() {
    return HalinEmbedding::build({{0, 1}, {0, 2}, {0, 3}}, {1, 2, 3});
}

// Two internal nodes with two leaves each.
inline HalinEmbedding prism() {
    return HalinEmbedding::build({{4, 0}, {4, 1}, {4, 5}, {5, 2}, {5, 3}}, {0, 1, 2, 3});
}

inline HalinEmbedding wheel(int rim) {
    std::vector<std::pair<NodeId, NodeId>> tree;
    std::vector<NodeId> cyc;
    for (int i = 1; i <= rim; ++i) {
        tree.push_back({0, i});
        cyc.push_back(i);
    }
    return HalinEmbedding::build(tree, cyc);
}

}  // namespace halin::testing
