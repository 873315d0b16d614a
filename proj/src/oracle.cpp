#include "halin/oracle.hpp"

#include <algorithm>

namespace halin {

CycleEnumerator::CycleEnumerator(const HalinEmbedding& h, int node_cap) : h_(h) {
    if (h.num_nodes() > node_cap)
        fail(Errc::TooLarge, "graph exceeds the enumeration cap of " + std::to_string(node_cap));
    for (NodeId v = 0; v < h.capacity(); ++v)
        if (h.node_exists(v)) nodes_.push_back(v);
    used_.assign(h.capacity(), 0);
    path_.push_back(nodes_.front());
    used_[nodes_.front()] = 1;
    branch_.push_back(0);
}

std::optional<std::vector<NodeId>> CycleEnumerator::next() {
    const int n = static_cast<int>(nodes_.size());
    const NodeId start = nodes_.front();
    while (!done_) {
        if (path_.empty()) {
            done_ = true;
            break;
        }
        NodeId v = path_.back();
        auto inc = h_.incident_edges(v);
        if (branch_.back() >= inc.size()) {
            used_[v] = 0;
            path_.pop_back();
            branch_.pop_back();
            if (!branch_.empty()) ++branch_.back();
            continue;
        }
        EdgeId e = inc[branch_.back()];
        NodeId w = h_.other_end(e, v);
        if (static_cast<int>(path_.size()) == n) {
            // Close the cycle; emit one orientation only.
            if (w == start && path_[1] < path_.back()) {
                auto out = path_;
                ++branch_.back();
                return out;
            }
            ++branch_.back();
            continue;
        }
        if (w != start && !used_[w]) {
            used_[w] = 1;
            path_.push_back(w);
            branch_.push_back(0);
        } else {
            ++branch_.back();
        }
    }
    return std::nullopt;
}

std::vector<std::vector<NodeId>> enumerate_hamilton_cycles(const HalinEmbedding& h, int node_cap) {
    CycleEnumerator en(h, node_cap);
    std::vector<std::vector<NodeId>> out;
    while (auto c = en.next()) out.push_back(std::move(*c));
    return out;
}

Solution brute_solve(const HalinEmbedding& h, const CostModel& costs, ObjectiveKind kind,
                     int node_cap) {
    CycleEnumerator en(h, node_cap);
    Solution best;
    best.value.internal = kInf;
    best.value.kind = kind;
    bool found = false;
    while (auto c = en.next()) {
        Objective obj = objective_for_kind(h, *c, costs, kind);
        if (!found || obj.internal < best.value.internal ||
            (obj.internal == best.value.internal && *c < best.tour)) {
            best.tour = *c;
            best.value = obj;
            found = true;
        }
    }
    if (!found) fail(Errc::NotHamiltonian, "no Hamilton cycle found");
    return best;
}

bool check_consecutiveness(const HalinEmbedding& h, const std::vector<NodeId>& tour) {
    auto edges = tour_edges(h, tour);
    const int n = static_cast<int>(edges.size());
    for (int i = 0; i < n; ++i) {
        NodeId v = tour[i];
        EdgeId before = edges[(i + n - 1) % n];
        EdgeId after = edges[i];
        if (!h.consecutive_at(v, before, after)) return false;
    }
    return true;
}

}  // namespace halin
