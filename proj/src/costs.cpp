#include "halin/costs.hpp"

#include <algorithm>

namespace halin {

uint64_t CostModel::quad_key(EdgeId e, EdgeId f) {
    uint32_t a = static_cast<uint32_t>(std::min(e, f));
    uint32_t b = static_cast<uint32_t>(std::max(e, f));
    return (static_cast<uint64_t>(a) << 32) | b;
}

void CostModel::set_linear(EdgeId e, Cost c) {
    if (c < 0) fail(Errc::InvalidParams, "negative linear cost");
    if (static_cast<size_t>(e) >= linear_.size()) linear_.resize(e + 1, 0);
    linear_[e] = c;
}

void CostModel::set_quad(EdgeId e, EdgeId f, Cost q) {
    if (q < 0) fail(Errc::InvalidParams, "negative quadratic cost");
    if (e == f) fail(Errc::InvalidParams, "quadratic cost on an edge with itself");
    quad_[quad_key(e, f)] = q;
}

Cost CostModel::linear(EdgeId e) const {
    return static_cast<size_t>(e) < linear_.size() ? linear_[e] : 0;
}

Cost CostModel::quad(EdgeId e, EdgeId f) const {
    auto it = quad_.find(quad_key(e, f));
    return it == quad_.end() ? 0 : it->second;
}

Cost Objective::external() const {
    if (internal % 6 != 0) fail(Errc::InvalidParams, "objective not divisible by the x6 scale");
    return internal / 6;
}

Cost triple_cost_raw(const CostModel& costs, EdgeId e, EdgeId f, EdgeId g, int k) {
    Cost v = 2 * (costs.linear(e) + costs.linear(f) + costs.linear(g));
    if (k >= 2) v += 3 * (costs.quad(e, f) + costs.quad(f, g));
    if (k >= 3) v += 6 * costs.quad(e, g);
    return v;
}

Cost triple_cost(const CandidatePath& path, const CostModel& costs) {
    if (path.edges.size() != 3) fail(Errc::NotAPath, "triple cost needs a 3-edge path");
    return triple_cost_raw(costs, path.edges[0], path.edges[1], path.edges[2], 3);
}

CandidatePath make_candidate_path(const HalinEmbedding& h, const std::vector<EdgeId>& edges) {
    if (edges.empty() || edges.size() > 3) fail(Errc::NotAPath, "1..3 edges required");
    for (EdgeId e : edges)
        if (!h.edge_exists(e)) fail(Errc::NotAPath, "dead edge");

    CandidatePath p;
    p.edges = edges;
    if (edges.size() == 1) {
        auto [a, b] = h.endpoints(edges[0]);
        p.nodes = {a, b};
        return p;
    }
    // Orient the path from the endpoint of edges[0] not shared with edges[1].
    auto shared = [&](EdgeId e, EdgeId f) -> NodeId {
        auto [a, b] = h.endpoints(e);
        auto [c, d] = h.endpoints(f);
        if (a == c || a == d) return a;
        if (b == c || b == d) return b;
        return kNoNode;
    };
    NodeId s01 = shared(edges[0], edges[1]);
    if (s01 == kNoNode) fail(Errc::NotAPath, "edges are not adjacent");
    p.nodes.push_back(h.other_end(edges[0], s01));
    p.nodes.push_back(s01);
    NodeId cur = s01;
    for (size_t i = 1; i < edges.size(); ++i) {
        auto [a, b] = h.endpoints(edges[i]);
        if (a != cur && b != cur) fail(Errc::NotAPath, "edges are not a path");
        cur = h.other_end(edges[i], cur);
        p.nodes.push_back(cur);
    }
    // Simplicity.
    auto nodes = p.nodes;
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
        fail(Errc::NotAPath, "path revisits a node");
    // Consecutive-edges condition at the interior nodes.
    for (size_t i = 0; i + 1 < p.edges.size(); ++i)
        if (!h.consecutive_at(p.nodes[i + 1], p.edges[i], p.edges[i + 1]))
            fail(Errc::NotAPath, "edge pair is non-consecutive at a shared node");
    return p;
}

std::vector<CandidatePath> enumerate_candidate_paths(const HalinEmbedding& h, int k) {
    if (k < 1 || k > 3) fail(Errc::UnsupportedK, "k must be 1, 2 or 3");
    std::vector<CandidatePath> out;

    auto neighbours_at = [&](EdgeId e, NodeId v) -> std::vector<EdgeId> {
        // Edges consecutive with e at v.
        if (!h.is_internal(v)) {
            std::vector<EdgeId> r;
            for (EdgeId f : h.incident_edges(v))
                if (f != e) r.push_back(f);
            return r;
        }
        EdgeId a = h.rotation_pred(v, e), b = h.rotation_succ(v, e);
        if (a == b) return {a};
        return {a, b};
    };

    if (k == 1) {
        for (EdgeId e = 0; e < h.edge_capacity(); ++e) {
            if (!h.edge_exists(e)) continue;
            auto [a, b] = h.endpoints(e);
            out.push_back({{e}, {a, b}});
        }
        return out;
    }

    for (EdgeId f = 0; f < h.edge_capacity(); ++f) {
        if (!h.edge_exists(f)) continue;
        auto [a, b] = h.endpoints(f);
        if (k == 2) {
            // Take pairs at the smaller endpoint id to list each path once.
            for (NodeId v : {a, b}) {
                for (EdgeId e : neighbours_at(f, v)) {
                    if (e < f) continue;  // dedupe unordered pair
                    CandidatePath p;
                    p.edges = {f, e};
                    p.nodes = {h.other_end(f, v), v, h.other_end(e, v)};
                    out.push_back(std::move(p));
                }
            }
        } else {
            // f is the middle edge; extend on both sides.  Each 3-path has a
            // unique middle, so this lists every path exactly once.
            for (EdgeId e : neighbours_at(f, a)) {
                for (EdgeId g : neighbours_at(f, b)) {
                    NodeId n0 = h.other_end(e, a), n3 = h.other_end(g, b);
                    if (e == g || n0 == n3 || n0 == b || n3 == a) continue;  // not simple
                    out.push_back({{e, f, g}, {n0, a, b, n3}});
                }
            }
        }
    }
    return out;
}

std::vector<EdgeId> tour_edges(const HalinEmbedding& h, const std::vector<NodeId>& tour) {
    const int n = h.num_nodes();
    if (static_cast<int>(tour.size()) != n) fail(Errc::NotHamiltonian, "tour length != node count");
    std::vector<char> seen(h.capacity(), 0);
    for (NodeId v : tour) {
        if (v < 0 || v >= h.capacity() || !h.node_exists(v))
            fail(Errc::NotHamiltonian, "tour visits unknown node");
        if (seen[v]) fail(Errc::NotHamiltonian, "tour repeats a node");
        seen[v] = 1;
    }
    std::vector<EdgeId> edges;
    edges.reserve(n);
    for (int i = 0; i < n; ++i) {
        EdgeId e = h.edge_between(tour[i], tour[(i + 1) % n]);
        if (e == kNoEdge) fail(Errc::NotHamiltonian, "tour uses a missing edge");
        edges.push_back(e);
    }
    return edges;
}

Objective tour_objective(const HalinEmbedding& h, const std::vector<NodeId>& tour,
                         const CostModel& costs, int k) {
    if (k < 1) fail(Errc::InvalidK, "k must be positive");
    auto edges = tour_edges(h, tour);
    const int n = static_cast<int>(edges.size());
    Cost total = 0;
    for (EdgeId e : edges) total += costs.linear(e);
    // Edges at cyclic index distance d are (d+1)-neighbours; each unordered
    // pair is counted once, at its minimum distance.
    for (int i = 0; i < n; ++i) {
        for (int d = 1; d <= std::min(k - 1, n - 1); ++d) {
            int jx = (i + d) % n;
            if (2 * d < n || (2 * d == n && i < jx)) total += costs.quad(edges[i], edges[jx]);
        }
    }
    ObjectiveKind kind = k == 1   ? ObjectiveKind::TSP1
                         : k == 2 ? ObjectiveKind::TSP2
                                  : ObjectiveKind::TSP3;
    return {6 * total, kind};
}

Objective stsp3_objective(const HalinEmbedding& h, const std::vector<NodeId>& tour,
                          const CostModel& costs) {
    auto edges = tour_edges(h, tour);
    const int n = static_cast<int>(edges.size());
    if (n < 7) fail(Errc::TooSmall, "triple-sum objective requires n >= 7");
    Cost total = 0;
    for (int i = 0; i < n; ++i)
        total += triple_cost_raw(costs, edges[i], edges[(i + 1) % n], edges[(i + 2) % n], 3);
    return {total, ObjectiveKind::TSP3};
}

Objective qtsp_objective(const HalinEmbedding& h, const std::vector<NodeId>& tour,
                         const CostModel& costs) {
    auto edges = tour_edges(h, tour);
    const int n = static_cast<int>(edges.size());
    Cost total = 0;
    for (EdgeId e : edges) total += costs.linear(e);
    for (int i = 0; i < n; ++i)
        for (int jx = i + 1; jx < n; ++jx) total += costs.quad(edges[i], edges[jx]);
    return {6 * total, ObjectiveKind::QTSP};
}

Objective objective_for_kind(const HalinEmbedding& h, const std::vector<NodeId>& tour,
                             const CostModel& costs, ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::QTSP: return qtsp_objective(h, tour, costs);
        default: return tour_objective(h, tour, costs, static_cast<int>(kind));
    }
}

}  // namespace halin
