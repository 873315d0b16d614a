#include "halin/generators.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace halin {

uint64_t Rng::raw() {
    // splitmix64: identical output on every platform.
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

int64_t Rng::range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(raw() % static_cast<uint64_t>(hi - lo + 1));
}

namespace {

// Every pair of edges that can be 2- or 3-neighbours on some tour, in a
// deterministic order.
std::vector<std::pair<EdgeId, EdgeId>> neighbour_pairs(const HalinEmbedding& h) {
    std::set<uint64_t> keys;
    for (const auto& p : enumerate_candidate_paths(h, 2))
        keys.insert(CostModel::quad_key(p.edges[0], p.edges[1]));
    for (const auto& p : enumerate_candidate_paths(h, 3))
        keys.insert(CostModel::quad_key(p.edges[0], p.edges[2]));
    std::vector<std::pair<EdgeId, EdgeId>> out;
    out.reserve(keys.size());
    for (uint64_t k : keys)
        out.push_back({static_cast<EdgeId>(k >> 32), static_cast<EdgeId>(k & 0xffffffff)});
    return out;
}

void random_costs(Instance& inst, Rng& rng, Cost lo, Cost hi, int extra_pairs) {
    const auto& h = inst.graph;
    for (EdgeId e = 0; e < h.edge_capacity(); ++e)
        if (h.edge_exists(e)) inst.costs.set_linear(e, rng.range(lo, hi));
    for (auto [a, b] : neighbour_pairs(h)) inst.costs.set_quad(a, b, rng.range(lo, hi));
    int added = 0, attempts = 0;
    while (added < extra_pairs && attempts < 20 * extra_pairs + 20) {
        ++attempts;
        EdgeId a = static_cast<EdgeId>(rng.range(0, h.edge_capacity() - 1));
        EdgeId b = static_cast<EdgeId>(rng.range(0, h.edge_capacity() - 1));
        if (a == b || !h.edge_exists(a) || !h.edge_exists(b)) continue;
        inst.costs.set_quad(a, b, rng.range(lo, hi));
        ++added;
    }
}

}  // namespace

Instance gen_wheel(int r, uint64_t seed, Cost cost_lo, Cost cost_hi) {
    if (r < 3) fail(Errc::TooSmall, "a wheel needs at least 3 rim nodes");
    std::vector<std::pair<NodeId, NodeId>> tree;
    std::vector<NodeId> cycle;
    for (int i = 1; i <= r; ++i) {
        tree.push_back({0, i});
        cycle.push_back(i);
    }
    Instance inst{HalinEmbedding::build(tree, cycle), {}};
    Rng rng(seed);
    random_costs(inst, rng, cost_lo, cost_hi, 0);
    return inst;
}

Instance gen_random_halin(int internal, int max_fanout, uint64_t seed, Cost cost_lo, Cost cost_hi,
                          int extra_pairs) {
    if (internal < 1 || max_fanout < 2) fail(Errc::InvalidParams, "need internal >= 1, fanout >= 2");
    Rng rng(seed);

    // Random internal tree; node i joins an earlier internal node.
    std::vector<std::vector<NodeId>> ichildren(internal);
    for (NodeId i = 1; i < internal; ++i)
        ichildren[rng.range(0, i - 1)].push_back(i);

    // Leaf counts: at least two leaves per internal node (three on a bare hub).
    std::vector<int> leaves(internal);
    for (int i = 0; i < internal; ++i) {
        int lo = internal == 1 ? 3 : 2;
        leaves[i] = static_cast<int>(rng.range(lo, std::max(lo, max_fanout)));
    }

    // DFS, shuffling each node's children (subtrees and leaf slots alike);
    // leaves are numbered in emission order so the identity cycle is planar.
    std::vector<std::pair<NodeId, NodeId>> tree;
    int total_leaves = 0;
    for (int i = 0; i < internal; ++i) total_leaves += leaves[i];
    NodeId next_leaf = internal;
    std::vector<NodeId> stack{0};
    std::vector<char> visited(internal, 0);
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        visited[v] = 1;
        // child slots: -1 marks a leaf slot
        std::vector<NodeId> slots(leaves[v], kNoNode);
        for (NodeId c : ichildren[v]) slots.push_back(c);
        for (int i = static_cast<int>(slots.size()) - 1; i > 0; --i)
            std::swap(slots[i], slots[rng.range(0, i)]);
        for (NodeId s : slots) {
            if (s == kNoNode) {
                tree.push_back({v, next_leaf++});
            } else {
                tree.push_back({v, s});
                stack.push_back(s);
            }
        }
    }
    (void)visited;

    std::vector<NodeId> cycle(total_leaves);
    for (int i = 0; i < total_leaves; ++i) cycle[i] = internal + i;

    Instance inst{HalinEmbedding::build(tree, cycle), {}};
    random_costs(inst, rng, cost_lo, cost_hi, extra_pairs);
    return inst;
}

// ---- 3-SAT -> RQTSP ------------------------------------------------------

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    CnfFormula f;
    int clause_count = -1;
    bool header = false;
    std::vector<int> pending;
    while (in >> tok) {
        if (tok == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            if (!(in >> fmt >> f.variable_count >> clause_count) || fmt != "cnf")
                fail(Errc::MalformedCnf, "bad problem line");
            header = true;
            continue;
        }
        int lit;
        try {
            lit = std::stoi(tok);
        } catch (...) {
            fail(Errc::MalformedCnf, "unexpected token '" + tok + "'");
        }
        if (!header) fail(Errc::MalformedCnf, "literal before the problem line");
        if (lit == 0) {
            if (pending.size() != 3)
                fail(Errc::MalformedCnf, "clauses must have exactly three literals");
            f.clauses.push_back({pending[0], pending[1], pending[2]});
            pending.clear();
        } else {
            if (std::abs(lit) > f.variable_count)
                fail(Errc::MalformedCnf, "literal exceeds the variable count");
            pending.push_back(lit);
        }
    }
    if (!header) fail(Errc::MalformedCnf, "missing problem line");
    if (!pending.empty()) fail(Errc::MalformedCnf, "unterminated clause");
    if (clause_count >= 0 && clause_count != static_cast<int>(f.clauses.size()))
        fail(Errc::MalformedCnf, "clause count does not match the header");
    return f;
}

bool Assignment::satisfies(const CnfFormula& f) const {
    for (const auto& cl : f.clauses) {
        bool ok = false;
        for (int lit : cl) {
            int v = std::abs(lit);
            bool val = v < static_cast<int>(value.size()) ? value[v] : false;
            if ((lit > 0) == val) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

bool sat_brute(const CnfFormula& f) {
    if (f.variable_count > 24) fail(Errc::TooManyVariables, "truth table limited to 24 variables");
    for (const auto& cl : f.clauses)
        for (int lit : cl)
            if (lit == 0 || std::abs(lit) > f.variable_count)
                fail(Errc::MalformedFormula, "literal out of range");
    const uint32_t lim = 1u << f.variable_count;
    for (uint32_t mask = 0; mask < lim; ++mask) {
        Assignment a;
        a.value.assign(f.variable_count + 1, false);
        for (int v = 1; v <= f.variable_count; ++v) a.value[v] = (mask >> (v - 1)) & 1;
        if (a.satisfies(f)) return true;
    }
    return false;
}

ReductionOutput sat_to_rqtsp(const CnfFormula& f) {
    const int h = static_cast<int>(f.clauses.size());
    if (h == 0) fail(Errc::MalformedFormula, "empty formula");
    for (const auto& cl : f.clauses)
        for (int lit : cl)
            if (lit == 0 || std::abs(lit) > f.variable_count)
                fail(Errc::MalformedFormula, "literal out of range");

    // Internal nodes: w = 0, gadget centres v_i = 1..h.  Cycle nodes follow
    // in cycle order: v_x, then per gadget ell, p1..p4, r, then v_y.
    ReductionOutput out;
    out.w = 0;
    NodeId next = h + 1;
    out.v_x = next++;
    struct G {
        NodeId ell, p[4], r;
    };
    std::vector<G> gs(h);
    for (int i = 0; i < h; ++i) {
        gs[i].ell = next++;
        for (auto& p : gs[i].p) p = next++;
        gs[i].r = next++;
        out.gadgets.push_back({gs[i].ell, static_cast<NodeId>(i + 1), gs[i].r});
    }
    out.v_y = next++;

    std::vector<std::pair<NodeId, NodeId>> tree;
    tree.push_back({out.w, out.v_x});
    tree.push_back({out.w, out.v_y});
    for (int i = 0; i < h; ++i) {
        NodeId v = i + 1;
        tree.push_back({out.w, v});
        tree.push_back({v, gs[i].ell});
        for (NodeId p : gs[i].p) tree.push_back({v, p});
        tree.push_back({v, gs[i].r});
    }
    std::vector<NodeId> cycle{out.v_x};
    for (int i = 0; i < h; ++i) {
        cycle.push_back(gs[i].ell);
        for (NodeId p : gs[i].p) cycle.push_back(p);
        cycle.push_back(gs[i].r);
    }
    cycle.push_back(out.v_y);

    out.instance.graph = HalinEmbedding::build(tree, cycle);
    const HalinEmbedding& hg = out.instance.graph;
    CostModel& q = out.instance.costs;

    // Per gadget: literal edges mu_1 = (ell,p1), mu_2 = (p2,p3),
    // mu_3 = (p4,r) are pairwise disjoint, so each centre detour uses its own
    // spoke pair.  Costs: 1 on every non-flanking spoke pair, plus 1 on
    // (spoke(ell), mu_1) and (spoke(r), mu_3), which blocks the traversals
    // that cross the gadget without detouring.
    for (int i = 0; i < h; ++i) {
        const G& g = gs[i];
        NodeId rim[6] = {g.ell, g.p[0], g.p[1], g.p[2], g.p[3], g.r};
        EdgeId spokes[6], outer[5];
        for (int m = 0; m < 6; ++m) spokes[m] = hg.edge_between(i + 1, rim[m]);
        for (int m = 0; m < 5; ++m) outer[m] = hg.edge_between(rim[m], rim[m + 1]);
        auto flank = [](int a, int b) {
            return (a == 0 && b == 1) || (a == 2 && b == 3) || (a == 4 && b == 5);
        };
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                if (!flank(a, b)) q.set_quad(spokes[a], spokes[b], 1);
        q.set_quad(spokes[0], outer[0], 1);
        q.set_quad(spokes[5], outer[4], 1);

        // Literal positions 1..3 map onto mu edges 1,3,5 of the path and to
        // the left flanking spoke of each.
        const int mu_pos[3] = {0, 2, 4};
        for (int m = 0; m < 3; ++m) {
            LiteralEdge le;
            le.literal_index = 3 * i + m + 1;
            le.literal = f.clauses[i][m];
            le.mu = outer[mu_pos[m]];
            le.mu_prime = spokes[mu_pos[m]];
            out.literal_edges.push_back(le);
        }
    }

    // Conflicting literals anywhere in the formula: a zero-cost tour cannot
    // skip both.
    const int nl = f.num_literals();
    for (int m = 1; m <= nl; ++m)
        for (int qi = m + 1; qi <= nl; ++qi)
            if (f.literal(m) == -f.literal(qi))
                q.set_quad(out.literal_edges[m - 1].mu_prime, out.literal_edges[qi - 1].mu_prime, 1);

    out.threshold = 0;
    out.variable_count = f.variable_count;
    return out;
}

Assignment decode_tour_to_assignment(const ReductionOutput& out, const std::vector<NodeId>& tour) {
    Objective obj = qtsp_objective(out.instance.graph, tour, out.instance.costs);
    if (obj.internal != 0)
        fail(Errc::NonZeroCostTour, "decoding is defined only for zero-cost tours");

    std::set<EdgeId> used;
    for (EdgeId e : tour_edges(out.instance.graph, tour)) used.insert(e);

    Assignment a;
    a.value.assign(out.variable_count + 1, false);
    std::vector<int> assigned(out.variable_count + 1, 0);  // 0 unset, +1 true, -1 false
    for (const auto& le : out.literal_edges) {
        if (used.count(le.mu)) continue;  // literal edge on the tour: not skipped
        int var = std::abs(le.literal);
        int want = le.literal > 0 ? 1 : -1;
        if (assigned[var] != 0 && assigned[var] != want)
            fail(Errc::ConflictingLiterals, "zero-cost tour skips conflicting literals");
        assigned[var] = want;
        a.value[var] = want > 0;
    }
    return a;
}

}  // namespace halin
