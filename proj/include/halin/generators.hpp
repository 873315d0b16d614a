#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halin/costs.hpp"
#include "halin/graph.hpp"

namespace halin {

struct Instance {
    HalinEmbedding graph;
    CostModel costs;
};

// Deterministic across platforms: mt19937_64 with modulo reduction.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t raw();
    // Uniform-ish integer in [lo, hi].
    int64_t range(int64_t lo, int64_t hi);

  private:
    uint64_t state_;
};

// Wheel: hub 0 plus rim 1..r.  Random integer costs in [cost_lo, cost_hi]
// on every edge and on every pair that can be 2- or 3-neighbours on a tour.
Instance gen_wheel(int r, uint64_t seed, Cost cost_lo = 0, Cost cost_hi = 9);

// Random Halin graph: `internal` internal nodes forming a random tree, each
// with 2..max_fanout leaf children (at least 3 when the tree is a single
// node), leaves cycled in DFS order.  Quadratic costs cover all candidate
// 2-/3-neighbour pairs plus `extra_pairs` arbitrary edge pairs.
Instance gen_random_halin(int internal, int max_fanout, uint64_t seed, Cost cost_lo = 0,
                          Cost cost_hi = 9, int extra_pairs = 0);

// --- 3-SAT -> RQTSP reduction ---

struct CnfFormula {
    int variable_count = 0;
    std::vector<std::array<int, 3>> clauses;  // signed 1-based variable indexes

    int literal(int index) const {  // 1-based literal position L_1..L_{3h}
        return clauses[(index - 1) / 3][(index - 1) % 3];
    }
    int num_literals() const { return static_cast<int>(clauses.size()) * 3; }
};

// DIMACS CNF ("p cnf <vars> <clauses>", zero-terminated clauses, exactly
// three literals each).
CnfFormula parse_dimacs(const std::string& text);

struct LiteralEdge {
    int literal_index;  // 1-based position L_1..L_{3h}
    int literal;        // signed variable index
    EdgeId mu;          // skippable outer edge
    EdgeId mu_prime;    // spoke unique to the detour around mu
};

struct GadgetNodes {
    NodeId ell, centre, r;
};

struct ReductionOutput {
    Instance instance;          // c = 0 everywhere, q in {0,1}
    Cost threshold = 0;
    int variable_count = 0;
    std::vector<GadgetNodes> gadgets;
    std::vector<LiteralEdge> literal_edges;  // one per literal, L_1 first
    NodeId v_x = kNoNode, v_y = kNoNode, w = kNoNode;
};

// Theorem-1 instance compiler: one 7-node gadget per clause (centre v_i with
// rim ell_i, p1..p4, r_i; literal edges mu_1=(ell,p1), mu_2=(p2,p3),
// mu_3=(p4,r)), gadgets chained around the cycle and closed by v_x, v_y, w.
// The formula is satisfiable iff the instance admits a zero-cost tour.
ReductionOutput sat_to_rqtsp(const CnfFormula& f);

struct Assignment {
    std::vector<bool> value;  // index 1..t

    bool satisfies(const CnfFormula& f) const;
};

// Decodes a zero-cost tour: each skipped literal edge sets its literal true;
// unconstrained variables default to false.
Assignment decode_tour_to_assignment(const ReductionOutput& out, const std::vector<NodeId>& tour);

// Truth-table satisfiability check, t <= 24.
bool sat_brute(const CnfFormula& f);

}  // namespace halin
