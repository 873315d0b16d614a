#pragma once

#include <optional>
#include <set>
#include <vector>

#include "halin/costs.hpp"
#include "halin/graph.hpp"
#include "halin/penalty.hpp"

namespace halin {

struct Solution {
    std::vector<NodeId> tour;
    Objective value;
    // Realized slot per pseudo-node, innermost contraction last (diagnostic).
    std::vector<std::pair<NodeId, int>> rho;
};

// All-zero tables for every cycle node.  Original cycle nodes keep
// pseudo = false: their tables never constrain anything until the node is
// replaced by a pseudo-node.
PenaltyTables init_penalties(const HalinEmbedding& h);

// Internal-scale path costs of the fan traversals that stay inside the fan:
// K = j-y_1-...-y_{r-1}-l and the centre detours K(y_g).  Triples whose
// interior nodes include a pseudo-node contribute 0 (their cost is already
// stored in that node's penalty table).
struct BasePathCosts {
    Cost K = 0;
    std::vector<Cost> K_detour;  // K(y_1)..K(y_{r-1})
};
BasePathCosts base_path_costs(const Fan& f, const PenaltyTables& tables, const CostModel& costs,
                              int k = 3);

// The fan contraction update: computes the 32-slot penalty table of v_F from
// the rim tables, minimizing over traversal shapes, detour indices and
// feasible rim slot chains.  Unreachable slots hold +inf.  Plans record the
// realizing choices for every finite slot.
PenaltyTable beta_update(const Fan& f, const PenaltyTables& tables, const CostModel& costs,
                         int k = 3);

// Prefix/suffix pseudo-fan values PF_{1,i} and PF_{i,r}: minimum over
// feasible slot chains of the rim beta sums plus the rim triple costs that
// are fully resolved inside the segment.  Indexing per slot conventions:
// inner (c1,c2), outer (d1 in {1,2}, d2 in {3,4}).
struct PseudoFanValue {
    // prefix[i-1][c1][c2][d1-1][d2-3] = PF_{1,i}, i = 1..r-1
    std::vector<std::array<std::array<std::array<std::array<Cost, 2>, 2>, 2>, 2>> prefix;
    // suffix[i-2][...] = PF_{i,r}, i = 2..r
    std::vector<std::array<std::array<std::array<std::array<Cost, 2>, 2>, 2>, 2>> suffix;
};
PseudoFanValue chain_pseudo_fan(const Fan& f, const PenaltyTables& tables, const CostModel& costs,
                                int k = 3);

// Optimal tour of a wheel whose rim may carry pseudo-nodes: pick the skipped
// rim edge and the feasible slot chain minimizing total window cost plus
// penalties.  Returns the wheel-level tour, the chosen slot per rim
// pseudo-node, and the internal-scale value.
struct WheelResult {
    std::vector<NodeId> tour;
    std::vector<std::pair<NodeId, int>> rho;
    Cost value = kInf;
    EdgeId skipped = kNoEdge;
};
WheelResult solve_wheel(const HalinEmbedding& w, const PenaltyTables& tables,
                        const CostModel& costs, int k = 3);

// Exact TSP(k) on a Halin graph, k in {1,2,3}: iterated fan contraction with
// beta updates, wheel base case, then expansion of all pseudo-nodes in
// reverse order.  Runs in O(n).
Solution solve(const HalinEmbedding& h, const CostModel& costs, int k);

// Stepping interface used by tests to observe intermediate states.
class DpSolver {
  public:
    DpSolver(const HalinEmbedding& h, const CostModel& costs, int k);

    bool at_wheel() const;
    // Contracts the fan with the smallest centre id; returns its record index.
    int contract_step();
    const HalinEmbedding& current() const { return cur_; }
    const PenaltyTables& tables() const { return tables_; }
    const std::vector<ContractionRecord>& records() const { return records_; }

    Solution finish();  // wheel procedure + expansion

  private:
    const HalinEmbedding& original_;
    const CostModel& costs_;
    int k_;
    HalinEmbedding cur_;
    PenaltyTables tables_;  // pseudo-nodes only
    std::vector<ContractionRecord> records_;
    std::vector<int> internal_deg_;
    std::set<NodeId> candidates_;  // internal nodes adjacent to exactly one internal node
};

}  // namespace halin
