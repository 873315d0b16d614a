#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "halin/graph.hpp"
#include "halin/types.hpp"

namespace halin {

// Linear costs c(e) and symmetric quadratic costs q(e,f), nonnegative
// integers in external scale.  Objectives are evaluated in an internal x6
// scale so the triple transformation q(e,g) + (q(e,f)+q(f,g))/2 +
// (c(e)+c(f)+c(g))/3 stays exactly integral.
class CostModel {
  public:
    void set_linear(EdgeId e, Cost c);
    void set_quad(EdgeId e, EdgeId f, Cost q);  // unordered pair, overwrites
    Cost linear(EdgeId e) const;
    Cost quad(EdgeId e, EdgeId f) const;  // 0 when absent

    const std::vector<Cost>& linear_all() const { return linear_; }
    const std::unordered_map<uint64_t, Cost>& quad_all() const { return quad_; }

    static uint64_t quad_key(EdgeId e, EdgeId f);

  private:
    std::vector<Cost> linear_;  // indexed by EdgeId, default 0
    std::unordered_map<uint64_t, Cost> quad_;
};

enum class ObjectiveKind { TSP1 = 1, TSP2 = 2, TSP3 = 3, QTSP = 0 };

struct Objective {
    Cost internal = 0;  // x6 scale
    ObjectiveKind kind = ObjectiveKind::TSP3;

    // Plain TSP(k) and QTSP objectives are integral in external scale.
    Cost external() const;
};

// A simple k-edge path every tour could contain: adjacent edge pairs are
// consecutive at their shared node.
struct CandidatePath {
    std::vector<EdgeId> edges;
    std::vector<NodeId> nodes;  // edges.size() + 1 entries
};

// Internal-scale triple cost: 6 q(e,g) + 3 (q(e,f) + q(f,g)) + 2 (c(e) +
// c(f) + c(g)), i.e. exactly 6x the paper's q(e,f,g).  The k parameter
// degenerates the quadratic part: k = 2 drops the q(e,g) term, k = 1 drops
// all q terms.
Cost triple_cost_raw(const CostModel& costs, EdgeId e, EdgeId f, EdgeId g, int k = 3);

// Checked variant over a validated 3-edge candidate path.
Cost triple_cost(const CandidatePath& path, const CostModel& costs);

// Builds a CandidatePath from explicit edges; throws NotAPath if they do not
// form a simple path satisfying the consecutive-edges condition.
CandidatePath make_candidate_path(const HalinEmbedding& h, const std::vector<EdgeId>& edges);

// All k-candidate paths, k in {1,2,3}, deterministic order.
std::vector<CandidatePath> enumerate_candidate_paths(const HalinEmbedding& h, int k);

// Checks that `tour` is a Hamilton cycle of h; returns the tour's edge ids.
std::vector<EdgeId> tour_edges(const HalinEmbedding& h, const std::vector<NodeId>& tour);

// TSP(k) objective: 6 (sum q over pairs of tour edges at cyclic distance
// <= k-1, each unordered pair once, plus sum of c over tour edges).
Objective tour_objective(const HalinEmbedding& h, const std::vector<NodeId>& tour,
                         const CostModel& costs, int k);

// Sum of triple costs over the n consecutive edge triples of the tour.
// Equals tour_objective(..., 3) exactly (requires n >= 7; smaller tours
// raise TooSmall because wraparound triples may double-count pairs).
Objective stsp3_objective(const HalinEmbedding& h, const std::vector<NodeId>& tour,
                          const CostModel& costs);

// 6 (sum q over all unordered pairs of distinct tour edges + sum c).
Objective qtsp_objective(const HalinEmbedding& h, const std::vector<NodeId>& tour,
                         const CostModel& costs);

Objective objective_for_kind(const HalinEmbedding& h, const std::vector<NodeId>& tour,
                             const CostModel& costs, ObjectiveKind kind);

}  // namespace halin
