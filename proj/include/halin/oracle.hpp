#pragma once

#include <optional>
#include <vector>

#include "halin/costs.hpp"
#include "halin/graph.hpp"
#include "halin/solver.hpp"

namespace halin {

// Backtracking enumeration of Hamilton cycles in canonical form: starts at
// the smallest node id, second node smaller than the last (kills the
// reflection duplicate).  Each cycle is emitted exactly once.
class CycleEnumerator {
  public:
    explicit CycleEnumerator(const HalinEmbedding& h, int node_cap = kDefaultCap);

    std::optional<std::vector<NodeId>> next();

    static constexpr int kDefaultCap = 20;

  private:
    const HalinEmbedding& h_;
    std::vector<NodeId> nodes_;   // alive nodes, ascending
    std::vector<NodeId> path_;
    std::vector<char> used_;
    std::vector<size_t> branch_;  // per-depth iterator into incident edges
    bool done_ = false;
};

std::vector<std::vector<NodeId>> enumerate_hamilton_cycles(const HalinEmbedding& h,
                                                           int node_cap = CycleEnumerator::kDefaultCap);

// Exhaustive minimum over all Hamilton cycles; ties broken by canonical node
// sequence.  Ground truth for the dynamic program.
Solution brute_solve(const HalinEmbedding& h, const CostModel& costs, ObjectiveKind kind,
                     int node_cap = CycleEnumerator::kDefaultCap);

// True iff the two tour edges at every node share a face of the embedding
// (always true for real tours; the check doubles as an embedding test).
bool check_consecutiveness(const HalinEmbedding& h, const std::vector<NodeId>& tour);

}  // namespace halin
