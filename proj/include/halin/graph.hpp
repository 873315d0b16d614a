#pragma once

#include <array>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "halin/errors.hpp"
#include "halin/penalty.hpp"
#include "halin/types.hpp"

namespace halin {

// A Halin graph H = T u C: a tree without degree-2 nodes embedded in the
// plane, plus the cycle through its leaves.  The embedding is stored as a
// rotation system (ordered edge lists at internal nodes, consistent with the
// cycle order) and survives fan contraction, so contracted graphs are
// represented by the same class with pseudo-nodes occupying fresh ids.
class HalinEmbedding {
  public:
    // Validates the input and infers the rotation system from the cycle
    // order.  Node ids must be dense in [0, n).  The cycle is canonicalized:
    // rotated to start at the smallest leaf and oriented so the second
    // element is the smaller of that leaf's two cycle neighbours.
    static HalinEmbedding build(const std::vector<std::pair<NodeId, NodeId>>& tree_edges,
                                const std::vector<NodeId>& cycle);

    // Re-checks every invariant (tree shape, degrees, cycle coverage,
    // planarity of the rotation system).  Throws on violation.
    void validate() const;

    // --- nodes ---
    int capacity() const { return static_cast<int>(alive_.size()); }
    int num_nodes() const { return n_alive_; }
    int num_internal() const { return n_internal_; }
    bool node_exists(NodeId v) const { return v >= 0 && v < capacity() && alive_[v]; }
    bool is_internal(NodeId v) const { return alive_[v] && internal_[v]; }
    bool is_cycle_node(NodeId v) const { return alive_[v] && !internal_[v]; }
    bool is_pseudo(NodeId v) const { return alive_[v] && pseudo_[v]; }
    int num_original_nodes() const { return n_original_; }

    // --- cycle structure ---
    NodeId cycle_next(NodeId v) const { return cyc_next_[v]; }
    NodeId cycle_prev(NodeId v) const { return cyc_prev_[v]; }
    // Cycle nodes in order, starting from the canonical start node.
    std::vector<NodeId> cycle() const;
    int cycle_size() const { return n_cycle_; }
    // Tree edge at a cycle node, and the internal node it attaches to.
    EdgeId spoke(NodeId v) const { return spoke_[v]; }
    NodeId attach(NodeId v) const;
    // Cycle edge from v to cycle_next(v).
    EdgeId cycle_edge(NodeId v) const { return cyc_edge_[v]; }

    // --- edges ---
    int edge_capacity() const { return static_cast<int>(edge_nodes_.size()); }
    bool edge_exists(EdgeId e) const {
        return e >= 0 && e < edge_capacity() && edge_nodes_[e][0] != kNoNode;
    }
    std::array<NodeId, 2> endpoints(EdgeId e) const { return edge_nodes_[e]; }
    NodeId other_end(EdgeId e, NodeId v) const {
        return edge_nodes_[e][0] == v ? edge_nodes_[e][1] : edge_nodes_[e][0];
    }
    EdgeId edge_between(NodeId u, NodeId v) const;  // kNoEdge if absent
    bool is_tree_edge(EdgeId e) const { return tree_edge_[e]; }

    // Rotation at an internal node: incident edges in cyclic order, aligned
    // with the cycle orientation (consecutive leaf arcs appear in cycle
    // order).  Static across contractions.
    std::span<const EdgeId> rotation(NodeId internal) const { return rot_[internal]; }
    // Edges adjacent to e in the rotation at internal node v.
    EdgeId rotation_succ(NodeId v, EdgeId e) const;
    EdgeId rotation_pred(NodeId v, EdgeId e) const;

    // Incident edges of any node (cycle nodes: prev cycle edge, spoke, next
    // cycle edge; internal nodes: the rotation).
    std::vector<EdgeId> incident_edges(NodeId v) const;

    // Two edges sharing node v are consecutive if some face contains both.
    // At a degree-3 node every pair qualifies; at internal nodes of higher
    // degree the pair must be adjacent in the rotation.
    bool consecutive_at(NodeId v, EdgeId e, EdgeId f) const;

    // Removes the fan's nodes and re-anchors its cutset onto a fresh
    // pseudo-node, in O(|F| + log n).  The caller owns fan validity.
    void contract_in_place(const struct Fan& f, NodeId pseudo);

  private:
    int n_alive_ = 0, n_internal_ = 0, n_cycle_ = 0, n_original_ = 0;
    NodeId cycle_start_ = kNoNode;
    std::vector<char> alive_, internal_, pseudo_;
    std::vector<NodeId> cyc_next_, cyc_prev_;
    std::vector<EdgeId> spoke_, cyc_edge_;
    std::vector<std::vector<EdgeId>> rot_;
    std::vector<std::array<int, 2>> rot_pos_;  // edge -> position in endpoint rotations
    std::vector<std::array<NodeId, 2>> edge_nodes_;
    std::vector<char> tree_edge_;
    std::unordered_map<uint64_t, EdgeId> edge_index_;  // key packs both endpoints

    void index_edge(EdgeId e, NodeId u, NodeId v);
    void unindex_edge(EdgeId e);
    int rot_index_of(NodeId v, EdgeId e) const;
};

// A fan: internal node `centre` adjacent to exactly one other internal node
// (`attach`), together with its run of consecutive cycle nodes u_1..u_r.
// Cutset {j,k,l}: j = cycle edge entering u_1, l = cycle edge leaving u_r,
// k = (centre, attach).  Context alpha[0..5] = the paper's a_1..a_6:
// a_1/a_2 cycle/tree edges at u_0, a_3/a_4 cycle/tree edges at u_{r+1},
// a_5/a_6 the rotation neighbours of k at `attach` on the j / l side.
struct Fan {
    NodeId centre = kNoNode;
    NodeId attach = kNoNode;
    NodeId prev = kNoNode;  // u_0
    NodeId next = kNoNode;  // u_{r+1}
    std::vector<NodeId> rim;
    std::vector<EdgeId> rim_edges;  // y_1..y_{r-1}
    std::vector<EdgeId> spokes;     // t_1..t_r
    EdgeId j = kNoEdge, k = kNoEdge, l = kNoEdge;
    std::array<EdgeId, 6> alpha{kNoEdge, kNoEdge, kNoEdge, kNoEdge, kNoEdge, kNoEdge};
    bool prev_is_pseudo = false;
    bool next_is_pseudo = false;

    int r() const { return static_cast<int>(rim.size()); }
    // y_i with the boundary convention y_0 = j, y_r = l.
    EdgeId y(int i) const {
        if (i <= 0) return j;
        if (i >= r()) return l;
        return rim_edges[i - 1];
    }
    EdgeId t(int i) const { return spokes[i - 1]; }   // 1-based
    NodeId u(int i) const { return rim[i - 1]; }      // 1-based
};

// Everything needed to undo one contraction: the fan, the pseudo-node id,
// and (when produced by the solver) the penalty table whose plans realize
// each finite slot.
struct ContractionRecord {
    Fan fan;
    NodeId pseudo_node = kNoNode;
    std::map<EdgeId, EdgeId> replaced_edges;  // cutset ids survive unchanged
    PenaltyTable table;
};

bool is_wheel(const HalinEmbedding& h);

// All fans of a non-wheel Halin graph, ascending centre id.  Throws IsWheel.
std::vector<Fan> find_fans(const HalinEmbedding& h);

// Extract the fan rooted at a given centre.
Fan fan_at(const HalinEmbedding& h, NodeId centre);

// Contract fan F to a fresh pseudo-node.  Fan-internal edges are deleted,
// cutset edges keep their ids with one endpoint renamed.  The result is a
// valid Halin graph (Lemma: H/F is Halin).
std::pair<HalinEmbedding, ContractionRecord> contract_fan(const HalinEmbedding& h, const Fan& f);

// Replace the record's pseudo-node in `tour` by the rim path realizing
// `slot`.  The record's table must carry a plan for the slot.
std::vector<NodeId> expand_tour(const ContractionRecord& rec, const std::vector<NodeId>& tour,
                                int slot);
std::vector<NodeId> expand_with(const Fan& fan, NodeId pseudo, const PenaltyTable& table,
                                const std::vector<NodeId>& tour, int slot);

// Inner node sequence of a traversal (left boundary first): Left shape
// u_1..u_r,w; Right shape w,u_1..u_r; Centre shape u_1..u_g,w,u_{g+1}..u_r.
std::vector<NodeId> traversal_nodes(const Fan& f, Shape shape, int g);

}  // namespace halin
