#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "halin/types.hpp"

namespace halin {

// A pseudo-node slot is an (inner, outer) structure pair.
//
// Inner structure (a1, a2): a1 = 1 iff the stored traversal enters the
// contracted region through a tree edge at its left boundary (equivalently,
// the leftmost cycle edge inside the region is skipped); a2 likewise at the
// right boundary.  Named M=(0,0), L=(1,0), R=(0,1), B=(1,1).
//
// Outer structure (b1, b2): which context edge the tour uses just outside the
// region.  b1 in {1,2,5}: 1 = cycle edge before j, 2 = tree edge before j,
// 5 = the tour enters through k (uses k and l).  b2 in {3,4,6}: 3 = cycle
// edge after l, 4 = tree edge after l, 6 = the tour leaves through k (uses
// j and k).  (5,6) is impossible; the 8 remaining pairs times 4 inner values
// give 32 addressable slots.
inline constexpr int kNumSlots = 32;

inline constexpr int kOuterPairs[8][2] = {
    {1, 3}, {1, 4}, {1, 6}, {2, 3}, {2, 4}, {2, 6}, {5, 3}, {5, 4},
};

struct Slot {
    int a1, a2;  // inner bits
    int b1, b2;  // outer labels (1,2,5 / 3,4,6)
};

inline Slot slot_decode(int s) {
    const int inner = s >> 3;
    const int outer = s & 7;
    return Slot{(inner >> 1) & 1, inner & 1, kOuterPairs[outer][0], kOuterPairs[outer][1]};
}

inline int slot_encode(int a1, int a2, int b1, int b2) {
    int outer = -1;
    for (int i = 0; i < 8; ++i)
        if (kOuterPairs[i][0] == b1 && kOuterPairs[i][1] == b2) outer = i;
    return ((a1 << 1) | a2) << 3 | outer;
}

// How a stored traversal crosses the fan: along the rim and out through k on
// the right (Left, uses j+k), in through k and along the rim (Right, uses
// k+l), or a centre detour around rim edge y_g (uses j+l).
enum class Shape : uint8_t { Left = 0, Right = 1, Centre = 2 };

inline constexpr uint8_t kNoRimSlot = 0xff;

// Realizing choices for one finite slot: the traversal shape, the detour
// index for centre shapes, and the slot chosen at every rim position
// (kNoRimSlot where the rim node is not a pseudo-node).
struct SlotPlanView {
    Shape shape;
    int32_t g;
    std::span<const uint8_t> rim_slots;
};

struct PenaltyTable {
    std::array<Cost, kNumSlots> beta;
    bool pseudo = false;

    PenaltyTable() { beta.fill(0); }

    // Plan storage, flattened: one rim-slot row per slot.
    int rim_size() const { return rim_size_; }
    void init_plans(int rim_size) {
        rim_size_ = rim_size;
        plan_shape_.fill(static_cast<uint8_t>(Shape::Centre));
        plan_g_.fill(0);
        plan_rim_.assign(static_cast<size_t>(kNumSlots) * rim_size, kNoRimSlot);
    }
    void set_plan_head(int slot, Shape shape, int32_t g) {
        plan_shape_[slot] = static_cast<uint8_t>(shape);
        plan_g_[slot] = g;
    }
    uint8_t* plan_row(int slot) { return plan_rim_.data() + static_cast<size_t>(slot) * rim_size_; }
    SlotPlanView plan(int slot) const {
        return SlotPlanView{static_cast<Shape>(plan_shape_[slot]), plan_g_[slot],
                            {plan_rim_.data() + static_cast<size_t>(slot) * rim_size_,
                             static_cast<size_t>(rim_size_)}};
    }

  private:
    std::array<uint8_t, kNumSlots> plan_shape_{};
    std::array<int32_t, kNumSlots> plan_g_{};
    std::vector<uint8_t> plan_rim_;
    int rim_size_ = 0;
};

using PenaltyTables = std::map<NodeId, PenaltyTable>;

inline bool is_pseudo(const PenaltyTables& tables, NodeId v) {
    auto it = tables.find(v);
    return it != tables.end() && it->second.pseudo;
}

// Table storage shim: either the public map or the solver's dense vector of
// pseudo-node tables (ids base, base+1, ...).
struct TableLookup {
    const PenaltyTables* map = nullptr;
    const std::vector<PenaltyTable>* vec = nullptr;
    NodeId base = 0;

    const PenaltyTable* find(NodeId v) const {
        if (map) {
            auto it = map->find(v);
            return it != map->end() && it->second.pseudo ? &it->second : nullptr;
        }
        if (vec && v >= base && static_cast<size_t>(v - base) < vec->size())
            return &(*vec)[v - base];
        return nullptr;
    }
};

}  // namespace halin
