#include "halin/solver.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "halin/oracle.hpp"

namespace halin {

namespace {

// Interface codes between consecutive rim positions.
//   sType: type of the expanded tour edge just before the connecting rim
//          edge: 0 = cycle, 1 = tree.  Fixes the next pseudo-node's b1.
//   tDef:  the previous pseudo-node's committed b2 (0 = "3", 1 = "4"),
//          validated against the type of the edge following the connecting
//          rim edge; kFreeT when the previous node is original.
constexpr int kFreeT = 2;

inline int st_idx(int c1, int s, int t) { return (c1 * 2 + s) * 3 + t; }
constexpr int kNumPrefStates = 12;

inline int suf_idx(int s_in, int a1x, int c2, int tf) {
    return ((s_in * 2 + a1x) * 2 + c2) * 2 + tf;
}
constexpr int kNumSufStates = 16;

inline void relax(Cost& slot, Cost v) {
    if (v < slot) slot = v;
}

inline bool centre_slot(const Slot& s) {
    return (s.b1 == 1 || s.b1 == 2) && (s.b2 == 3 || s.b2 == 4);
}

struct FanCtx {
    const Fan* fan = nullptr;
    std::vector<const PenaltyTable*> tab;  // per rim position, null = original
    const CostModel* costs = nullptr;
    int k = 3;

    int r() const { return fan->r(); }
    const PenaltyTable* table_at(int pos1) const { return tab[pos1 - 1]; }  // 1-based
    bool rim_pseudo(int pos1) const { return tab[pos1 - 1] != nullptr; }
    // Window cost with pseudo-interior zeroing; interiors given as rim
    // positions 0..r+1 (0 = u_0, r+1 = u_{r+1}) or -1 for centre/attach.
    bool pos_pseudo(int idx) const {
        if (idx < 0) return false;
        if (idx == 0) return fan->prev_is_pseudo;
        if (idx == r() + 1) return fan->next_is_pseudo;
        return rim_pseudo(idx);
    }
    Cost w(EdgeId a, EdgeId b, EdgeId c, int mid1, int mid2) const {
        if (pos_pseudo(mid1) || pos_pseudo(mid2)) return 0;
        return triple_cost_raw(*costs, a, b, c, k);
    }
};

FanCtx make_ctx(const Fan& f, const TableLookup& tables, const CostModel& costs, int k) {
    FanCtx ctx;
    ctx.fan = &f;
    ctx.costs = &costs;
    ctx.k = k;
    ctx.tab.assign(f.r(), nullptr);
    for (int i = 0; i < f.r(); ++i) ctx.tab[i] = tables.find(f.rim[i]);
    return ctx;
}

// Rim window prefix sums.  A[i] = windows ending at y_2..y_i (window ending
// at y_m is (y_{m-2}, y_{m-1}, y_m), interiors u_{m-1}, u_m); B[i] = windows
// starting at y_i..y_{r-2} (window (y_m, y_{m+1}, y_{m+2}), interiors
// u_{m+1}, u_{m+2}), with y_0 = j and y_r = l.
struct RimWindows {
    std::vector<Cost> A, B;
};

RimWindows rim_windows(const FanCtx& ctx) {
    const Fan& f = *ctx.fan;
    const int r = ctx.r();
    RimWindows w;
    w.A.assign(r + 1, 0);
    for (int m = 2; m <= r - 1; ++m)
        w.A[m] = w.A[m - 1] + ctx.w(f.y(m - 2), f.y(m - 1), f.y(m), m - 1, m);
    w.B.assign(r + 2, 0);
    for (int m = r - 2; m >= 1; --m)
        w.B[m] = w.B[m + 1] + ctx.w(f.y(m), f.y(m + 1), f.y(m + 2), m + 1, m + 2);
    return w;
}

// ---- prefix chain: u_1 entered through j, rim positions passed in order ----

struct PrefixChain {
    // states[s0][i-1][st]: cost over positions 1..i, i = 1..r-1
    std::array<std::vector<std::array<Cost, kNumPrefStates>>, 2> states;
};

PrefixChain build_prefix(const FanCtx& ctx) {
    const int r = ctx.r();
    PrefixChain pc;
    for (int s0 = 0; s0 < 2; ++s0) {
        auto& vec = pc.states[s0];
        vec.resize(std::max(0, r - 1));
        if (r < 2) continue;
        auto& init = vec[0];
        init.fill(kInf);
        const PenaltyTable* T = ctx.table_at(1);
        if (!T) {
            init[st_idx(0, 0, kFreeT)] = 0;
        } else {
            for (int sl = 0; sl < kNumSlots; ++sl) {
                if (T->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (!centre_slot(s) || s.b1 != s0 + 1) continue;
                relax(init[st_idx(s.a1, s.a2, s.b2 - 3)], T->beta[sl]);
            }
        }
        for (int i = 2; i <= r - 1; ++i) {
            const auto& old = vec[i - 2];
            auto& cur = vec[i - 1];
            cur.fill(kInf);
            const PenaltyTable* U = ctx.table_at(i);
            for (int st = 0; st < kNumPrefStates; ++st) {
                if (old[st] >= kInf) continue;
                const int c1 = st / 6, s = (st / 3) % 2, t = st % 3;
                if (!U) {
                    if (t == 0 || t == kFreeT) relax(cur[st_idx(c1, 0, kFreeT)], old[st]);
                } else {
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (U->beta[sl] >= kInf) continue;
                        Slot sd = slot_decode(sl);
                        if (!centre_slot(sd) || sd.b1 != s + 1) continue;
                        if (!(t == kFreeT || t == sd.a1)) continue;
                        relax(cur[st_idx(c1, sd.a2, sd.b2 - 3)], old[st] + U->beta[sl]);
                    }
                }
            }
        }
    }
    return pc;
}

// Close the prefix at position g with a b2 = 6 slot (the traversal leaves
// through the spoke t_g).  g ranges over 1..r; g = r realizes the full left
// traversal, where the closing slot's a2 propagates into the fan slot.
struct Detour6 {
    // value[g-1][s0][c1][a2 of the closing slot, 0 when original]
    std::vector<std::array<std::array<std::array<Cost, 2>, 2>, 2>> value;
};

Detour6 build_detour6(const FanCtx& ctx, const PrefixChain& pc) {
    const int r = ctx.r();
    Detour6 d;
    d.value.resize(r);
    for (auto& a : d.value)
        for (auto& b : a)
            for (auto& c : b) c.fill(kInf);
    for (int s0 = 0; s0 < 2; ++s0) {
        // g = 1: u_1 entered through j, leaves through t_1.
        {
            const PenaltyTable* T = ctx.table_at(1);
            if (!T) {
                d.value[0][s0][1][0] = 0;
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot s = slot_decode(sl);
                    if (s.b2 != 6 || s.b1 != s0 + 1) continue;
                    relax(d.value[0][s0][s.a1][s.a2], T->beta[sl]);
                }
            }
        }
        for (int g = 2; g <= r; ++g) {
            const auto& old = pc.states[s0][g - 2];
            const PenaltyTable* T = ctx.table_at(g);
            for (int st = 0; st < kNumPrefStates; ++st) {
                if (old[st] >= kInf) continue;
                const int c1 = st / 6, s = (st / 3) % 2, t = st % 3;
                if (!T) {
                    if (t == 1 || t == kFreeT) relax(d.value[g - 1][s0][c1][0], old[st]);
                } else {
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (T->beta[sl] >= kInf) continue;
                        Slot sd = slot_decode(sl);
                        if (sd.b2 != 6 || sd.b1 != s + 1) continue;
                        if (!(t == kFreeT || t == sd.a1)) continue;
                        relax(d.value[g - 1][s0][c1][sd.a2], old[st] + T->beta[sl]);
                    }
                }
            }
        }
    }
    return d;
}

// ---- suffix chain: positions i..r passed along the rim and out through l ----

struct SuffixChain {
    // sufR[i-2][st]: segment i..r entered through y_{i-1}, i = 2..r
    std::vector<std::array<Cost, kNumSufStates>> sufR;
    // suf5[i-1][a1][c2][tf]: segment i..r entered through t_i, i = 1..r;
    // a1 is the head slot's inner-left bit (0 when the head is original).
    std::vector<std::array<std::array<std::array<Cost, 2>, 2>, 2>> suf5;
};

SuffixChain build_suffix(const FanCtx& ctx) {
    const int r = ctx.r();
    SuffixChain sc;
    sc.sufR.resize(std::max(0, r - 1));
    sc.suf5.resize(r);
    for (auto& a : sc.suf5)
        for (auto& b : a)
            for (auto& c : b) c.fill(kInf);

    if (r >= 2) {
        auto& base = sc.sufR[r - 2];
        base.fill(kInf);
        const PenaltyTable* T = ctx.table_at(r);
        if (!T) {
            for (int s_in = 0; s_in < 2; ++s_in)
                for (int tf = 0; tf < 2; ++tf) base[suf_idx(s_in, 0, 0, tf)] = 0;
        } else {
            for (int sl = 0; sl < kNumSlots; ++sl) {
                if (T->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (!centre_slot(s)) continue;
                relax(base[suf_idx(s.b1 - 1, s.a1, s.a2, s.b2 - 3)], T->beta[sl]);
            }
        }
        for (int i = r - 1; i >= 2; --i) {
            const auto& nxt = sc.sufR[i - 1];
            auto& cur = sc.sufR[i - 2];
            cur.fill(kInf);
            const PenaltyTable* U = ctx.table_at(i);
            for (int c2 = 0; c2 < 2; ++c2) {
                for (int tf = 0; tf < 2; ++tf) {
                    if (!U) {
                        Cost best = std::min(nxt[suf_idx(0, 0, c2, tf)], nxt[suf_idx(0, 1, c2, tf)]);
                        relax(cur[suf_idx(0, 0, c2, tf)], best);
                        relax(cur[suf_idx(1, 0, c2, tf)], best);
                    } else {
                        for (int sl = 0; sl < kNumSlots; ++sl) {
                            if (U->beta[sl] >= kInf) continue;
                            Slot s = slot_decode(sl);
                            if (!centre_slot(s)) continue;
                            Cost tail = nxt[suf_idx(s.a2, s.b2 - 3, c2, tf)];
                            if (tail >= kInf) continue;
                            relax(cur[suf_idx(s.b1 - 1, s.a1, c2, tf)], U->beta[sl] + tail);
                        }
                    }
                }
            }
        }
    }

    // suf5[i]: head entered through the spoke.
    for (int i = 1; i <= r; ++i) {
        const PenaltyTable* T = ctx.table_at(i);
        auto& out = sc.suf5[i - 1];
        if (i == r) {
            if (!T) {
                out[0][1][0] = out[0][1][1] = 0;
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot s = slot_decode(sl);
                    if (s.b1 != 5) continue;
                    relax(out[s.a1][s.a2][s.b2 - 3], T->beta[sl]);
                }
            }
            continue;
        }
        const auto& nxt = sc.sufR[i - 1];
        for (int c2 = 0; c2 < 2; ++c2) {
            for (int tf = 0; tf < 2; ++tf) {
                if (!T) {
                    Cost best = std::min(nxt[suf_idx(1, 0, c2, tf)], nxt[suf_idx(1, 1, c2, tf)]);
                    relax(out[0][c2][tf], best);
                } else {
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (T->beta[sl] >= kInf) continue;
                        Slot s = slot_decode(sl);
                        if (s.b1 != 5) continue;
                        Cost tail = nxt[suf_idx(s.a2, s.b2 - 3, c2, tf)];
                        if (tail >= kInf) continue;
                        relax(out[s.a1][c2][tf], T->beta[sl] + tail);
                    }
                }
            }
        }
    }
    return sc;
}

// ---- plan reconstruction -------------------------------------------------

// Walks the prefix chain backwards from the closing step at position g,
// filling plan.rim_slots[0..g-1].  Mirrors the deterministic forward scan
// order, accepting the first transition that reproduces each stored value.
void reconstruct_prefix(const FanCtx& ctx, const PrefixChain& pc, int s0, int g, int c1,
                        int close_a2, Cost chain_value, uint8_t* rim_slots) {
    const int r = ctx.r();
    (void)r;
    // Closing step at position g.
    int cur_state = -1;
    Cost cur_value = 0;
    {
        const PenaltyTable* T = ctx.table_at(g);
        if (g == 1) {
            if (!T) return;  // nothing to record
            for (int sl = 0; sl < kNumSlots; ++sl) {
                if (T->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (s.b2 != 6 || s.b1 != s0 + 1 || s.a1 != c1) continue;
                if (close_a2 >= 0 && s.a2 != close_a2) continue;
                if (T->beta[sl] == chain_value) {
                    rim_slots[0] = static_cast<uint8_t>(sl);
                    return;
                }
            }
            fail(Errc::InfeasibleTables, "prefix reconstruction failed at the head");
        }
        const auto& old = pc.states[s0][g - 2];
        bool found = false;
        for (int st = 0; st < kNumPrefStates && !found; ++st) {
            if (old[st] >= kInf) continue;
            const int oc1 = st / 6, s = (st / 3) % 2, t = st % 3;
            if (oc1 != c1) continue;
            if (!T) {
                if ((t == 1 || t == kFreeT) && old[st] == chain_value) {
                    cur_state = st;
                    cur_value = old[st];
                    found = true;
                }
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot sd = slot_decode(sl);
                    if (sd.b2 != 6 || sd.b1 != s + 1) continue;
                    if (!(t == kFreeT || t == sd.a1)) continue;
                    if (close_a2 >= 0 && sd.a2 != close_a2) continue;
                    if (old[st] + T->beta[sl] == chain_value) {
                        rim_slots[g - 1] = static_cast<uint8_t>(sl);
                        cur_state = st;
                        cur_value = old[st];
                        found = true;
                        break;
                    }
                }
            }
        }
        if (!found) fail(Errc::InfeasibleTables, "prefix reconstruction failed at the close");
    }
    // Walk positions g-1 .. 2 back to the init at position 1.
    for (int i = g - 1; i >= 2; --i) {
        const auto& old = pc.states[s0][i - 2];
        const PenaltyTable* U = ctx.table_at(i);
        const int c1_cur = cur_state / 6, s_cur = (cur_state / 3) % 2, t_cur = cur_state % 3;
        bool found = false;
        for (int st = 0; st < kNumPrefStates && !found; ++st) {
            if (old[st] >= kInf) continue;
            const int oc1 = st / 6, s = (st / 3) % 2, t = st % 3;
            if (oc1 != c1_cur) continue;
            if (!U) {
                if (s_cur == 0 && t_cur == kFreeT && (t == 0 || t == kFreeT) &&
                    old[st] == cur_value) {
                    cur_state = st;
                    found = true;
                }
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (U->beta[sl] >= kInf) continue;
                    Slot sd = slot_decode(sl);
                    if (!centre_slot(sd) || sd.b1 != s + 1) continue;
                    if (!(t == kFreeT || t == sd.a1)) continue;
                    if (sd.a2 != s_cur || sd.b2 - 3 != t_cur) continue;
                    if (old[st] + U->beta[sl] == cur_value) {
                        rim_slots[i - 1] = static_cast<uint8_t>(sl);
                        cur_state = st;
                        cur_value = old[st];
                        found = true;
                        break;
                    }
                }
            }
        }
        if (!found) fail(Errc::InfeasibleTables, "prefix reconstruction failed mid-chain");
    }
    // Init at position 1.
    {
        const PenaltyTable* T = ctx.table_at(1);
        const int c1_cur = cur_state / 6, s_cur = (cur_state / 3) % 2, t_cur = cur_state % 3;
        if (!T) {
            if (!(c1_cur == 0 && s_cur == 0 && t_cur == kFreeT && cur_value == 0))
                fail(Errc::InfeasibleTables, "prefix reconstruction failed at init");
            return;
        }
        for (int sl = 0; sl < kNumSlots; ++sl) {
            if (T->beta[sl] >= kInf) continue;
            Slot s = slot_decode(sl);
            if (!centre_slot(s) || s.b1 != s0 + 1) continue;
            if (s.a1 != c1_cur || s.a2 != s_cur || s.b2 - 3 != t_cur) continue;
            if (T->beta[sl] == cur_value) {
                rim_slots[0] = static_cast<uint8_t>(sl);
                return;
            }
        }
        fail(Errc::InfeasibleTables, "prefix reconstruction failed at init slot");
    }
}

// Walks the suffix chain forwards from the head at position i.
void reconstruct_suffix(const FanCtx& ctx, const SuffixChain& sc, int i, int head_a1, int c2,
                        int tf, Cost chain_value, uint8_t* rim_slots) {
    const int r = ctx.r();
    // Head at position i (entered through the spoke).
    int s_in = -1, a1x = -1;
    Cost remaining = chain_value;
    {
        const PenaltyTable* T = ctx.table_at(i);
        if (i == r) {
            if (!T) return;
            for (int sl = 0; sl < kNumSlots; ++sl) {
                if (T->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (s.b1 != 5 || s.a2 != c2 || s.b2 - 3 != tf) continue;
                if (head_a1 >= 0 && s.a1 != head_a1) continue;
                if (T->beta[sl] == chain_value) {
                    rim_slots[r - 1] = static_cast<uint8_t>(sl);
                    return;
                }
            }
            fail(Errc::InfeasibleTables, "suffix reconstruction failed at tail head");
        }
        const auto& nxt = sc.sufR[i - 1];
        bool found = false;
        if (!T) {
            for (int a = 0; a < 2 && !found; ++a) {
                if (nxt[suf_idx(1, a, c2, tf)] == remaining) {
                    s_in = 1;
                    a1x = a;
                    found = true;
                }
            }
        } else {
            for (int sl = 0; sl < kNumSlots && !found; ++sl) {
                if (T->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (s.b1 != 5) continue;
                if (head_a1 >= 0 && s.a1 != head_a1) continue;
                Cost tail = nxt[suf_idx(s.a2, s.b2 - 3, c2, tf)];
                if (tail >= kInf) continue;
                if (T->beta[sl] + tail == remaining) {
                    rim_slots[i - 1] = static_cast<uint8_t>(sl);
                    s_in = s.a2;
                    a1x = s.b2 - 3;
                    remaining = tail;
                    found = true;
                }
            }
        }
        if (!found) fail(Errc::InfeasibleTables, "suffix reconstruction failed at head");
    }
    // Positions i+1..r.
    for (int p = i + 1; p <= r; ++p) {
        const PenaltyTable* T = ctx.table_at(p);
        bool found = false;
        if (p == r) {
            if (!T) {
                if (a1x == 0 && c2 == 0 && remaining == 0) return;
                fail(Errc::InfeasibleTables, "suffix reconstruction failed at base");
            }
            for (int sl = 0; sl < kNumSlots; ++sl) {
                if (T->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (!centre_slot(s)) continue;
                if (s.b1 - 1 != s_in || s.a1 != a1x || s.a2 != c2 || s.b2 - 3 != tf) continue;
                if (T->beta[sl] == remaining) {
                    rim_slots[r - 1] = static_cast<uint8_t>(sl);
                    return;
                }
            }
            fail(Errc::InfeasibleTables, "suffix reconstruction failed at the last position");
        }
        const auto& nxt = sc.sufR[p - 1];
        if (!T) {
            if (a1x != 0) fail(Errc::InfeasibleTables, "suffix reconstruction type mismatch");
            for (int a = 0; a < 2 && !found; ++a) {
                if (nxt[suf_idx(0, a, c2, tf)] == remaining) {
                    s_in = 0;
                    a1x = a;
                    found = true;
                }
            }
        } else {
            for (int sl = 0; sl < kNumSlots && !found; ++sl) {
                if (T->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (!centre_slot(s)) continue;
                if (s.b1 - 1 != s_in || s.a1 != a1x) continue;
                Cost tail = nxt[suf_idx(s.a2, s.b2 - 3, c2, tf)];
                if (tail >= kInf) continue;
                if (T->beta[sl] + tail == remaining) {
                    rim_slots[p - 1] = static_cast<uint8_t>(sl);
                    s_in = s.a2;
                    a1x = s.b2 - 3;
                    remaining = tail;
                    found = true;
                }
            }
        }
        if (!found) fail(Errc::InfeasibleTables, "suffix reconstruction failed mid-chain");
    }
}

}  // namespace

PenaltyTables init_penalties(const HalinEmbedding& h) {
    PenaltyTables out;
    for (NodeId v : h.cycle()) {
        PenaltyTable t;
        t.pseudo = h.is_pseudo(v);
        out.emplace(v, std::move(t));
    }
    return out;
}

static BasePathCosts base_path_costs_impl(const Fan& f, const TableLookup& tables,
                                          const CostModel& costs, int k) {
    FanCtx ctx = make_ctx(f, tables, costs, k);
    const int r = f.r();
    RimWindows rw = rim_windows(ctx);
    BasePathCosts out;
    out.K = rw.A[r - 1] + ctx.w(f.y(r - 2), f.y(r - 1), f.l, r - 1, r);
    out.K_detour.assign(r - 1, 0);
    for (int g = 1; g <= r - 1; ++g) {
        Cost v = rw.A[g - 1];
        if (g >= 2) v += ctx.w(f.y(g - 2), f.y(g - 1), f.t(g), g - 1, g);
        v += ctx.w(f.y(g - 1), f.t(g), f.t(g + 1), g, -1);
        v += ctx.w(f.t(g), f.t(g + 1), f.y(g + 1), -1, g + 1);
        if (g <= r - 2) v += ctx.w(f.t(g + 1), f.y(g + 1), f.y(g + 2), g + 1, g + 2);
        v += rw.B[g + 1];
        out.K_detour[g - 1] = v;
    }
    return out;
}

BasePathCosts base_path_costs(const Fan& f, const PenaltyTables& tables, const CostModel& costs,
                              int k) {
    return base_path_costs_impl(f, TableLookup{&tables, nullptr, 0}, costs, k);
}

static PenaltyTable beta_update_impl(const Fan& f, const TableLookup& tables,
                                     const CostModel& costs, int k) {
    FanCtx ctx = make_ctx(f, tables, costs, k);
    const int r = f.r();
    RimWindows rw = rim_windows(ctx);
    PrefixChain pc = build_prefix(ctx);
    Detour6 d6 = build_detour6(ctx, pc);
    SuffixChain sc = build_suffix(ctx);

    PenaltyTable out;
    out.beta.fill(kInf);
    out.pseudo = true;
    out.init_plans(r);

    // Left traversal: alpha_s, j, y_1..y_{r-1}, t_r, k, alpha_6.
    for (int s0 = 0; s0 < 2; ++s0) {
        Cost fixed = ctx.w(f.alpha[s0], f.j, f.y(1), 0, 1) + rw.A[r - 1] +
                     ctx.w(f.y(r - 2), f.y(r - 1), f.t(r), r - 1, r) +
                     ctx.w(f.y(r - 1), f.t(r), f.k, r, -1) +
                     ctx.w(f.t(r), f.k, f.alpha[5], -1, -1);
        for (int c1 = 0; c1 < 2; ++c1) {
            for (int c2 = 0; c2 < 2; ++c2) {
                Cost chain = d6.value[r - 1][s0][c1][c2];
                if (chain >= kInf) continue;
                int sl = slot_encode(c1, c2, s0 + 1, 6);
                out.beta[sl] = fixed + chain;
                out.set_plan_head(sl, Shape::Left, r);
                reconstruct_prefix(ctx, pc, s0, r, c1, c2, chain, out.plan_row(sl));
            }
        }
    }

    // Right traversal: alpha_5, k, t_1, y_1..y_{r-1}, l, alpha_t.
    for (int t = 0; t < 2; ++t) {
        Cost fixed = ctx.w(f.alpha[4], f.k, f.t(1), -1, -1) + ctx.w(f.k, f.t(1), f.y(1), -1, 1) +
                     ctx.w(f.t(1), f.y(1), f.y(2), 1, 2) + rw.B[1] +
                     ctx.w(f.y(r - 1), f.l, f.alpha[2 + t], r, r + 1);
        for (int a1 = 0; a1 < 2; ++a1) {
            for (int c2 = 0; c2 < 2; ++c2) {
                Cost chain = sc.suf5[0][a1][c2][t];
                if (chain >= kInf) continue;
                int sl = slot_encode(a1, c2, 5, t + 3);
                out.beta[sl] = fixed + chain;
                out.set_plan_head(sl, Shape::Right, 0);
                reconstruct_suffix(ctx, sc, 1, a1, c2, t, chain, out.plan_row(sl));
            }
        }
    }

    // Centre traversals: alpha_s, j, ..detour around y_g.., l, alpha_t.
    for (int s0 = 0; s0 < 2; ++s0) {
        for (int t = 0; t < 2; ++t) {
            for (int c1 = 0; c1 < 2; ++c1) {
                for (int c2 = 0; c2 < 2; ++c2) {
                    Cost best = kInf;
                    int best_g = -1;
                    Cost best_pref = kInf, best_suf = kInf;
                    for (int g = 1; g <= r - 1; ++g) {
                        Cost pref = std::min(d6.value[g - 1][s0][c1][0],
                                             d6.value[g - 1][s0][c1][1]);
                        Cost suf = std::min(sc.suf5[g][0][c2][t],
                                            sc.suf5[g][1][c2][t]);  // position g+1
                        if (pref >= kInf || suf >= kInf) continue;
                        Cost v = pref + suf;
                        v += g >= 2 ? ctx.w(f.alpha[s0], f.j, f.y(1), 0, 1)
                                    : ctx.w(f.alpha[s0], f.j, f.t(1), 0, 1);
                        v += rw.A[g - 1];
                        if (g >= 2) v += ctx.w(f.y(g - 2), f.y(g - 1), f.t(g), g - 1, g);
                        v += ctx.w(f.y(g - 1), f.t(g), f.t(g + 1), g, -1);
                        v += ctx.w(f.t(g), f.t(g + 1), f.y(g + 1), -1, g + 1);
                        if (g <= r - 2) v += ctx.w(f.t(g + 1), f.y(g + 1), f.y(g + 2), g + 1, g + 2);
                        v += rw.B[g + 1];
                        v += g <= r - 2 ? ctx.w(f.y(r - 1), f.l, f.alpha[2 + t], r, r + 1)
                                        : ctx.w(f.t(r), f.l, f.alpha[2 + t], r, r + 1);
                        if (v < best) {
                            best = v;
                            best_g = g;
                            best_pref = pref;
                            best_suf = suf;
                        }
                    }
                    if (best >= kInf) continue;
                    int sl = slot_encode(c1, c2, s0 + 1, t + 3);
                    out.beta[sl] = best;
                    out.set_plan_head(sl, Shape::Centre, best_g);
                    reconstruct_prefix(ctx, pc, s0, best_g, c1, -1, best_pref, out.plan_row(sl));
                    reconstruct_suffix(ctx, sc, best_g + 1, -1, c2, t, best_suf, out.plan_row(sl));
                }
            }
        }
    }
    return out;
}

PenaltyTable beta_update(const Fan& f, const PenaltyTables& tables, const CostModel& costs,
                         int k) {
    return beta_update_impl(f, TableLookup{&tables, nullptr, 0}, costs, k);
}

PseudoFanValue chain_pseudo_fan(const Fan& f, const PenaltyTables& tables, const CostModel& costs,
                                int k) {
    FanCtx ctx = make_ctx(f, TableLookup{&tables, nullptr, 0}, costs, k);
    const int r = f.r();
    RimWindows rw = rim_windows(ctx);
    PrefixChain pc = build_prefix(ctx);
    SuffixChain sc = build_suffix(ctx);

    PseudoFanValue out;
    out.prefix.resize(std::max(0, r - 1));
    out.suffix.resize(std::max(0, r - 1));
    for (int i = 1; i <= r - 1; ++i) {
        for (int c1 = 0; c1 < 2; ++c1)
            for (int c2 = 0; c2 < 2; ++c2)
                for (int d1 = 0; d1 < 2; ++d1)
                    for (int d2 = 0; d2 < 2; ++d2) {
                        Cost chain = std::min(pc.states[d1][i - 1][st_idx(c1, c2, d2)],
                                              pc.states[d1][i - 1][st_idx(c1, c2, kFreeT)]);
                        out.prefix[i - 1][c1][c2][d1][d2] =
                            chain >= kInf ? kInf : chain + rw.A[i];
                    }
    }
    for (int i = 2; i <= r; ++i) {
        for (int c1 = 0; c1 < 2; ++c1)
            for (int c2 = 0; c2 < 2; ++c2)
                for (int d1 = 0; d1 < 2; ++d1)
                    for (int d2 = 0; d2 < 2; ++d2) {
                        Cost chain = sc.sufR[i - 2][suf_idx(d1, c1, c2, d2)];
                        out.suffix[i - 2][c1][c2][d1][d2] =
                            chain >= kInf ? kInf : chain + rw.B[i - 1];
                    }
    }
    return out;
}

// ---- wheel procedure -----------------------------------------------------

namespace {

struct WheelCtx {
    NodeId hub = kNoNode;
    std::vector<NodeId> rim;
    std::vector<EdgeId> rim_edge;  // rim_edge[m] = (rim[m], rim[m+1])
    std::vector<EdgeId> spoke;
    std::vector<const PenaltyTable*> tab;
    const CostModel* costs = nullptr;
    int k = 3;

    int r() const { return static_cast<int>(rim.size()); }
    int mod(int i) const { return ((i % r()) + r()) % r(); }
    EdgeId e(int i) const { return rim_edge[mod(i)]; }
    EdgeId t(int i) const { return spoke[mod(i)]; }
    bool pseudo(int i) const { return tab[mod(i)] != nullptr; }
    Cost w(EdgeId a, EdgeId b, EdgeId c, int mid1, int mid2) const {
        // mid = rim index, or -1 for the hub
        bool p1 = mid1 >= 0 && pseudo(mid1);
        bool p2 = mid2 >= 0 && pseudo(mid2);
        return (p1 || p2) ? 0 : triple_cost_raw(*costs, a, b, c, k);
    }
};

// Generic "pass through a rim node along the cycle" transition.
template <typename Relax>
void wheel_mid_step(const WheelCtx& ctx, int pos, int s, int t, Cost base, Relax relax_fn) {
    const PenaltyTable* T = ctx.tab[ctx.mod(pos)];
    if (!T) {
        if (t == 0 || t == kFreeT) relax_fn(0, kFreeT, base, kNoRimSlot);
    } else {
        for (int sl = 0; sl < kNumSlots; ++sl) {
            if (T->beta[sl] >= kInf) continue;
            Slot sd = slot_decode(sl);
            if (!centre_slot(sd) || sd.b1 != s + 1) continue;
            if (!(t == kFreeT || t == sd.a1)) continue;
            relax_fn(sd.a2, sd.b2 - 3, base + T->beta[sl], sl);
        }
    }
}

}  // namespace

WheelResult solve_wheel(const HalinEmbedding& w, const PenaltyTables& tables,
                        const CostModel& costs, int k) {
    if (!is_wheel(w)) fail(Errc::NotAFan, "solve_wheel requires a wheel");
    WheelCtx ctx;
    ctx.costs = &costs;
    ctx.k = k;
    for (NodeId v = 0; v < w.capacity(); ++v)
        if (w.is_internal(v)) ctx.hub = v;
    ctx.rim = w.cycle();
    const int r = static_cast<int>(ctx.rim.size());
    for (NodeId v : ctx.rim) {
        ctx.rim_edge.push_back(w.cycle_edge(v));
        ctx.spoke.push_back(w.spoke(v));
        auto it = tables.find(v);
        ctx.tab.push_back(it != tables.end() && it->second.pseudo ? &it->second : nullptr);
    }

    // Window base: all cyclic rim windows; phi(b): delta for skipping e_b.
    Cost win_base = 0;
    for (int m = 0; m < r; ++m) win_base += ctx.w(ctx.e(m - 2), ctx.e(m - 1), ctx.e(m), m - 1, m);
    auto phi = [&](int b) {
        Cost v = 0;
        v -= ctx.w(ctx.e(b - 2), ctx.e(b - 1), ctx.e(b), b - 1, b);
        v -= ctx.w(ctx.e(b - 1), ctx.e(b), ctx.e(b + 1), b, b + 1);
        v -= ctx.w(ctx.e(b), ctx.e(b + 1), ctx.e(b + 2), b + 1, b + 2);
        v += ctx.w(ctx.e(b - 2), ctx.e(b - 1), ctx.t(b), b - 1, b);
        v += ctx.w(ctx.e(b - 1), ctx.t(b), ctx.t(b + 1), b, -1);
        v += ctx.w(ctx.t(b), ctx.t(b + 1), ctx.e(b + 1), -1, b + 1);
        v += ctx.w(ctx.t(b + 1), ctx.e(b + 1), ctx.e(b + 2), b + 1, b + 2);
        return v;
    };

    // Chains.  The cycle is cut across e_{r-1} = (rim[r-1], rim[0]).
    //
    // M[i]: chain over positions i..r-1, entered at i along the rim;
    // indexed by (s_in, a1x) and the exported cross-state (s_out, t_out).
    const int kX = 6;  // cross-states: s_out * 3 + t_out
    auto xidx = [](int s_out, int t_out) { return s_out * 3 + t_out; };
    std::vector<std::array<Cost, 4 * kX>> M(r);
    auto m_at = [&](int i, int s_in, int a1x, int x) -> Cost& {
        return M[i][(s_in * 2 + a1x) * kX + x];
    };
    for (int i = r - 1; i >= 1; --i) {
        M[i].fill(kInf);
        const PenaltyTable* T = ctx.tab[i];
        if (i == r - 1) {
            if (!T) {
                for (int s_in = 0; s_in < 2; ++s_in)
                    m_at(i, s_in, 0, xidx(0, kFreeT)) = 0;
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot s = slot_decode(sl);
                    if (!centre_slot(s)) continue;
                    relax(m_at(i, s.b1 - 1, s.a1, xidx(s.a2, s.b2 - 3)), T->beta[sl]);
                }
            }
            continue;
        }
        for (int x = 0; x < kX; ++x) {
            if (!T) {
                Cost best = std::min(m_at(i + 1, 0, 0, x), m_at(i + 1, 0, 1, x));
                if (best < kInf)
                    for (int s_in = 0; s_in < 2; ++s_in) relax(m_at(i, s_in, 0, x), best);
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot s = slot_decode(sl);
                    if (!centre_slot(s)) continue;
                    Cost tail = m_at(i + 1, s.a2, s.b2 - 3, x);
                    if (tail >= kInf) continue;
                    relax(m_at(i, s.b1 - 1, s.a1, x), T->beta[sl] + tail);
                }
            }
        }
    }

    // HeadSuf[i]: positions i..r-1 with i entered through its spoke.
    std::vector<std::array<Cost, kX>> head_suf(r);
    for (int i = 1; i <= r - 1; ++i) {
        head_suf[i].fill(kInf);
        const PenaltyTable* T = ctx.tab[i];
        if (i == r - 1) {
            if (!T) {
                head_suf[i][xidx(1, kFreeT)] = 0;
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot s = slot_decode(sl);
                    if (s.b1 != 5) continue;
                    relax(head_suf[i][xidx(s.a2, s.b2 - 3)], T->beta[sl]);
                }
            }
            continue;
        }
        for (int x = 0; x < kX; ++x) {
            if (!T) {
                Cost best = std::min(m_at(i + 1, 1, 0, x), m_at(i + 1, 1, 1, x));
                relax(head_suf[i][x], best);
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot s = slot_decode(sl);
                    if (s.b1 != 5) continue;
                    Cost tail = m_at(i + 1, s.a2, s.b2 - 3, x);
                    if (tail >= kInf) continue;
                    relax(head_suf[i][x], T->beta[sl] + tail);
                }
            }
        }
    }

    // FwW[j]: forward chain over positions 0..j given the cross-state, each
    // position passed along the rim.  fw[j][x][state(s,t)].
    std::vector<std::array<Cost, kX * 6>> fw(std::max(1, r - 1));
    auto fw_at = [&](int jdx, int x, int s, int t) -> Cost& {
        return fw[jdx][x * 6 + s * 3 + t];
    };
    {
        fw[0].fill(kInf);
        const PenaltyTable* T = ctx.tab[0];
        for (int x = 0; x < kX; ++x) {
            int sX = x / 3, tX = x % 3;
            if (!T) {
                if (tX == 0 || tX == kFreeT) relax(fw_at(0, x, 0, kFreeT), 0);
            } else {
                for (int sl = 0; sl < kNumSlots; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot s = slot_decode(sl);
                    if (!centre_slot(s) || s.b1 != sX + 1) continue;
                    if (!(tX == kFreeT || tX == s.a1)) continue;
                    relax(fw_at(0, x, s.a2, s.b2 - 3), T->beta[sl]);
                }
            }
        }
        for (int jdx = 1; jdx <= r - 2; ++jdx) {
            fw[jdx].fill(kInf);
            for (int x = 0; x < kX; ++x) {
                for (int s = 0; s < 2; ++s) {
                    for (int t = 0; t < 3; ++t) {
                        Cost base = fw_at(jdx - 1, x, s, t);
                        if (base >= kInf) continue;
                        wheel_mid_step(ctx, jdx, s, t, base,
                                       [&](int s2, int t2, Cost v, uint8_t) {
                                           relax(fw_at(jdx, x, s2, t2), v);
                                       });
                    }
                }
            }
        }
    }

    // TailPre[j][x]: positions 0..j with j leaving through its spoke.
    std::vector<std::array<Cost, kX>> tail_pre(std::max(1, r - 1));
    for (int jdx = 0; jdx <= r - 2; ++jdx) {
        tail_pre[jdx].fill(kInf);
        const PenaltyTable* T = ctx.tab[jdx];
        for (int x = 0; x < kX; ++x) {
            int sX = x / 3, tX = x % 3;
            if (jdx == 0) {
                if (!T) {
                    if (tX == 1 || tX == kFreeT) tail_pre[0][x] = 0;
                } else {
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (T->beta[sl] >= kInf) continue;
                        Slot s = slot_decode(sl);
                        if (s.b2 != 6 || s.b1 != sX + 1) continue;
                        if (!(tX == kFreeT || tX == s.a1)) continue;
                        relax(tail_pre[0][x], T->beta[sl]);
                    }
                }
                continue;
            }
            for (int s = 0; s < 2; ++s) {
                for (int t = 0; t < 3; ++t) {
                    Cost base = fw_at(jdx - 1, x, s, t);
                    if (base >= kInf) continue;
                    if (!T) {
                        if (t == 1 || t == kFreeT) relax(tail_pre[jdx][x], base);
                    } else {
                        for (int sl = 0; sl < kNumSlots; ++sl) {
                            if (T->beta[sl] >= kInf) continue;
                            Slot sd = slot_decode(sl);
                            if (sd.b2 != 6 || sd.b1 != s + 1) continue;
                            if (!(t == kFreeT || t == sd.a1)) continue;
                            relax(tail_pre[jdx][x], base + T->beta[sl]);
                        }
                    }
                }
            }
        }
    }

    // Linear chain for skipping the cut edge e_{r-1}: head at position 0
    // (entered through its spoke), tail at r-1 (leaving through its spoke).
    std::vector<std::array<Cost, 6>> lin(std::max(1, r - 1));
    Cost lin_close = kInf;
    {
        lin[0].fill(kInf);
        const PenaltyTable* T = ctx.tab[0];
        if (!T) {
            lin[0][1 * 3 + kFreeT] = 0;
        } else {
            for (int sl = 0; sl < kNumSlots; ++sl) {
                if (T->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (s.b1 != 5) continue;
                relax(lin[0][s.a2 * 3 + (s.b2 - 3)], T->beta[sl]);
            }
        }
        for (int i = 1; i <= r - 2; ++i) {
            lin[i].fill(kInf);
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 3; ++t) {
                    Cost base = lin[i - 1][s * 3 + t];
                    if (base >= kInf) continue;
                    wheel_mid_step(ctx, i, s, t, base, [&](int s2, int t2, Cost v, uint8_t) {
                        relax(lin[i][s2 * 3 + t2], v);
                    });
                }
        }
        const PenaltyTable* T2 = ctx.tab[r - 1];
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 3; ++t) {
                Cost base = lin[r - 2][s * 3 + t];
                if (base >= kInf) continue;
                if (!T2) {
                    if (t == 1 || t == kFreeT) relax(lin_close, base);
                } else {
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (T2->beta[sl] >= kInf) continue;
                        Slot sd = slot_decode(sl);
                        if (sd.b2 != 6 || sd.b1 != s + 1) continue;
                        if (!(t == kFreeT || t == sd.a1)) continue;
                        relax(lin_close, base + T2->beta[sl]);
                    }
                }
            }
    }

    // Pick the skipped edge.
    Cost best_val = kInf;
    int best_b = -1;
    for (int b = 0; b < r; ++b) {
        Cost chain;
        if (b == r - 1) {
            chain = lin_close;
        } else {
            chain = kInf;
            for (int x = 0; x < kX; ++x)
                chain = std::min(chain, sat_add(head_suf[b + 1][x], tail_pre[b][x]));
        }
        if (chain >= kInf) continue;
        Cost z = win_base + phi(b) + chain;
        if (z < best_val || (z == best_val && best_b >= 0 && ctx.e(b) < ctx.e(best_b))) {
            best_val = z;
            best_b = b;
        }
    }
    if (best_b < 0) fail(Errc::InfeasibleTables, "wheel chains are all infeasible");

    // Reconstruct slot choices for the winning skip.
    std::vector<uint8_t> choice(r, kNoRimSlot);

    if (best_b == r - 1) {
        // Reconstruct the linear chain.
        int cur_s = -1, cur_t = -1;
        Cost rem = lin_close;
        const PenaltyTable* T2 = ctx.tab[r - 1];
        bool found = false;
        for (int s = 0; s < 2 && !found; ++s)
            for (int t = 0; t < 3 && !found; ++t) {
                Cost base = lin[r - 2][s * 3 + t];
                if (base >= kInf) continue;
                if (!T2) {
                    if ((t == 1 || t == kFreeT) && base == rem) {
                        cur_s = s;
                        cur_t = t;
                        found = true;
                    }
                } else {
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (T2->beta[sl] >= kInf) continue;
                        Slot sd = slot_decode(sl);
                        if (sd.b2 != 6 || sd.b1 != s + 1) continue;
                        if (!(t == kFreeT || t == sd.a1)) continue;
                        if (base + T2->beta[sl] == rem) {
                            choice[r - 1] = static_cast<uint8_t>(sl);
                            cur_s = s;
                            cur_t = t;
                            rem = base;
                            found = true;
                            break;
                        }
                    }
                }
            }
        if (!found) fail(Errc::InfeasibleTables, "wheel linear reconstruction failed");
        for (int i = r - 2; i >= 1; --i) {
            found = false;
            for (int s = 0; s < 2 && !found; ++s)
                for (int t = 0; t < 3 && !found; ++t) {
                    Cost base = lin[i - 1][s * 3 + t];
                    if (base >= kInf) continue;
                    const PenaltyTable* T = ctx.tab[i];
                    if (!T) {
                        if (cur_s == 0 && cur_t == kFreeT && (t == 0 || t == kFreeT) &&
                            base == rem) {
                            cur_s = s;
                            cur_t = t;
                            found = true;
                        }
                    } else {
                        for (int sl = 0; sl < kNumSlots; ++sl) {
                            if (T->beta[sl] >= kInf) continue;
                            Slot sd = slot_decode(sl);
                            if (!centre_slot(sd) || sd.b1 != s + 1) continue;
                            if (!(t == kFreeT || t == sd.a1)) continue;
                            if (sd.a2 != cur_s || sd.b2 - 3 != cur_t) continue;
                            if (base + T->beta[sl] == rem) {
                                choice[i] = static_cast<uint8_t>(sl);
                                cur_s = s;
                                cur_t = t;
                                rem = base;
                                found = true;
                                break;
                            }
                        }
                    }
                }
            if (!found) fail(Errc::InfeasibleTables, "wheel linear reconstruction failed mid-chain");
        }
        const PenaltyTable* T0 = ctx.tab[0];
        if (T0) {
            found = false;
            for (int sl = 0; sl < kNumSlots; ++sl) {
                if (T0->beta[sl] >= kInf) continue;
                Slot s = slot_decode(sl);
                if (s.b1 != 5) continue;
                if (s.a2 != cur_s || s.b2 - 3 != cur_t) continue;
                if (T0->beta[sl] == rem) {
                    choice[0] = static_cast<uint8_t>(sl);
                    found = true;
                    break;
                }
            }
            if (!found) fail(Errc::InfeasibleTables, "wheel linear reconstruction failed at head");
        }
    } else {
        // Winning cross-state.
        int best_x = -1;
        for (int x = 0; x < kX; ++x) {
            if (sat_add(head_suf[best_b + 1][x], tail_pre[best_b][x]) ==
                best_val - win_base - phi(best_b)) {
                best_x = x;
                break;
            }
        }
        if (best_x < 0) fail(Errc::InfeasibleTables, "wheel cross-state reconstruction failed");

        // Head side: positions best_b+1 .. r-1.
        {
            int i = best_b + 1;
            Cost rem = head_suf[i][best_x];
            int s_in = -1, a1x = -1;
            const PenaltyTable* T = ctx.tab[i];
            bool head_done = false;
            if (i == r - 1) {
                if (T) {
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (T->beta[sl] >= kInf) continue;
                        Slot s = slot_decode(sl);
                        if (s.b1 != 5 || xidx(s.a2, s.b2 - 3) != best_x) continue;
                        if (T->beta[sl] == rem) {
                            choice[i] = static_cast<uint8_t>(sl);
                            break;
                        }
                    }
                }
                head_done = true;
            } else if (!T) {
                bool found = false;
                for (int a = 0; a < 2 && !found; ++a)
                    if (m_at(i + 1, 1, a, best_x) == rem) {
                        s_in = 1;
                        a1x = a;
                        found = true;
                    }
                if (!found) fail(Errc::InfeasibleTables, "wheel head reconstruction failed");
            } else {
                bool found = false;
                for (int sl = 0; sl < kNumSlots && !found; ++sl) {
                    if (T->beta[sl] >= kInf) continue;
                    Slot s = slot_decode(sl);
                    if (s.b1 != 5) continue;
                    Cost tail = m_at(i + 1, s.a2, s.b2 - 3, best_x);
                    if (tail >= kInf) continue;
                    if (T->beta[sl] + tail == rem) {
                        choice[i] = static_cast<uint8_t>(sl);
                        s_in = s.a2;
                        a1x = s.b2 - 3;
                        rem = tail;
                        found = true;
                    }
                }
                if (!found) fail(Errc::InfeasibleTables, "wheel head reconstruction failed");
            }
            if (!head_done) {
                for (int p = i + 1; p <= r - 1; ++p) {
                    const PenaltyTable* U = ctx.tab[p];
                    bool found = false;
                    if (p == r - 1) {
                        if (!U) {
                            if (a1x == 0 && xidx(0, kFreeT) == best_x && rem == 0) found = true;
                            // original tail exports (0, free)
                            if (!found)
                                fail(Errc::InfeasibleTables, "wheel head tail mismatch");
                        } else {
                            for (int sl = 0; sl < kNumSlots; ++sl) {
                                if (U->beta[sl] >= kInf) continue;
                                Slot s = slot_decode(sl);
                                if (!centre_slot(s)) continue;
                                if (s.b1 - 1 != s_in || s.a1 != a1x) continue;
                                if (xidx(s.a2, s.b2 - 3) != best_x) continue;
                                if (U->beta[sl] == rem) {
                                    choice[p] = static_cast<uint8_t>(sl);
                                    found = true;
                                    break;
                                }
                            }
                            if (!found)
                                fail(Errc::InfeasibleTables, "wheel head reconstruction failed at cut");
                        }
                        break;
                    }
                    if (!U) {
                        if (a1x != 0) fail(Errc::InfeasibleTables, "wheel head type mismatch");
                        for (int a = 0; a < 2 && !found; ++a)
                            if (m_at(p + 1, 0, a, best_x) == rem) {
                                s_in = 0;
                                a1x = a;
                                found = true;
                            }
                    } else {
                        for (int sl = 0; sl < kNumSlots && !found; ++sl) {
                            if (U->beta[sl] >= kInf) continue;
                            Slot s = slot_decode(sl);
                            if (!centre_slot(s)) continue;
                            if (s.b1 - 1 != s_in || s.a1 != a1x) continue;
                            Cost tail = m_at(p + 1, s.a2, s.b2 - 3, best_x);
                            if (tail >= kInf) continue;
                            if (U->beta[sl] + tail == rem) {
                                choice[p] = static_cast<uint8_t>(sl);
                                s_in = s.a2;
                                a1x = s.b2 - 3;
                                rem = tail;
                                found = true;
                            }
                        }
                    }
                    if (!found) fail(Errc::InfeasibleTables, "wheel head reconstruction failed");
                }
            }
        }

        // Tail side: positions 0..best_b, backwards from the close.
        {
            Cost rem = tail_pre[best_b][best_x];
            int cur_s = -1, cur_t = -1;
            const PenaltyTable* T = ctx.tab[best_b];
            if (best_b == 0) {
                int sX = best_x / 3, tX = best_x % 3;
                if (T) {
                    bool found = false;
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (T->beta[sl] >= kInf) continue;
                        Slot s = slot_decode(sl);
                        if (s.b2 != 6 || s.b1 != sX + 1) continue;
                        if (!(tX == kFreeT || tX == s.a1)) continue;
                        if (T->beta[sl] == rem) {
                            choice[0] = static_cast<uint8_t>(sl);
                            found = true;
                            break;
                        }
                    }
                    if (!found) fail(Errc::InfeasibleTables, "wheel tail reconstruction failed");
                }
            } else {
                bool found = false;
                for (int s = 0; s < 2 && !found; ++s)
                    for (int t = 0; t < 3 && !found; ++t) {
                        Cost base = fw_at(best_b - 1, best_x, s, t);
                        if (base >= kInf) continue;
                        if (!T) {
                            if ((t == 1 || t == kFreeT) && base == rem) {
                                cur_s = s;
                                cur_t = t;
                                found = true;
                            }
                        } else {
                            for (int sl = 0; sl < kNumSlots; ++sl) {
                                if (T->beta[sl] >= kInf) continue;
                                Slot sd = slot_decode(sl);
                                if (sd.b2 != 6 || sd.b1 != s + 1) continue;
                                if (!(t == kFreeT || t == sd.a1)) continue;
                                if (base + T->beta[sl] == rem) {
                                    choice[best_b] = static_cast<uint8_t>(sl);
                                    cur_s = s;
                                    cur_t = t;
                                    rem = base;
                                    found = true;
                                    break;
                                }
                            }
                        }
                    }
                if (!found) fail(Errc::InfeasibleTables, "wheel tail reconstruction failed");
                for (int i = best_b - 1; i >= 1; --i) {
                    found = false;
                    const PenaltyTable* U = ctx.tab[i];
                    for (int s = 0; s < 2 && !found; ++s)
                        for (int t = 0; t < 3 && !found; ++t) {
                            Cost base = fw_at(i - 1, best_x, s, t);
                            if (base >= kInf) continue;
                            if (!U) {
                                if (cur_s == 0 && cur_t == kFreeT && (t == 0 || t == kFreeT) &&
                                    base == rem) {
                                    cur_s = s;
                                    cur_t = t;
                                    found = true;
                                }
                            } else {
                                for (int sl = 0; sl < kNumSlots; ++sl) {
                                    if (U->beta[sl] >= kInf) continue;
                                    Slot sd = slot_decode(sl);
                                    if (!centre_slot(sd) || sd.b1 != s + 1) continue;
                                    if (!(t == kFreeT || t == sd.a1)) continue;
                                    if (sd.a2 != cur_s || sd.b2 - 3 != cur_t) continue;
                                    if (base + U->beta[sl] == rem) {
                                        choice[i] = static_cast<uint8_t>(sl);
                                        cur_s = s;
                                        cur_t = t;
                                        rem = base;
                                        found = true;
                                        break;
                                    }
                                }
                            }
                        }
                    if (!found)
                        fail(Errc::InfeasibleTables, "wheel tail reconstruction failed mid-chain");
                }
                const PenaltyTable* T0 = ctx.tab[0];
                int sX = best_x / 3, tX = best_x % 3;
                if (T0) {
                    found = false;
                    for (int sl = 0; sl < kNumSlots; ++sl) {
                        if (T0->beta[sl] >= kInf) continue;
                        Slot s = slot_decode(sl);
                        if (!centre_slot(s) || s.b1 != sX + 1) continue;
                        if (!(tX == kFreeT || tX == s.a1)) continue;
                        if (s.a2 != cur_s || s.b2 - 3 != cur_t) continue;
                        if (T0->beta[sl] == rem) {
                            choice[0] = static_cast<uint8_t>(sl);
                            found = true;
                            break;
                        }
                    }
                    if (!found)
                        fail(Errc::InfeasibleTables, "wheel tail reconstruction failed at start");
                }
            }
        }
    }

    WheelResult res;
    res.value = best_val;
    res.skipped = ctx.e(best_b);
    // Tour: rim from best_b+1 around to best_b, hub between best_b and
    // best_b+1.
    for (int i = 1; i <= r; ++i) res.tour.push_back(ctx.rim[ctx.mod(best_b + i)]);
    res.tour.push_back(ctx.hub);
    for (int i = 0; i < r; ++i)
        if (choice[i] != kNoRimSlot) res.rho.push_back({ctx.rim[i], choice[i]});
    return res;
}

// ---- top-level solver ----------------------------------------------------

DpSolver::DpSolver(const HalinEmbedding& h, const CostModel& costs, int k)
    : original_(h), costs_(costs), k_(k), cur_(h) {
    if (k < 1 || k > 3) fail(Errc::InvalidK, "k must be 1, 2 or 3");
    internal_deg_.assign(cur_.capacity(), 0);
    for (NodeId v = 0; v < cur_.capacity(); ++v) {
        if (!cur_.is_internal(v)) continue;
        for (EdgeId e : cur_.rotation(v))
            if (cur_.is_internal(cur_.other_end(e, v))) ++internal_deg_[v];
        if (internal_deg_[v] == 1) candidates_.insert(v);
    }
}

bool DpSolver::at_wheel() const { return is_wheel(cur_); }

int DpSolver::contract_step() {
    if (candidates_.empty()) fail(Errc::IsWheel, "no fan to contract");
    NodeId centre = *candidates_.begin();
    candidates_.erase(candidates_.begin());

    Fan f = fan_at(cur_, centre);
    PenaltyTable table = beta_update(f, tables_, costs_, k_);
    NodeId pseudo = cur_.capacity();
    cur_.contract_in_place(f, pseudo);
    tables_.emplace(pseudo, std::move(table));
    if (--internal_deg_[f.attach] == 1 && cur_.num_internal() > 1) candidates_.insert(f.attach);

    ContractionRecord rec;
    rec.fan = std::move(f);
    rec.pseudo_node = pseudo;
    rec.replaced_edges = {{rec.fan.j, rec.fan.j}, {rec.fan.k, rec.fan.k}, {rec.fan.l, rec.fan.l}};
    records_.push_back(std::move(rec));
    return static_cast<int>(records_.size()) - 1;
}

Solution DpSolver::finish() {
    WheelResult wr = solve_wheel(cur_, tables_, costs_, k_);

    Solution sol;
    sol.rho = wr.rho;
    std::vector<int> chosen(cur_.capacity(), -1);
    for (auto [v, sl] : wr.rho) chosen[v] = sl;

    // Expand pseudo-nodes in reverse order on a linked-list tour, so each
    // splice costs O(|F|).
    std::vector<NodeId> nxt(cur_.capacity(), kNoNode);
    for (size_t i = 0; i < wr.tour.size(); ++i)
        nxt[wr.tour[i]] = wr.tour[(i + 1) % wr.tour.size()];
    std::vector<NodeId> prv(cur_.capacity(), kNoNode);
    for (NodeId v = 0; v < cur_.capacity(); ++v)
        if (nxt[v] != kNoNode) prv[nxt[v]] = v;

    NodeId anchor = wr.tour.front();
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
        const Fan& fan = it->fan;
        NodeId p = it->pseudo_node;
        if (chosen[p] < 0) fail(Errc::InfeasibleTables, "pseudo-node was never assigned a slot");
        int sl = chosen[p];
        const PenaltyTable& table = tables_.at(p);
        if (table.beta[sl] >= kInf)
            fail(Errc::InfeasibleSlot, "expansion reached an unassigned slot");
        const SlotPlan& plan = table.plan[sl];
        std::vector<NodeId> inner = traversal_nodes(fan, plan.shape, plan.g);
        NodeId before = prv[p];
        NodeId left = plan.shape == Shape::Right ? fan.attach : fan.prev;
        NodeId right = plan.shape == Shape::Left ? fan.attach : fan.next;
        if (before == right) {
            std::reverse(inner.begin(), inner.end());
        } else if (before != left) {
            fail(Errc::InfeasibleSlot, "tour does not use the slot's boundary edges");
        }
        NodeId after = nxt[p];
        NodeId cur = before;
        for (NodeId v : inner) {
            nxt[cur] = v;
            prv[v] = cur;
            cur = v;
        }
        nxt[cur] = after;
        prv[after] = cur;
        nxt[p] = prv[p] = kNoNode;
        if (anchor == p) anchor = inner.front();
        for (int i = 0; i < fan.r(); ++i) {
            if (plan.rim_slots[i] != kNoRimSlot) {
                chosen[fan.rim[i]] = plan.rim_slots[i];
                sol.rho.push_back({fan.rim[i], plan.rim_slots[i]});
            }
        }
    }
    std::vector<NodeId> tour;
    tour.reserve(original_.num_nodes());
    for (NodeId v = anchor; tour.empty() || v != anchor; v = nxt[v]) tour.push_back(v);

    ObjectiveKind kind = k_ == 1   ? ObjectiveKind::TSP1
                         : k_ == 2 ? ObjectiveKind::TSP2
                                   : ObjectiveKind::TSP3;
    sol.value = Objective{wr.value, kind};
    sol.tour = std::move(tour);

    // The single most important invariant: the reported value must equal the
    // independently recomputed objective of the reported tour.
    Objective check = tour_objective(original_, sol.tour, costs_, k_);
    if (check.internal != sol.value.internal)
        fail(Errc::InfeasibleTables, "solver value does not match the reconstructed tour");
    return sol;
}

Solution solve(const HalinEmbedding& h, const CostModel& costs, int k) {
    if (k < 1 || k > 3) fail(Errc::InvalidK, "k must be 1, 2 or 3");
    // A 4-node tour is too short for the window transformation: the two
    // windows around the cycle both count the opposite-edge pair.
    if (k == 3 && h.num_nodes() == 4) {
        Solution s = brute_solve(h, costs, ObjectiveKind::TSP3);
        return s;
    }
    DpSolver solver(h, costs, k);
    while (!solver.at_wheel()) solver.contract_step();
    return solver.finish();
}

}  // namespace halin
