#include "halin/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace halin {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotATree: return "NotATree";
        case Errc::Degree2Internal: return "Degree2Internal";
        case Errc::CycleMismatch: return "CycleMismatch";
        case Errc::NonPlanar: return "NonPlanar";
        case Errc::IsWheel: return "IsWheel";
        case Errc::NotAFan: return "NotAFan";
        case Errc::InfeasibleSlot: return "InfeasibleSlot";
        case Errc::TourMissingPseudoNode: return "TourMissingPseudoNode";
        case Errc::NotAPath: return "NotAPath";
        case Errc::UnsupportedK: return "UnsupportedK";
        case Errc::InvalidK: return "InvalidK";
        case Errc::NotHamiltonian: return "NotHamiltonian";
        case Errc::TooSmall: return "TooSmall";
        case Errc::TooLarge: return "TooLarge";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::MalformedFormula: return "MalformedFormula";
        case Errc::MalformedCnf: return "MalformedCnf";
        case Errc::TooManyVariables: return "TooManyVariables";
        case Errc::NonZeroCostTour: return "NonZeroCostTour";
        case Errc::ConflictingLiterals: return "ConflictingLiterals";
        case Errc::InfeasibleTables: return "InfeasibleTables";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

struct ArcInfo {
    int start = 0;  // cycle position of the leftmost leaf
    int len = 0;
    EdgeId up_edge = kNoEdge;  // edge toward the parent
};

}  // namespace

namespace {
uint64_t pair_key64(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}
}  // namespace

void HalinEmbedding::index_edge(EdgeId e, NodeId u, NodeId v) {
    edge_index_[pair_key64(u, v)] = e;
}

void HalinEmbedding::unindex_edge(EdgeId e) {
    auto [u, v] = edge_nodes_[e];
    auto it = edge_index_.find(pair_key64(u, v));
    if (it != edge_index_.end() && it->second == e) edge_index_.erase(it);
}

EdgeId HalinEmbedding::edge_between(NodeId u, NodeId v) const {
    auto it = edge_index_.find(pair_key64(u, v));
    return it == edge_index_.end() ? kNoEdge : it->second;
}

NodeId HalinEmbedding::attach(NodeId v) const { return other_end(spoke_[v], v); }

std::vector<NodeId> HalinEmbedding::cycle() const {
    std::vector<NodeId> out;
    out.reserve(n_cycle_);
    NodeId v = cycle_start_;
    do {
        out.push_back(v);
        v = cyc_next_[v];
    } while (v != cycle_start_);
    return out;
}

std::vector<EdgeId> HalinEmbedding::incident_edges(NodeId v) const {
    if (internal_[v]) return rot_[v];
    return {cyc_edge_[cyc_prev_[v]], spoke_[v], cyc_edge_[v]};
}

int HalinEmbedding::rot_index_of(NodeId v, EdgeId e) const {
    return rot_pos_[e][edge_nodes_[e][0] == v ? 0 : 1];
}

EdgeId HalinEmbedding::rotation_succ(NodeId v, EdgeId e) const {
    const auto& r = rot_[v];
    return r[(rot_index_of(v, e) + 1) % r.size()];
}

EdgeId HalinEmbedding::rotation_pred(NodeId v, EdgeId e) const {
    const auto& r = rot_[v];
    return r[(rot_index_of(v, e) + r.size() - 1) % r.size()];
}

bool HalinEmbedding::consecutive_at(NodeId v, EdgeId e, EdgeId f) const {
    if (!internal_[v]) return true;  // cycle nodes have degree 3
    const auto& r = rot_[v];
    if (r.size() <= 3) return true;
    int i = rot_index_of(v, e), jx = rot_index_of(v, f);
    int d = std::abs(i - jx);
    return d == 1 || d == static_cast<int>(r.size()) - 1;
}

HalinEmbedding HalinEmbedding::build(const std::vector<std::pair<NodeId, NodeId>>& tree_edges,
                                     const std::vector<NodeId>& cycle_in) {
    if (tree_edges.empty() || cycle_in.empty()) fail(Errc::NotATree, "empty input");

    NodeId max_id = -1;
    for (auto [u, v] : tree_edges) max_id = std::max({max_id, u, v});
    const int n = max_id + 1;
    if (static_cast<int>(tree_edges.size()) != n - 1)
        fail(Errc::NotATree, "tree must have exactly n-1 edges");

    std::vector<std::vector<std::pair<NodeId, EdgeId>>> adj(n);
    std::set<std::pair<NodeId, NodeId>> seen;
    for (size_t i = 0; i < tree_edges.size(); ++i) {
        auto [u, v] = tree_edges[i];
        if (u < 0 || v < 0 || u == v) fail(Errc::NotATree, "bad tree edge");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) fail(Errc::NotATree, "duplicate tree edge");
        adj[u].push_back({v, static_cast<EdgeId>(i)});
        adj[v].push_back({u, static_cast<EdgeId>(i)});
    }

    // Connectivity (acyclicity follows from the edge count).
    {
        std::vector<char> vis(n, 0);
        std::vector<NodeId> stack{0};
        vis[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (auto [w, e] : adj[v])
                if (!vis[w]) {
                    vis[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
        }
        if (cnt != n) fail(Errc::NotATree, "tree edges are disconnected");
    }

    std::vector<char> internal(n, 0);
    int n_leaves = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (adj[v].size() == 1) {
            ++n_leaves;
        } else if (adj[v].size() == 2) {
            fail(Errc::Degree2Internal, "internal node " + std::to_string(v) + " has tree degree 2");
        } else {
            internal[v] = 1;
        }
    }
    if (n_leaves < 3) fail(Errc::CycleMismatch, "need at least 3 leaves");

    // Cycle must visit exactly the leaves, each once.
    if (static_cast<int>(cycle_in.size()) != n_leaves)
        fail(Errc::CycleMismatch, "cycle length differs from leaf count");
    {
        std::vector<char> on_cycle(n, 0);
        for (NodeId v : cycle_in) {
            if (v < 0 || v >= n || internal[v]) fail(Errc::CycleMismatch, "cycle contains non-leaf");
            if (on_cycle[v]) fail(Errc::CycleMismatch, "cycle repeats a node");
            on_cycle[v] = 1;
        }
    }

    // Canonical form: start at the smallest leaf, second element the smaller
    // neighbour (accepts rotations and reflections as the same embedding).
    std::vector<NodeId> cyc = cycle_in;
    const int m = static_cast<int>(cyc.size());
    {
        int at = static_cast<int>(std::min_element(cyc.begin(), cyc.end()) - cyc.begin());
        std::rotate(cyc.begin(), cyc.begin() + at, cyc.end());
        if (m >= 3 && cyc.back() < cyc[1]) std::reverse(cyc.begin() + 1, cyc.end());
    }

    HalinEmbedding h;
    h.n_original_ = n;
    h.alive_.assign(n, 1);
    h.internal_ = internal;
    h.pseudo_.assign(n, 0);
    h.cyc_next_.assign(n, kNoNode);
    h.cyc_prev_.assign(n, kNoNode);
    h.spoke_.assign(n, kNoEdge);
    h.cyc_edge_.assign(n, kNoEdge);
    h.rot_.resize(n);
    h.n_alive_ = n;
    h.n_cycle_ = m;
    h.n_internal_ = n - m;
    h.cycle_start_ = cyc[0];

    // Tree edges keep their input order as ids; cycle edges follow.
    for (size_t i = 0; i < tree_edges.size(); ++i) {
        auto [u, v] = tree_edges[i];
        h.edge_nodes_.push_back({u, v});
        h.tree_edge_.push_back(1);
        h.index_edge(static_cast<EdgeId>(i), u, v);
    }
    std::vector<int> pos(n, -1);
    for (int i = 0; i < m; ++i) {
        NodeId u = cyc[i], v = cyc[(i + 1) % m];
        EdgeId e = static_cast<EdgeId>(h.edge_nodes_.size());
        if (h.edge_between(u, v) != kNoEdge) fail(Errc::CycleMismatch, "cycle edge duplicates a tree edge");
        h.edge_nodes_.push_back({u, v});
        h.tree_edge_.push_back(0);
        h.index_edge(e, u, v);
        h.cyc_edge_[u] = e;
        h.cyc_next_[u] = v;
        h.cyc_prev_[v] = u;
        pos[u] = i;
    }
    for (NodeId v = 0; v < n; ++v)
        if (!internal[v]) h.spoke_[v] = adj[v][0].second;

    // Infer the rotation system: at every internal node the child subtrees
    // must occupy contiguous cycle arcs that chain into a single arc.
    NodeId root = h.attach(cyc[0]);
    std::vector<NodeId> parent(n, kNoNode);
    std::vector<EdgeId> parent_edge(n, kNoEdge);
    std::vector<NodeId> order;  // preorder over internal nodes
    {
        std::vector<NodeId> stack{root};
        std::vector<char> vis(n, 0);
        vis[root] = 1;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (auto [w, e] : adj[v])
                if (!vis[w]) {
                    vis[w] = 1;
                    parent[w] = v;
                    parent_edge[w] = e;
                    if (internal[w]) stack.push_back(w);
                }
        }
    }

    std::vector<ArcInfo> arc(n);
    for (NodeId v = 0; v < n; ++v)
        if (!internal[v]) arc[v] = {pos[v], 1, h.spoke_[v]};

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        NodeId v = *it;
        struct Child {
            ArcInfo a;
            EdgeId e;
        };
        std::vector<Child> kids;
        for (auto [w, e] : adj[v])
            if (e != parent_edge[v]) kids.push_back({arc[w], e});
        std::sort(kids.begin(), kids.end(), [](const Child& a, const Child& b) {
            return a.a.start < b.a.start;
        });
        const int kcnt = static_cast<int>(kids.size());
        int total = 0;
        for (auto& c : kids) total += c.a.len;

        // Count cyclic chaining breaks among the sorted child arcs.
        int breaks = 0, break_at = -1;
        for (int i = 0; i < kcnt; ++i) {
            const Child& cur = kids[i];
            const Child& nxt = kids[(i + 1) % kcnt];
            if ((cur.a.start + cur.a.len) % m != nxt.a.start) {
                ++breaks;
                break_at = i;
            }
        }
        if (v == root) {
            if (total != m || breaks != 0)
                fail(Errc::NonPlanar, "subtree leaf arcs do not tile the cycle");
            // Rotation starts at the child holding cycle position 0.
            int first = 0;
            for (int i = 0; i < kcnt; ++i)
                if (kids[i].a.start == 0) first = i;
            std::rotate(kids.begin(), kids.begin() + first, kids.end());
            for (auto& c : kids) h.rot_[v].push_back(c.e);
        } else {
            if (breaks != 1) fail(Errc::NonPlanar, "subtree leaves are not a contiguous cycle arc");
            std::rotate(kids.begin(), kids.begin() + (break_at + 1) % kcnt, kids.end());
            arc[v] = {kids[0].a.start, total, parent_edge[v]};
            h.rot_[v].push_back(parent_edge[v]);
            for (auto& c : kids) h.rot_[v].push_back(c.e);
        }
    }

    h.rot_pos_.assign(h.edge_nodes_.size(), {-1, -1});
    for (NodeId v = 0; v < n; ++v) {
        for (size_t p = 0; p < h.rot_[v].size(); ++p) {
            EdgeId e = h.rot_[v][p];
            h.rot_pos_[e][h.edge_nodes_[e][0] == v ? 0 : 1] = static_cast<int>(p);
        }
    }

    h.validate();
    return h;
}

void HalinEmbedding::validate() const {
    const int cap = capacity();
    int alive = 0, internal = 0, cyc_cnt = 0;
    for (NodeId v = 0; v < cap; ++v) {
        if (!alive_[v]) continue;
        ++alive;
        if (internal_[v])
            ++internal;
        else
            ++cyc_cnt;
    }
    if (alive != n_alive_ || internal != n_internal_ || cyc_cnt != n_cycle_)
        fail(Errc::NotATree, "node bookkeeping is inconsistent");
    if (internal < 1 || cyc_cnt < 3) fail(Errc::CycleMismatch, "too few nodes");

    // Cycle links form one cycle over all cycle nodes, with live edges.
    {
        int steps = 0;
        NodeId v = cycle_start_;
        if (!node_exists(v) || internal_[v]) fail(Errc::CycleMismatch, "bad cycle start");
        do {
            EdgeId e = cyc_edge_[v];
            NodeId w = cyc_next_[v];
            if (!node_exists(w) || internal_[w]) fail(Errc::CycleMismatch, "cycle leaves the leaf set");
            if (!edge_exists(e) || other_end(e, v) != w || cyc_prev_[w] != v)
                fail(Errc::CycleMismatch, "broken cycle links");
            v = w;
            if (++steps > cyc_cnt) fail(Errc::CycleMismatch, "cycle does not close");
        } while (v != cycle_start_);
        if (steps != cyc_cnt) fail(Errc::CycleMismatch, "cycle misses leaves");
    }

    // Tree: spokes + internal rotations, connected, right count, no degree 2.
    int tree_edges = 0;
    for (NodeId v = 0; v < cap; ++v) {
        if (!alive_[v]) continue;
        if (internal_[v]) {
            if (rot_[v].size() < 3) fail(Errc::Degree2Internal, "internal node of degree < 3");
            for (EdgeId e : rot_[v]) {
                if (!edge_exists(e) || !tree_edge_[e]) fail(Errc::NotATree, "rotation holds a dead edge");
                auto [a, b] = edge_nodes_[e];
                if (a != v && b != v) fail(Errc::NotATree, "rotation edge not incident");
                ++tree_edges;  // counted from the internal side; spokes once, inner edges twice
            }
        } else {
            EdgeId s = spoke_[v];
            if (!edge_exists(s) || !tree_edge_[s]) fail(Errc::NotATree, "missing spoke");
            if (!internal_[other_end(s, v)]) fail(Errc::NotATree, "spoke not anchored at internal node");
        }
    }
    // Each spoke was counted once, each internal-internal edge twice.
    int inner = 0, spokes = 0;
    for (EdgeId e = 0; e < edge_capacity(); ++e) {
        if (!edge_exists(e) || !tree_edge_[e]) continue;
        auto [a, b] = edge_nodes_[e];
        if (internal_[a] && internal_[b])
            ++inner;
        else
            ++spokes;
    }
    if (tree_edges != spokes + 2 * inner || spokes + inner != alive - 1)
        fail(Errc::NotATree, "tree edge count mismatch");
    {
        std::vector<char> vis(cap, 0);
        NodeId start = cycle_start_;
        std::vector<NodeId> stack{start};
        vis[start] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            for (EdgeId e : incident_edges(v)) {
                if (!tree_edge_[e]) continue;
                NodeId w = other_end(e, v);
                if (!vis[w]) {
                    vis[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
            }
        }
        if (cnt != alive) fail(Errc::NotATree, "tree is disconnected");
    }

    // Planarity: a DFS respecting the rotation system must emit the leaves
    // in cycle order (up to rotation; orientation is fixed).
    std::vector<NodeId> emitted;
    emitted.reserve(cyc_cnt);
    {
        NodeId root = attach(cycle_start_);
        // Iterative DFS: (node, entry edge).
        struct Frame {
            NodeId v;
            EdgeId in;
            size_t idx;  // next rotation offset to try
        };
        std::vector<Frame> st;
        st.push_back({root, kNoEdge, 0});
        while (!st.empty()) {
            Frame& f = st.back();
            const auto& r = rot_[f.v];
            int base = f.in == kNoEdge ? -1 : rot_index_of(f.v, f.in);
            if (f.idx >= r.size() - (f.in == kNoEdge ? 0 : 1)) {
                st.pop_back();
                continue;
            }
            EdgeId e = r[(base + 1 + f.idx) % r.size()];
            ++f.idx;
            if (e == f.in) continue;
            NodeId w = other_end(e, f.v);
            if (internal_[w])
                st.push_back({w, e, 0});
            else
                emitted.push_back(w);
        }
    }
    if (static_cast<int>(emitted.size()) != cyc_cnt) fail(Errc::NonPlanar, "DFS missed leaves");
    {
        auto cy = cycle();
        int at = static_cast<int>(std::find(emitted.begin(), emitted.end(), cy[0]) - emitted.begin());
        for (int i = 0; i < cyc_cnt; ++i)
            if (emitted[(at + i) % cyc_cnt] != cy[i])
                fail(Errc::NonPlanar, "rotation system does not realize the cycle order");
    }
}

bool is_wheel(const HalinEmbedding& h) { return h.num_internal() == 1; }

Fan fan_at(const HalinEmbedding& h, NodeId centre) {
    if (!h.is_internal(centre)) fail(Errc::NotAFan, "centre is not an internal node");
    Fan f;
    f.centre = centre;
    EdgeId k = kNoEdge;
    for (EdgeId e : h.rotation(centre)) {
        NodeId w = h.other_end(e, centre);
        if (h.is_internal(w)) {
            if (k != kNoEdge) fail(Errc::NotAFan, "centre touches two internal nodes");
            k = e;
            f.attach = w;
        }
    }
    if (k == kNoEdge) fail(Errc::IsWheel, "graph is a wheel");
    f.k = k;

    // Rim in rotation order starting right after k: matches cycle order.
    auto rot = h.rotation(centre);
    int kpos = 0;
    for (size_t i = 0; i < rot.size(); ++i)
        if (rot[i] == k) kpos = static_cast<int>(i);
    for (size_t i = 1; i < rot.size(); ++i) {
        EdgeId t = rot[(kpos + i) % rot.size()];
        f.spokes.push_back(t);
        f.rim.push_back(h.other_end(t, centre));
    }
    const int r = f.r();
    for (int i = 0; i + 1 < r; ++i) {
        if (h.cycle_next(f.rim[i]) != f.rim[i + 1]) fail(Errc::NotAFan, "rim not consecutive on C");
        f.rim_edges.push_back(h.cycle_edge(f.rim[i]));
    }
    f.prev = h.cycle_prev(f.rim.front());
    f.next = h.cycle_next(f.rim.back());
    if (f.prev == f.rim.back() || f.next == f.rim.front())
        fail(Errc::NotAFan, "fan rim covers the whole cycle");
    f.j = h.cycle_edge(f.prev);
    f.l = h.cycle_edge(f.rim.back());
    f.alpha[0] = h.cycle_edge(h.cycle_prev(f.prev));
    f.alpha[1] = h.spoke(f.prev);
    f.alpha[2] = h.cycle_edge(f.next);
    f.alpha[3] = h.spoke(f.next);
    f.alpha[4] = h.rotation_pred(f.attach, k);  // on the j-side face
    f.alpha[5] = h.rotation_succ(f.attach, k);  // on the l-side face
    f.prev_is_pseudo = h.is_pseudo(f.prev);
    f.next_is_pseudo = h.is_pseudo(f.next);
    return f;
}

std::vector<Fan> find_fans(const HalinEmbedding& h) {
    if (is_wheel(h)) fail(Errc::IsWheel, "wheels have no fans");
    std::vector<Fan> out;
    for (NodeId v = 0; v < h.capacity(); ++v) {
        if (!h.is_internal(v)) continue;
        int internal_neighbours = 0;
        for (EdgeId e : h.rotation(v))
            if (h.is_internal(h.other_end(e, v))) ++internal_neighbours;
        if (internal_neighbours == 1) out.push_back(fan_at(h, v));
    }
    return out;
}

void HalinEmbedding::contract_in_place(const Fan& f, NodeId pseudo) {
    const int need = pseudo + 1;
    if (capacity() < need) {
        alive_.resize(need, 0);
        internal_.resize(need, 0);
        pseudo_.resize(need, 0);
        cyc_next_.resize(need, kNoNode);
        cyc_prev_.resize(need, kNoNode);
        spoke_.resize(need, kNoEdge);
        cyc_edge_.resize(need, kNoEdge);
        rot_.resize(need);
    }

    for (EdgeId e : f.rim_edges) {
        unindex_edge(e);
        edge_nodes_[e] = {kNoNode, kNoNode};
    }
    for (EdgeId e : f.spokes) {
        unindex_edge(e);
        edge_nodes_[e] = {kNoNode, kNoNode};
    }
    auto reanchor = [&](EdgeId e, NodeId from) {
        unindex_edge(e);
        auto& ep = edge_nodes_[e];
        (ep[0] == from ? ep[0] : ep[1]) = pseudo;
        index_edge(e, ep[0], ep[1]);
    };
    reanchor(f.j, f.rim.front());
    reanchor(f.l, f.rim.back());
    reanchor(f.k, f.centre);

    for (NodeId v : f.rim) alive_[v] = 0;
    alive_[f.centre] = 0;
    rot_[f.centre].clear();

    alive_[pseudo] = 1;
    internal_[pseudo] = 0;
    pseudo_[pseudo] = 1;
    spoke_[pseudo] = f.k;
    cyc_next_[f.prev] = pseudo;
    cyc_prev_[pseudo] = f.prev;
    cyc_next_[pseudo] = f.next;
    cyc_prev_[f.next] = pseudo;
    cyc_edge_[pseudo] = f.l;  // cyc_edge_[f.prev] is still j

    n_alive_ -= f.r();  // r + 1 nodes die, 1 appears
    n_cycle_ -= f.r() - 1;
    n_internal_ -= 1;
    if (!alive_[cycle_start_]) cycle_start_ = pseudo;
}

std::pair<HalinEmbedding, ContractionRecord> contract_fan(const HalinEmbedding& h, const Fan& f) {
    // Guard against stale fans.
    Fan fresh = fan_at(h, f.centre);
    if (fresh.rim != f.rim || fresh.j != f.j || fresh.k != f.k || fresh.l != f.l)
        fail(Errc::NotAFan, "fan does not match the graph");

    HalinEmbedding out = h;
    NodeId pseudo = out.capacity();
    out.contract_in_place(f, pseudo);
    out.validate();

    ContractionRecord rec;
    rec.fan = f;
    rec.pseudo_node = pseudo;
    rec.replaced_edges = {{f.j, f.j}, {f.k, f.k}, {f.l, f.l}};
    return {std::move(out), std::move(rec)};
}

std::vector<NodeId> traversal_nodes(const Fan& f, Shape shape, int g) {
    std::vector<NodeId> out;
    out.reserve(f.r() + 1);
    switch (shape) {
        case Shape::Left:
            out = f.rim;
            out.push_back(f.centre);
            break;
        case Shape::Right:
            out.push_back(f.centre);
            out.insert(out.end(), f.rim.begin(), f.rim.end());
            break;
        case Shape::Centre:
            out.insert(out.end(), f.rim.begin(), f.rim.begin() + g);
            out.push_back(f.centre);
            out.insert(out.end(), f.rim.begin() + g, f.rim.end());
            break;
    }
    return out;
}

std::vector<NodeId> expand_with(const Fan& fan, NodeId pseudo, const PenaltyTable& table,
                                const std::vector<NodeId>& tour, int slot) {
    if (slot < 0 || slot >= kNumSlots || table.beta[slot] >= kInf)
        fail(Errc::InfeasibleSlot, "slot " + std::to_string(slot) + " has no stored traversal");
    const SlotPlan& plan = table.plan[slot];

    auto it = std::find(tour.begin(), tour.end(), pseudo);
    if (it == tour.end()) fail(Errc::TourMissingPseudoNode, "pseudo-node not on tour");
    const size_t at = static_cast<size_t>(it - tour.begin());
    const NodeId before = tour[(at + tour.size() - 1) % tour.size()];

    std::vector<NodeId> inner = traversal_nodes(fan, plan.shape, plan.g);
    // The stored traversal runs left boundary -> right boundary.  Its first
    // node is adjacent to the entry edge: j for Left/Centre, k for Right.
    NodeId left_neighbour = plan.shape == Shape::Right ? fan.attach : fan.prev;
    NodeId right_neighbour = plan.shape == Shape::Left ? fan.attach : fan.next;
    if (before == right_neighbour) {
        std::reverse(inner.begin(), inner.end());
    } else if (before != left_neighbour) {
        fail(Errc::InfeasibleSlot, "tour does not use the slot's boundary edges");
    }

    std::vector<NodeId> out;
    out.reserve(tour.size() + inner.size() - 1);
    out.insert(out.end(), tour.begin(), tour.begin() + at);
    out.insert(out.end(), inner.begin(), inner.end());
    out.insert(out.end(), tour.begin() + at + 1, tour.end());
    return out;
}

std::vector<NodeId> expand_tour(const ContractionRecord& rec, const std::vector<NodeId>& tour,
                                int slot) {
    return expand_with(rec.fan, rec.pseudo_node, rec.table, tour, slot);
}

}  // namespace halin
