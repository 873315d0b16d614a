#include "halin/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace halin {

using json = nlohmann::json;

std::string edge_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return std::to_string(u) + "," + std::to_string(v);
}

std::string pair_key(const std::string& ek1, const std::string& ek2) {
    return ek1 < ek2 ? ek1 + "|" + ek2 : ek2 + "|" + ek1;
}

namespace {

std::pair<NodeId, NodeId> parse_edge_key(const std::string& key) {
    auto comma = key.find(',');
    if (comma == std::string::npos) fail(Errc::ParseError, "bad edge key '" + key + "'");
    try {
        NodeId u = std::stoi(key.substr(0, comma));
        NodeId v = std::stoi(key.substr(comma + 1));
        return {u, v};
    } catch (...) {
        fail(Errc::ParseError, "bad edge key '" + key + "'");
    }
}

EdgeId resolve_edge(const HalinEmbedding& h, const std::string& key) {
    auto [u, v] = parse_edge_key(key);
    EdgeId e = h.edge_between(u, v);
    if (e == kNoEdge) fail(Errc::ParseError, "edge '" + key + "' is not in the graph");
    return e;
}

Cost checked_cost(const json& v, const std::string& what) {
    if (!v.is_number_integer() || v.get<int64_t>() < 0)
        fail(Errc::ParseError, what + " must be a nonnegative integer");
    return v.get<int64_t>();
}

}  // namespace

std::string instance_to_json(const InstanceFile& f) {
    const HalinEmbedding& h = f.instance.graph;
    json out;
    out["version"] = f.version;
    out["k"] = f.k;
    json tree = json::array();
    for (EdgeId e = 0; e < h.edge_capacity(); ++e) {
        if (!h.edge_exists(e) || !h.is_tree_edge(e)) continue;
        auto [u, v] = h.endpoints(e);
        tree.push_back({std::min(u, v), std::max(u, v)});
    }
    out["tree_edges"] = std::move(tree);
    out["cycle"] = h.cycle();

    json lin = json::object();
    for (EdgeId e = 0; e < h.edge_capacity(); ++e) {
        if (!h.edge_exists(e)) continue;
        Cost c = f.instance.costs.linear(e);
        if (c == 0) continue;
        auto [u, v] = h.endpoints(e);
        lin[edge_key(u, v)] = c;
    }
    out["linear_costs"] = std::move(lin);

    json quad = json::object();
    for (const auto& [key, q] : f.instance.costs.quad_all()) {
        if (q == 0) continue;
        EdgeId e = static_cast<EdgeId>(key >> 32);
        EdgeId g = static_cast<EdgeId>(key & 0xffffffff);
        auto [u1, v1] = h.endpoints(e);
        auto [u2, v2] = h.endpoints(g);
        quad[pair_key(edge_key(u1, v1), edge_key(u2, v2))] = q;
    }
    out["quadratic_costs"] = std::move(quad);
    return out.dump(2) + "\n";
}

InstanceFile instance_from_json(const std::string& text) {
    json in;
    try {
        in = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
    }
    InstanceFile f;
    try {
        f.version = in.at("version").get<int>();
        f.k = in.at("k").get<int>();
        std::vector<std::pair<NodeId, NodeId>> tree;
        for (const auto& e : in.at("tree_edges"))
            tree.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
        std::vector<NodeId> cycle = in.at("cycle").get<std::vector<NodeId>>();
        f.instance.graph = HalinEmbedding::build(tree, cycle);
    } catch (const HalinError&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("bad instance structure: ") + e.what());
    }
    const HalinEmbedding& h = f.instance.graph;
    if (in.contains("linear_costs"))
        for (const auto& [key, v] : in.at("linear_costs").items())
            f.instance.costs.set_linear(resolve_edge(h, key), checked_cost(v, "linear cost"));
    if (in.contains("quadratic_costs")) {
        for (const auto& [key, v] : in.at("quadratic_costs").items()) {
            auto bar = key.find('|');
            if (bar == std::string::npos) fail(Errc::ParseError, "bad pair key '" + key + "'");
            EdgeId e = resolve_edge(h, key.substr(0, bar));
            EdgeId g = resolve_edge(h, key.substr(bar + 1));
            if (e == g) fail(Errc::ParseError, "pair key repeats an edge");
            f.instance.costs.set_quad(e, g, checked_cost(v, "quadratic cost"));
        }
    }
    return f;
}

InstanceFile load_instance(const std::string& path) { return instance_from_json(read_file(path)); }

void save_instance(const InstanceFile& f, const std::string& path) {
    write_file(path, instance_to_json(f));
}

std::string sidecar_to_json(const ReductionOutput& out) {
    const HalinEmbedding& h = out.instance.graph;
    auto ekey = [&](EdgeId e) {
        auto [u, v] = h.endpoints(e);
        return edge_key(u, v);
    };
    json j;
    j["theta"] = out.threshold;
    j["variable_count"] = out.variable_count;
    j["w"] = out.w;
    j["v_x"] = out.v_x;
    j["v_y"] = out.v_y;
    json gs = json::array();
    for (size_t i = 0; i < out.gadgets.size(); ++i) {
        gs.push_back({{"clause", i},
                      {"ell", out.gadgets[i].ell},
                      {"v", out.gadgets[i].centre},
                      {"r", out.gadgets[i].r}});
    }
    j["gadgets"] = std::move(gs);
    json ls = json::array();
    for (const auto& le : out.literal_edges) {
        ls.push_back({{"literal_index", le.literal_index},
                      {"literal", le.literal},
                      {"mu", ekey(le.mu)},
                      {"mu_prime", ekey(le.mu_prime)}});
    }
    j["literal_edges"] = std::move(ls);
    return j.dump(2) + "\n";
}

SidecarFile sidecar_from_json(const std::string& text) {
    json in;
    try {
        in = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
    }
    SidecarFile sc;
    try {
        sc.threshold = in.at("theta").get<Cost>();
        sc.variable_count = in.at("variable_count").get<int>();
        sc.w = in.at("w").get<NodeId>();
        sc.v_x = in.at("v_x").get<NodeId>();
        sc.v_y = in.at("v_y").get<NodeId>();
        for (const auto& g : in.at("gadgets"))
            sc.gadgets.push_back(
                {g.at("ell").get<NodeId>(), g.at("v").get<NodeId>(), g.at("r").get<NodeId>()});
        for (const auto& l : in.at("literal_edges")) {
            SidecarLiteral sl;
            sl.literal_index = l.at("literal_index").get<int>();
            sl.literal = l.at("literal").get<int>();
            sl.mu = l.at("mu").get<std::string>();
            sl.mu_prime = l.at("mu_prime").get<std::string>();
            sc.literal_edges.push_back(std::move(sl));
        }
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("bad sidecar structure: ") + e.what());
    }
    return sc;
}

ReductionOutput bind_sidecar(const SidecarFile& sc, const Instance& inst) {
    ReductionOutput out;
    out.instance = inst;
    out.threshold = sc.threshold;
    out.variable_count = sc.variable_count;
    out.gadgets = sc.gadgets;
    out.w = sc.w;
    out.v_x = sc.v_x;
    out.v_y = sc.v_y;
    for (const auto& sl : sc.literal_edges) {
        LiteralEdge le;
        le.literal_index = sl.literal_index;
        le.literal = sl.literal;
        le.mu = resolve_edge(inst.graph, sl.mu);
        le.mu_prime = resolve_edge(inst.graph, sl.mu_prime);
        out.literal_edges.push_back(le);
    }
    return out;
}

std::vector<NodeId> parse_tour(const std::string& text) {
    std::istringstream in(text);
    std::vector<NodeId> tour;
    std::string tok;
    while (in >> tok) {
        try {
            tour.push_back(std::stoi(tok));
        } catch (...) {
            fail(Errc::ParseError, "tour files hold whitespace-separated node ids");
        }
    }
    if (tour.empty()) fail(Errc::ParseError, "empty tour file");
    return tour;
}

std::string tour_to_text(const std::vector<NodeId>& tour) {
    std::ostringstream out;
    for (size_t i = 0; i < tour.size(); ++i) {
        if (i) out << ' ';
        out << tour[i];
    }
    out << '\n';
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::ParseError, "cannot write '" + path + "'");
    out << content;
}

}  // namespace halin
