#pragma once

#include <string>
#include <vector>

#include "halin/generators.hpp"

namespace halin {

// Instance files are JSON with canonical string keys.  Edge key: "u,v" with
// u < v.  Edge-pair key: the two edge keys joined by "|", lexicographically
// ordered.  Costs are nonnegative integers; the format round-trips
// byte-identically.
struct InstanceFile {
    int version = 1;
    int k = 3;
    Instance instance;
};

std::string instance_to_json(const InstanceFile& f);
InstanceFile instance_from_json(const std::string& text);

InstanceFile load_instance(const std::string& path);
void save_instance(const InstanceFile& f, const std::string& path);

// Sidecar emitted by the reduction: gadget and literal-edge maps keyed by
// node ids / edge keys, threshold 0.
std::string sidecar_to_json(const ReductionOutput& out);

struct SidecarLiteral {
    int literal_index = 0;
    int literal = 0;
    std::string mu, mu_prime;  // node-pair keys
};

struct SidecarFile {
    Cost threshold = 0;
    int variable_count = 0;
    std::vector<GadgetNodes> gadgets;
    std::vector<SidecarLiteral> literal_edges;
    NodeId v_x = kNoNode, v_y = kNoNode, w = kNoNode;
};
SidecarFile sidecar_from_json(const std::string& text);

// Re-binds a sidecar to a loaded instance (edge keys -> EdgeIds).
ReductionOutput bind_sidecar(const SidecarFile& sc, const Instance& inst);

// Tour files: whitespace-separated node ids.
std::vector<NodeId> parse_tour(const std::string& text);
std::string tour_to_text(const std::vector<NodeId>& tour);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Node-pair key helpers ("u,v", u < v).
std::string edge_key(NodeId u, NodeId v);
std::string pair_key(const std::string& ek1, const std::string& ek2);

}  // namespace halin
