#ifndef CUSP_GRAPH_HPP
#define CUSP_GRAPH_HPP

#include <string>
#include <vector>

#include "cusp/resolution.hpp"

namespace cusp {

struct GraphNode {
    int id = -1;
    std::string family;     // "D", "Dchain", "A", "separatrix"
    int alpha = 0;          // Step I position
    int chain_root_alpha = 0;
    int chain_pos = 0;
    std::string root_tag;
    std::string label;      // complement topology label
    int created_by_step = -1;
};

struct GraphEdge {
    int a = -1, b = -1;
    std::string curve;      // description of the intersection curve
    int chart = -1;
};

struct DivisorGraph {
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    int essential = -1;
    std::vector<int> specials;
    int separatrix_node = -1;
    std::vector<std::string> diagnostics;
    bool consistent = true;
};

DivisorGraph build_graph(const ResolutionTrace &t);

// catalog lookup for a Step-I component
std::string step_one_label(int alpha, long long catalog_c0);

std::string to_dot(const DivisorGraph &g);

} // namespace cusp

#endif
