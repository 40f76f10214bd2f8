#pragma once

#include "pst/graph.hpp"

#include <json.hpp>

#include <map>
#include <vector>

namespace pst {

class PreprocessError : public GraphError {
public:
    explicit PreprocessError(const std::string& msg) : GraphError(msg) {}
};

enum class EdgeKind { original, cycle, connector, twin };

// Records how the transformed graph relates to its source so that solutions
// can be mapped back. Edge ids of the source graph survive the transform, so
// "original" edges keep their ids; every added edge is classified.
struct BackMap {
    int orig_n = 0;
    std::vector<Edge> orig_edges;
    std::vector<int> orig_terminals;

    int new_n = 0;
    std::vector<Edge> new_edges;
    std::vector<int> new_terminals;

    std::vector<int> vertex_to_original;     // new vertex -> source vertex
    std::vector<EdgeKind> edge_kinds;        // new edge id -> class
    std::map<int, int> cycle_groups;         // zero-weight cycle edge -> expanded vertex
    std::map<int, int> path_twins;           // heavy twin edge -> source path edge
    std::map<int, int> connectors;           // zero-weight connector edge -> copied vertex
    std::map<int, int> terminal_relocation;  // source terminal -> representative
};

struct PreprocessResult {
    PlanarGraph graph;
    std::vector<int> terminals;
    std::vector<int> terminal_faces;  // indices into graph.faces(), aligned with the input list
    BackMap back_map;
};

// Transforms a connected plane instance into a 2-connected subcubic one with
// the same number of terminal faces and equal Steiner optimum. Vertices of
// degree >= 4 become zero-weight cycles; each maximal 2-path that contains a
// bridge is doubled by a heavy twin path (edge weight w_cap) joined through
// zero-weight connectors. Throws PreprocessError ("Disconnected",
// "TerminalNotOnFace") on bad inputs; w_cap must be at least the maximum
// edge weight.
PreprocessResult make_subcubic_2connected(const PlanarGraph& g,
                                          const std::vector<int>& terminals,
                                          const std::vector<int>& terminal_faces,
                                          const Weight& w_cap);

// Maps a Steiner tree of the transformed instance back to the source graph:
// twin edges become their source path edges, cycle and connector edges are
// dropped, and a spanning tree of the terminal component is kept. The result
// never weighs more than the input. Throws PreprocessError ("NotASolution")
// if the edges do not connect the transformed terminals.
std::vector<int> lift_solution(const BackMap& bm, const std::vector<int>& solution_edges);

// Edge ids whose removal disconnects their component.
std::vector<int> find_bridges(const PlanarGraph& g);

// True when g is connected and has no articulation vertex.
bool is_biconnected(const PlanarGraph& g);

nlohmann::json backmap_to_json(const BackMap& bm);
BackMap backmap_from_json(const nlohmann::json& j);

}  // namespace pst
