#pragma once

#include "pst/graph.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pst {

// A solver input: plane graph, terminals, and the declared terminal faces
// (each an edge-id set that must match one face of the embedding).
struct GraphInstance {
    PlanarGraph g;
    std::vector<int> terminals;
    std::vector<int> terminal_faces;                 // face ids into g.faces()
    std::vector<std::vector<int>> terminal_face_edges;  // as declared, for round-trips
    nlohmann::json meta;                             // optional, preserved verbatim
};

GraphInstance instance_from_json(const nlohmann::json& j);
GraphInstance load_instance(const std::string& path);
nlohmann::json instance_to_json(const GraphInstance& inst);
void save_instance(const GraphInstance& inst, const std::string& path);

// Builds an instance from an already-validated graph plus face ids.
GraphInstance make_instance(PlanarGraph g, std::vector<int> terminals,
                            std::vector<int> terminal_faces);

std::string to_dot(const GraphInstance& inst);

}  // namespace pst
