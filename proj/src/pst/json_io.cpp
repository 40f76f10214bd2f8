#include "pst/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace pst {

namespace {

int match_face(const PlanarGraph& g, std::vector<int> declared_edges) {
    std::sort(declared_edges.begin(), declared_edges.end());
    declared_edges.erase(std::unique(declared_edges.begin(), declared_edges.end()),
                         declared_edges.end());
    for (size_t fi = 0; fi < g.faces().size(); ++fi)
        if (g.faces()[fi].edge_set == declared_edges) return static_cast<int>(fi);
    return -1;
}

}  // namespace

GraphInstance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw GraphError("instance JSON is not an object");
    for (const char* key : {"vertices", "edges", "terminals", "terminal_faces"})
        if (!j.contains(key)) throw GraphError(std::string("instance JSON missing key '") + key + "'");

    if (!j["vertices"].is_number_integer()) throw GraphError("'vertices' must be an integer");
    int n = j["vertices"].get<int>();

    std::vector<Edge> edges;
    for (const auto& je : j["edges"]) {
        if (!je.is_array() || je.size() != 3)
            throw GraphError("each edge must be [u, v, weight-string]");
        Edge e;
        e.u = je[0].get<int>();
        e.v = je[1].get<int>();
        if (je[2].is_string())
            e.w = weight_from_string(je[2].get<std::string>());
        else if (je[2].is_number_integer())
            e.w = Weight(je[2].get<long>());
        else
            throw GraphError("edge weight must be a decimal string");
        edges.push_back(std::move(e));
    }

    std::vector<std::vector<int>> rotation;
    if (j.contains("rotation")) {
        for (const auto& jr : j["rotation"]) {
            if (!jr.is_array())
                throw GraphError("each rotation row must be an array of edge-ends");
            rotation.push_back(jr.get<std::vector<int>>());
        }
    } else {
        // Insertion order per vertex, matching GraphBuilder's default.
        rotation.assign(static_cast<size_t>(n), {});
        for (size_t ei = 0; ei < edges.size(); ++ei) {
            rotation[static_cast<size_t>(edges[ei].u)].push_back(static_cast<int>(2 * ei));
            rotation[static_cast<size_t>(edges[ei].v)].push_back(static_cast<int>(2 * ei + 1));
        }
    }

    GraphInstance inst;
    inst.g = build_graph(n, std::move(edges), std::move(rotation));
    inst.terminals = j["terminals"].get<std::vector<int>>();
    for (int t : inst.terminals)
        if (t < 0 || t >= inst.g.n)
            throw GraphError("terminal " + std::to_string(t) + " out of range");
    {
        std::set<int> dup(inst.terminals.begin(), inst.terminals.end());
        if (dup.size() != inst.terminals.size()) throw GraphError("duplicate terminal");
    }

    for (const auto& jf : j["terminal_faces"]) {
        std::vector<int> fe = jf.get<std::vector<int>>();
        for (int e : fe)
            if (e < 0 || e >= static_cast<int>(inst.g.edges.size()))
                throw GraphError("terminal face lists unknown edge " + std::to_string(e));
        int fi = match_face(inst.g, fe);
        if (fi < 0) throw GraphError("declared terminal face does not match any face of the embedding");
        inst.terminal_faces.push_back(fi);
        inst.terminal_face_edges.push_back(std::move(fe));
    }

    for (int t : inst.terminals) {
        bool covered = false;
        for (int fi : inst.terminal_faces)
            if (inst.g.faces()[fi].has_vertex(t)) covered = true;
        if (!covered)
            throw GraphError("terminal " + std::to_string(t) +
                             " lies on none of the declared terminal faces");
    }

    if (j.contains("meta")) inst.meta = j["meta"];
    return inst;
}

GraphInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw GraphError("JSON parse error in " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

nlohmann::json instance_to_json(const GraphInstance& inst) {
    nlohmann::json j;
    j["vertices"] = inst.g.n;
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : inst.g.edges)
        edges.push_back({e.u, e.v, weight_to_string(e.w)});
    j["edges"] = std::move(edges);
    j["rotation"] = inst.g.rotation;
    j["terminals"] = inst.terminals;
    nlohmann::json tf = nlohmann::json::array();
    if (!inst.terminal_face_edges.empty()) {
        for (const auto& fe : inst.terminal_face_edges) tf.push_back(fe);
    } else {
        for (int fi : inst.terminal_faces) tf.push_back(inst.g.faces()[fi].edge_set);
    }
    j["terminal_faces"] = std::move(tf);
    if (!inst.meta.is_null()) j["meta"] = inst.meta;
    return j;
}

void save_instance(const GraphInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot write " + path);
    out << instance_to_json(inst).dump(1) << "\n";
}

GraphInstance make_instance(PlanarGraph g, std::vector<int> terminals,
                            std::vector<int> terminal_faces) {
    GraphInstance inst;
    inst.g = std::move(g);
    inst.terminals = std::move(terminals);
    inst.terminal_faces = std::move(terminal_faces);
    for (int fi : inst.terminal_faces)
        inst.terminal_face_edges.push_back(inst.g.faces()[fi].edge_set);
    return inst;
}

std::string to_dot(const GraphInstance& inst) {
    std::set<int> term(inst.terminals.begin(), inst.terminals.end());
    std::set<int> portal;
    if (inst.meta.is_object() && inst.meta.contains("portals"))
        for (const auto& p : inst.meta.at("portals")) portal.insert(p.get<int>());
    std::ostringstream out;
    out << "graph G {\n  node [shape=circle fontsize=10];\n";
    for (int v = 0; v < inst.g.n; ++v) {
        out << "  v" << v;
        if (term.count(v))
            out << " [shape=doublecircle style=filled fillcolor=lightblue]";
        else if (portal.count(v))
            out << " [shape=diamond style=filled fillcolor=palegreen]";
        out << ";\n";
    }
    for (size_t e = 0; e < inst.g.edges.size(); ++e) {
        const Edge& ed = inst.g.edges[e];
        out << "  v" << ed.u << " -- v" << ed.v << " [label=\"" << weight_to_string(ed.w)
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace pst
