#pragma once

#include "pst/weight.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pst {

class GraphError : public std::runtime_error {
public:
    explicit GraphError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Edge {
    int u = -1;
    int v = -1;
    Weight w;
};

// A face of the embedding, as one closed walk of directed edge-ends.
// End 2e leaves edges[e].u, end 2e+1 leaves edges[e].v. The walk is stored
// starting at its smallest end so face lists are deterministic.
struct Face {
    std::vector<int> ends;
    std::vector<int> edges;       // edge id under each end, walk order
    std::vector<int> vertices;    // tail vertex of each end, walk order
    std::vector<int> vertex_set;  // sorted, unique
    std::vector<int> edge_set;    // sorted, unique

    bool has_vertex(int v) const;
    bool has_edge(int e) const;
};

// Undirected multigraph with a rotation system (ccw edge-end order around
// each vertex). Self-loops are rejected; parallel edges are fine.
class PlanarGraph {
public:
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> rotation;

    int edge_of(int end) const { return end >> 1; }
    int twin(int end) const { return end ^ 1; }
    int tail_of(int end) const {
        const Edge& e = edges[end >> 1];
        return (end & 1) ? e.v : e.u;
    }
    int head_of(int end) const {
        const Edge& e = edges[end >> 1];
        return (end & 1) ? e.u : e.v;
    }
    int end_count() const { return 2 * static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(rotation[v].size()); }

    const std::vector<Face>& faces() const { return faces_; }
    int face_of_end(int end) const { return end_face_[end]; }
    const std::vector<int>& faces_at_vertex(int v) const { return vertex_faces_[v]; }

    int components() const { return components_; }
    bool connected() const { return components_ <= 1; }
    Weight total_weight() const;
    Weight weight_of_edges(const std::vector<int>& edge_ids) const;

    friend PlanarGraph build_graph(int n, std::vector<Edge> edges,
                                   std::vector<std::vector<int>> rotation);

private:
    std::vector<Face> faces_;
    std::vector<int> end_face_;
    std::vector<std::vector<int>> vertex_faces_;
    int components_ = 0;

    void finalize();
};

// Validates the input (ends present exactly once, listed at their own vertex,
// no self-loops, nonnegative weights) and checks that the rotation system is
// a plane embedding via the Euler relation per component. Throws GraphError.
PlanarGraph build_graph(int n, std::vector<Edge> edges,
                        std::vector<std::vector<int>> rotation);

// Convenience for constructing gadgets: add edges, then describe each
// vertex's rotation as a ccw list of incident edge ids. Vertices with no
// explicit rotation get their edges in insertion order.
class GraphBuilder {
public:
    int add_vertex();
    int add_vertices(int count);  // returns id of the first
    int add_edge(int u, int v, Weight w);
    void set_rotation_edges(int v, const std::vector<int>& edge_ids);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int e) const { return edges_[e]; }

    PlanarGraph build() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> rotation_edges_;
    std::vector<bool> rotation_set_;
};

struct PathResult {
    bool reachable = false;
    Weight dist;
    std::vector<int> vertices;
    std::vector<int> edges;
};

// Minimum-weight s-t path; among minimum-weight paths, the lexicographically
// smallest vertex sequence, with smallest edge ids on parallel ties.
PathResult shortest_path(const PlanarGraph& g, int s, int t);

// Multi-source distances; empty optional means unreachable.
std::vector<bool> reach_mask(const PlanarGraph& g, const std::vector<int>& sources);
std::vector<Weight> dijkstra_dist(const PlanarGraph& g, const std::vector<int>& sources,
                                  std::vector<bool>* reached = nullptr);

}  // namespace pst
