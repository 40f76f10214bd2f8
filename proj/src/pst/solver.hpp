#pragma once

#include <vector>

#include "pst/graph.hpp"
#include "pst/oracles.hpp"
#include "pst/partition.hpp"
#include "pst/weight.hpp"

namespace pst {

struct SolverError : GraphError {
    using GraphError::GraphError;
};

// Steiner forest instance on a plane graph: connect every terminal to some
// boundary vertex, and keep boundary vertices that share a block of pi in one
// component. Terminals are expected to lie on the listed faces.
struct PbsfInstance {
    const PlanarGraph* graph = nullptr;
    std::vector<int> boundary;   // B, sorted vertex ids
    Partition pi;                // partition of boundary
    std::vector<int> terminals;  // T, sorted vertex ids
    std::vector<int> faces;      // K, face ids into graph->faces()
};

struct SolverConfig {
    int c0 = 8;           // base-case threshold on |B| plus terminal faces
    int sep_max = 2;      // cap on enumerated separator size
    bool parallel = false;
    int threads = 1;      // used when parallel is set
    int depth_max = 16;   // recursion depth cutoff, base case beyond it
};

struct SolverStats {
    int recursion_depth = 0;        // deepest node visited, root = 0
    long long base_case_calls = 0;
    long long separators_tried = 0;
};

// steiner recurses on small separators of the face walks; its answer always
// satisfies the requirements above and never weighs less than their optimum.
// It can weigh more only by additionally keeping distinct blocks of pi apart,
// so with a single boundary vertex the answer is exactly optimal whenever
// optimal_certified is set. The flag reports that the separator enumeration
// covered the full size bound at every node and no truncation occurred; with
// a small sep_max the result is a feasible upper bound instead.
struct SolverResult {
    SteinerSolution solution;
    bool optimal_certified = false;
    SolverStats stats;
};

SolverResult steiner(const PbsfInstance& inst, const SolverConfig& cfg = {});

// Exact solution of the stated requirements by brute force over coarsenings
// of pi and non-crossing assignments of terminals to blocks; exponential in
// |B| + |T| and independent of the recursion.
SteinerSolution steiner_base(const PbsfInstance& inst);

// Face ids among face_ids whose walk meets x.
std::vector<int> faces_hit(const PlanarGraph& g, const std::vector<int>& face_ids,
                           const std::vector<int>& x);

// Components of the face walk of face_id after deleting the vertices in x,
// as a partition of the surviving walk vertices. Adjacency is along the walk,
// not through the rest of the graph.
Partition face_components(const PlanarGraph& g, int face_id, const std::vector<int>& x);

}  // namespace pst
