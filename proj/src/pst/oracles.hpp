#pragma once

#include "pst/graph.hpp"

#include <utility>
#include <vector>

namespace pst {

struct SteinerSolution {
    bool feasible = false;
    Weight weight;
    std::vector<int> edges;  // sorted, unique

    static SteinerSolution infeasible_solution() { return SteinerSolution{}; }
    static SteinerSolution empty_solution() {
        SteinerSolution s;
        s.feasible = true;
        s.weight = 0;
        return s;
    }
};

// Strictly better: feasibility first, then weight, then lexicographic edge list.
bool solution_less(const SteinerSolution& a, const SteinerSolution& b);

// Plain weighted multigraph with adjacency lists; the oracles do not need an
// embedding.
struct AdjGraph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // per vertex: (edge id, other end)

    static AdjGraph from(const PlanarGraph& g);
    static AdjGraph from_edges(int n, std::vector<Edge> edges);
    Weight weight_of(const std::vector<int>& edge_ids) const;
};

struct OracleConfig {
    int threads = 1;
    int max_terminals = 16;
    bool want_witness = true;
};

// Exact Steiner tree via the Dreyfus-Wagner subset dynamic program.
// Terminal count is capped by cfg.max_terminals. When every weight divided by
// the common gcd keeps the total under 2^62 the table runs in uint64, which
// is what makes the big gadget instances tractable; otherwise it runs in
// arbitrary precision. threads > 1 parallelizes over same-popcount masks and
// is bit-identical to the serial run.
SteinerSolution dreyfus_wagner(const AdjGraph& g, std::vector<int> terminals,
                               const OracleConfig& cfg = {});

// For every vertex v, the minimum weight of a tree spanning terminals plus v;
// reachable[v] is false where no such tree exists. One subset dynamic program
// run answers all v at once, which keeps whole-graph bound sweeps cheap.
struct SteinerField {
    std::vector<char> reachable;
    std::vector<Weight> weight;
};
SteinerField dreyfus_wagner_field(const AdjGraph& g, std::vector<int> terminals,
                                  const OracleConfig& cfg = {});

// Ground-truth oracle: minimum-weight edge subset connecting the terminals,
// by enumeration over all 2^|E| subsets. Rejects graphs with more than 24
// edges.
SteinerSolution exhaustive_min_steiner(const AdjGraph& g, std::vector<int> terminals,
                                       const OracleConfig& cfg = {});

// Exact Steiner tree when all terminals lie on one face of a plane graph
// whose face walk is a simple cycle: interval DP over the cyclic terminal
// order with Dijkstra closures.
SteinerSolution one_face_steiner(const PlanarGraph& g, std::vector<int> terminals,
                                 int face_id, const OracleConfig& cfg = {});

// Minimum weight of a forest covering `terminals` in which every component
// contains at least one portal. Computed as a Steiner tree in the graph
// augmented with a zero-weight apex joined to every portal.
SteinerSolution portal_anchored_forest(const PlanarGraph& g, const std::vector<int>& terminals,
                                       const std::vector<int>& portals,
                                       const OracleConfig& cfg = {});
Weight portal_anchored_forest_min(const PlanarGraph& g, const std::vector<int>& terminals,
                                  const std::vector<int>& portals,
                                  const OracleConfig& cfg = {});

// Removes cycles (edge-id order spanning forest) and then non-kept leaves.
std::vector<int> prune_to_tree(const AdjGraph& g, std::vector<int> edge_ids,
                               const std::vector<int>& keep_vertices);

}  // namespace pst
