#pragma once

#include <cstdint>
#include <vector>

#include "pst/graph.hpp"

namespace pst {

// Seeded instance generators for the test corpora and the benchmark. Every
// generator is a pure function of its arguments: the same seed produces the
// same instance on every run and platform.

struct TinyGraph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<int> terminals;
};

// Connected simple graph with 4..10 vertices, at most max_edges edges,
// weights in 1..20, and 2..5 distinct terminals. Small enough for the
// exhaustive oracle.
TinyGraph random_tiny_graph(std::uint64_t seed, int max_edges = 14);

struct PlanarInstance {
    PlanarGraph graph;
    std::vector<int> terminals;
    std::vector<int> terminal_faces;  // face ids into graph.faces()
};

// Connected plane instance carved out of an r x c grid with r * c <=
// max_vertices and weights in 1..9. Terminal faces are picked first (1 ..
// face_budget of them) and the terminals are then sampled from their walks,
// so every declared face carries at least one terminal.
PlanarInstance random_grid_instance(std::uint64_t seed, int max_vertices = 25,
                                    int max_terminals = 6, int face_budget = 3);

// Full 2 x m grid with random weights and three terminal faces spread along
// its length. With a low base-case threshold the solver has to split at
// least once. Requires m >= 4.
PlanarInstance wide_grid_instance(int m, std::uint64_t seed);

// Randomized variant of the wide grid: length 4..8, weights 1..9, and up to
// three extra terminals on the outer face. Thin grids fall apart at small
// vertex cuts, so the recursion reproduces the optimum even with tight
// separator budgets; the suite leans on that.
PlanarInstance recursion_instance(std::uint64_t seed);

}  // namespace pst
