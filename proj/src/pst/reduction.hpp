#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pst/graph.hpp"
#include "pst/vgadget.hpp"
#include "pst/weight.hpp"

namespace pst {

struct ReductionError : GraphError {
    using GraphError::GraphError;
};

// Grid-Tiling input: a k x k array of cells, each holding a set of pairs
// from [n] x [n]. A solution is a row vector x and a column vector y with
// (x[a], y[b]) contained in cell (a, b) for every a, b.
struct GridTilingInstance {
    int n = 0;
    int k = 0;
    std::map<std::pair<int, int>, std::set<std::pair<int, int>>> cells;
};

// JSON shape: {"n": 2, "k": 2, "cells": {"1,1": [[1,1],[2,2]], ...}} with
// 1-based indices throughout. All k*k cell keys must be present; empty
// lists are allowed.
GridTilingInstance grid_tiling_from_json(const std::string& text);
std::string grid_tiling_to_json(const GridTilingInstance& gt);

struct GridTilingSolution {
    std::vector<int> x;  // one row value per a in [k]
    std::vector<int> y;  // one column value per b in [k]
};

// Exhaustive search over x, y in [n]^k; refuses n > 3 or k > 3.
std::optional<GridTilingSolution> solve_grid_tiling_bruteforce(const GridTilingInstance& gt);

// Derived sizing shared by the whole construction. The side is padded up to
// a power of two (at least 2); pairs never mention padded values, so padded
// rows and columns stay unselectable.
struct ReductionConstants {
    int n = 0;  // padded side
    int k = 0;
    int N = 0;  // n * n, rows per chain block
    int L = 0;  // n, blocks per chain
    int t = 0;  // 2n, petal count of each connector ring
    Weight base;                  // M = 10 k^2 N L
    std::vector<Weight> powers;   // powers[i] = M^i for i in 0..7
};

ReductionConstants reduction_constants(int n, int k);

// Connector ring splice record: the ring between two adjacent cell rows,
// with its fresh interior vertices and the face that holds its terminals.
struct RingSite {
    std::vector<int> terminals;  // t petal tips in ring order
    std::vector<int> vertices;   // all fresh interior ids (tips included)
    std::vector<int> edges;      // edge ids of the ring
    int carpel_face = -1;        // face carrying all t tips
};

// The assembled instance. Cells are addressed [a-1][b-1] with row a growing
// northward and column b eastward; each cell holds a west chain and an east
// chain (the east one is the same construction read upside down, so its
// portal indices count from the far end).
struct ReductionOutput {
    PlanarGraph graph;
    std::vector<int> terminals;
    std::vector<int> terminal_faces;  // k(k-1) ring faces, then the outer face
    Weight budget;                    // exact Steiner optimum iff the input is solvable
    ReductionConstants constants;

    int root = -1;                    // r, west of everything
    std::vector<int> heads;           // h[a-1], east of row a
    std::vector<int> south_dummy;     // per column b: merged apex below row 1 east
    std::vector<int> north_dummy;     //              merged apex above row k west
    std::vector<std::vector<LvgPorts>> west;  // [a-1][b-1]
    std::vector<std::vector<LvgPorts>> east;
    std::vector<std::vector<std::vector<int>>> fuse;  // [a-1][b-1][i-1], b in [k-1]
    std::vector<std::vector<RingSite>> rings;         // [a-1][b-1], a in [k-1]
};

// Builds the Steiner instance whose optimum is exactly the budget when the
// Grid-Tiling instance is solvable and strictly larger otherwise. Terminals
// sit on k(k-1)+1 faces.
ReductionOutput build_reduction(const GridTilingInstance& gt);

// Replaces every weight-w edge by a path of w unit edges. Faces map
// one-to-one; throws when the total weight exceeds the budget.
PlanarGraph subdivide_to_unit_weights(const PlanarGraph& g, const Weight& budget);

// End-to-end check on one instance: brute-forces the Grid-Tiling side,
// solves the Steiner side exactly, and compares the verdicts. Refuses
// instances whose terminal count exceeds the exact solver's range.
struct ReductionCheckReport {
    int n = 0;
    int k = 0;
    long long vertices = 0;
    long long edges = 0;
    int terminal_count = 0;
    Weight budget;
    Weight optimum;        // 0 when infeasible
    bool feasible = false;
    bool sat_expected = false;
    bool sat_observed = false;
    bool never_below_budget = false;  // optimum >= budget whenever feasible
    bool ok = false;
};

ReductionCheckReport check_reduction_instance(const GridTilingInstance& gt, int threads = 1);

}  // namespace pst
