#pragma once

#include <map>
#include <vector>

#include "pst/graph.hpp"
#include "pst/weight.hpp"

namespace pst {

struct VgadgetError : GraphError {
    using GraphError::GraphError;
};

// One verification block on an N x N grid of vertices v[i,j] (column i,
// row j). Entry portals y[i] sit west of column 1 at row i, exit portals
// z[i] east of column N, and the apex w sits above the top row, joined to
// v[i,N] by a selector edge exactly for i in the chosen set S. Edge weights
// on powers of the base M make row choices comparable across blocks:
// y-edges i*M^2, z-edges and vertical edges M^3 (verticals exist only at
// rows j >= i), horizontal edges M^4, selectors M^5 - i*M^2.
struct VgPorts {
    int n_side = 0;                        // N
    std::vector<std::vector<int>> v;       // v[i-1][j-1] vertex id
    std::vector<int> y, z;                 // portal ids, index i-1
    int w = -1;
    std::vector<int> y_edge, z_edge;       // edge ids, index i-1
    std::map<int, int> selector_edge;      // i -> edge id, i in S
};

struct VgGadget {
    PlanarGraph graph;
    VgPorts ports;
};

// Emits the block into a shared builder. Grid rotations are set explicitly;
// y, z, and w are left on insertion order (w lists its selectors in
// ascending i), so callers may extend them by adding edges or override them
// with set_rotation_edges. Passing w_vertex >= 0 reuses that vertex as the
// apex instead of creating one, which lets several blocks share an apex.
VgPorts emit_vg(GraphBuilder& gb, int N, const std::vector<int>& S, const Weight& M,
                int w_vertex = -1);

// Standalone block; requires 1 <= N, S subset of [N], M > 10*N.
VgGadget build_vg(int N, const std::vector<int>& S, const Weight& M);

// Chain of L blocks: p[i] hangs off y of the first block (weight i*M^1),
// q[i] off z of the last (weight M^2 - i*M^1), and connector edges of
// weight M^5 - i*M^3 - i*M^2 link z of block l to y of block l+1 at each
// row i. Portals appear along the outer face in the order p[1..N],
// w[1..L], q[N..1].
struct LvgPorts {
    std::vector<int> p, q;                      // portal ids, index i-1
    std::vector<int> w;                         // w[l-1] = apex of block l
    std::vector<VgPorts> blocks;                // L entries
    std::vector<int> p_edge, q_edge;            // leaf edge ids
    std::vector<std::vector<int>> connector_edge;  // [l-1][i-1], l in [L-1]
};

struct LvgGadget {
    PlanarGraph graph;
    LvgPorts ports;
};

// Emits the chain into a shared builder. Rotations of p, q, and every w are
// left to the caller. A nonempty w_vertices list (one id per block, entries
// may repeat) reuses those vertices as the block apexes.
LvgPorts emit_lvg(GraphBuilder& gb, int N, int L,
                  const std::vector<std::vector<int>>& S_list, const Weight& M,
                  const std::vector<int>& w_vertices = {});

// Standalone chain; requires |S_list| = L and M > 10*N*L.
LvgGadget build_lvg(int N, int L, const std::vector<std::vector<int>>& S_list,
                    const Weight& M);

// Sweep outcome for the block and chain cost properties, see
// verify_gadget_lemmas.
struct GadgetLemmaReport {
    int n_side = 0;   // N
    int levels = 0;   // L
    Weight base;      // M
    long long vg_cases = 0;
    long long lvg_cases = 0;
    bool row_path_exact = false;    // y[i]-z[j] minimum matches the closed form
    bool apex_lower_bound = false;  // y,z,w minimum never below the target
    bool apex_equality = false;     // target met exactly iff i == j in S
    bool apex_selector = false;     // near-minimal witnesses use the lone i-selector
    bool chain_lower_bound = false;
    bool chain_equality = false;    // chain target met exactly iff i == j in S_l
    bool chain_selector = false;    // at equality, exactly one selector edge overall
    bool ok = false;
};

// Exhausts every selector set (and every list of selector sets for the
// chain), computing exact Steiner minima for all portal triples, and checks
// them against the closed-form targets: row paths cost
// (N-1)M^4 + i(M^2+M^3) + 2*max(0,j-i)M^3 exactly; connecting y[i], z[j], w
// costs at least M^5 + (N-1)M^4 + N*M^3, with equality exactly when
// i = j in S, and any solution cheaper than the target plus M^2 uses the
// i-selector and no other; the L-chain analogue has target
// L*M^5 + L(N-1)M^4 + N*M^3 + M^2 with one selector edge at equality.
// Requires N <= 4 and L <= 2.
GadgetLemmaReport verify_gadget_lemmas(int N, int L, const Weight& M, int threads = 1);

}  // namespace pst
