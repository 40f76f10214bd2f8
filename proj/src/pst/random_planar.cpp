#include "pst/random_planar.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <set>
#include <utility>

namespace pst {

namespace {

// mt19937_64 output is pinned by the standard; the distributions are not.
// Drawing through the raw engine keeps instances identical across platforms.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    int draw(int lo, int hi) {
        assert(lo <= hi);
        return lo + int(eng() % std::uint64_t(hi - lo + 1));
    }

    void shuffle(std::vector<int>& v) {
        for (int i = int(v.size()) - 1; i > 0; --i) std::swap(v[i], v[size_t(draw(0, i))]);
    }
};

bool connected_under(int n, const std::vector<Edge>& edges, const std::vector<bool>& alive) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (size_t e = 0; e < edges.size(); ++e) {
        if (!alive[e]) continue;
        adj[size_t(edges[e].u)].push_back(edges[e].v);
        adj[size_t(edges[e].v)].push_back(edges[e].u);
    }
    std::vector<bool> seen(size_t(n), false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[size_t(v)])
            if (!seen[size_t(u)]) {
                seen[size_t(u)] = true;
                ++count;
                stack.push_back(u);
            }
    }
    return count == n;
}

// Plane graph from the surviving grid edges; rotations follow the
// counterclockwise compass order east, north, west, south.
PlanarGraph build_grid(int rows, int cols, const std::vector<Edge>& edges,
                       const std::vector<bool>& alive) {
    GraphBuilder gb;
    gb.add_vertices(rows * cols);
    std::vector<std::vector<int>> by_vertex(size_t(rows * cols), std::vector<int>(4, -1));
    auto vid = [cols](int i, int j) { return i * cols + j; };
    for (size_t e = 0; e < edges.size(); ++e) {
        if (!alive[e]) continue;
        int id = gb.add_edge(edges[e].u, edges[e].v, edges[e].w);
        int i = edges[e].u / cols, j = edges[e].u % cols;
        if (edges[e].v == vid(i, j + 1)) {
            by_vertex[size_t(edges[e].u)][0] = id;  // east of u
            by_vertex[size_t(edges[e].v)][2] = id;  // west of v
        } else {
            by_vertex[size_t(edges[e].u)][1] = id;  // north of u
            by_vertex[size_t(edges[e].v)][3] = id;  // south of v
        }
    }
    for (int v = 0; v < rows * cols; ++v) {
        std::vector<int> rot;
        for (int d = 0; d < 4; ++d)
            if (by_vertex[size_t(v)][d] >= 0) rot.push_back(by_vertex[size_t(v)][d]);
        if (!rot.empty()) gb.set_rotation_edges(v, rot);
    }
    return gb.build();
}

}  // namespace

TinyGraph random_tiny_graph(std::uint64_t seed, int max_edges) {
    Rng rng(seed);
    TinyGraph out;
    out.n = rng.draw(4, 10);
    std::set<std::pair<int, int>> used;
    for (int v = 1; v < out.n; ++v) {
        int p = rng.draw(0, v - 1);
        used.insert({p, v});
        out.edges.push_back({p, v, Weight(rng.draw(1, 20))});
    }
    int cap = std::min(max_edges, out.n * (out.n - 1) / 2);
    int target = rng.draw(out.n - 1, cap);
    int attempts = 0;
    while (int(out.edges.size()) < target && attempts++ < 200) {
        int u = rng.draw(0, out.n - 1);
        int v = rng.draw(0, out.n - 1);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (!used.insert({u, v}).second) continue;
        out.edges.push_back({u, v, Weight(rng.draw(1, 20))});
    }
    std::vector<int> order(size_t(out.n));
    for (int v = 0; v < out.n; ++v) order[size_t(v)] = v;
    rng.shuffle(order);
    int k = rng.draw(2, std::min(5, out.n));
    out.terminals.assign(order.begin(), order.begin() + k);
    std::sort(out.terminals.begin(), out.terminals.end());
    return out;
}

PlanarInstance random_grid_instance(std::uint64_t seed, int max_vertices, int max_terminals,
                                    int face_budget) {
    if (max_vertices < 4) throw GraphError("random_grid_instance: need at least 4 vertices");
    Rng rng(seed);
    // multi-face instances recurse in the solver, so they stay small
    int nf_want = rng.draw(1, face_budget);
    int cap = nf_want >= 2 ? std::min(max_vertices, 12) : max_vertices;
    int term_cap = nf_want >= 2 ? std::min(4, max_terminals) : max_terminals;
    int rows = rng.draw(2, std::min(5, cap / 2));
    int cols = rng.draw(2, std::max(2, std::min(8, cap / rows)));
    auto vid = [cols](int i, int j) { return i * cols + j; };

    std::vector<Edge> edges;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) edges.push_back({vid(i, j), vid(i, j + 1), Weight(rng.draw(1, 9))});
            if (i + 1 < rows) edges.push_back({vid(i, j), vid(i + 1, j), Weight(rng.draw(1, 9))});
        }

    std::vector<bool> alive(edges.size(), true);
    std::vector<int> order(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) order[e] = int(e);
    rng.shuffle(order);
    for (int e : order) {
        if (rng.draw(0, 99) >= 40) continue;
        alive[size_t(e)] = false;
        if (!connected_under(rows * cols, edges, alive)) alive[size_t(e)] = true;
    }

    PlanarInstance inst;
    inst.graph = build_grid(rows, cols, edges, alive);

    const auto& faces = inst.graph.faces();
    int nf = std::min(nf_want, int(faces.size()));
    std::vector<int> face_order(faces.size());
    for (size_t f = 0; f < faces.size(); ++f) face_order[f] = int(f);
    rng.shuffle(face_order);
    inst.terminal_faces.assign(face_order.begin(), face_order.begin() + nf);

    std::set<int> chosen;
    std::set<int> pool;
    for (int f : inst.terminal_faces) {
        const auto& vs = faces[size_t(f)].vertex_set;
        pool.insert(vs.begin(), vs.end());
        for (int tries = 0; tries < 30; ++tries) {
            int v = vs[size_t(rng.draw(0, int(vs.size()) - 1))];
            if (chosen.insert(v).second) break;
        }
    }
    std::vector<int> pool_list(pool.begin(), pool.end());
    int want = std::max(int(chosen.size()), std::min(rng.draw(2, term_cap), int(pool.size())));
    for (int tries = 0; int(chosen.size()) < want && tries < 200; ++tries)
        chosen.insert(pool_list[size_t(rng.draw(0, int(pool_list.size()) - 1))]);
    if (chosen.size() < 2)
        for (int v : pool_list) {
            chosen.insert(v);
            if (chosen.size() >= 2) break;
        }
    inst.terminals.assign(chosen.begin(), chosen.end());
    return inst;
}

PlanarInstance wide_grid_instance(int m, std::uint64_t seed) {
    if (m < 4) throw GraphError("wide_grid_instance: need m >= 4");
    Rng rng(seed);
    int cols = m;
    auto vid = [cols](int i, int j) { return i * cols + j; };

    std::vector<Edge> edges;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) edges.push_back({vid(i, j), vid(i, j + 1), Weight(rng.draw(1, 9))});
            if (i == 0) edges.push_back({vid(0, j), vid(1, j), Weight(rng.draw(1, 9))});
        }
    std::vector<bool> alive(edges.size(), true);

    PlanarInstance inst;
    inst.graph = build_grid(2, cols, edges, alive);

    const auto& faces = inst.graph.faces();
    int left = -1, right = -1, outer = -1;
    for (size_t f = 0; f < faces.size(); ++f) {
        const Face& face = faces[f];
        if (int(face.ends.size()) > 4) {
            outer = int(f);
            continue;
        }
        if (face.has_vertex(vid(0, 0)) && face.has_vertex(vid(1, 1))) left = int(f);
        if (face.has_vertex(vid(0, cols - 2)) && face.has_vertex(vid(1, cols - 1))) right = int(f);
    }
    assert(left >= 0 && right >= 0 && outer >= 0);
    inst.terminal_faces = {left, right, outer};
    inst.terminals = {vid(0, 0), vid(1, cols - 1), vid(0, cols / 2)};
    std::sort(inst.terminals.begin(), inst.terminals.end());
    return inst;
}

PlanarInstance recursion_instance(std::uint64_t seed) {
    Rng rng(seed);
    int m = rng.draw(4, 8);
    PlanarInstance inst = wide_grid_instance(m, rng.eng());
    std::set<int> chosen(inst.terminals.begin(), inst.terminals.end());
    int extra = rng.draw(0, 3);
    for (int tries = 0; int(chosen.size()) < 3 + extra && tries < 40; ++tries)
        chosen.insert(rng.draw(0, inst.graph.n - 1));  // every vertex borders the outer face
    inst.terminals.assign(chosen.begin(), chosen.end());
    return inst;
}

}  // namespace pst
