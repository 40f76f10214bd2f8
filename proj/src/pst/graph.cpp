#include "pst/graph.hpp"

#include "pst/unionfind.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <queue>
#include <utility>

namespace pst {

bool Face::has_vertex(int v) const {
    return std::binary_search(vertex_set.begin(), vertex_set.end(), v);
}

bool Face::has_edge(int e) const {
    return std::binary_search(edge_set.begin(), edge_set.end(), e);
}

PlanarGraph build_graph(int n, std::vector<Edge> edges,
                        std::vector<std::vector<int>> rotation) {
    if (n < 0) throw GraphError("vertex count is negative");
    if (static_cast<int>(rotation.size()) != n)
        throw GraphError("rotation table has " + std::to_string(rotation.size()) +
                         " rows for " + std::to_string(n) + " vertices");
    for (size_t e = 0; e < edges.size(); ++e) {
        const Edge& ed = edges[e];
        if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
            throw GraphError("edge " + std::to_string(e) + " has an endpoint out of range");
        if (ed.u == ed.v)
            throw GraphError("edge " + std::to_string(e) + " is a self-loop");
        if (ed.w < 0)
            throw GraphError("edge " + std::to_string(e) + " has negative weight");
    }

    PlanarGraph g;
    g.n = n;
    g.edges = std::move(edges);
    g.rotation = std::move(rotation);

    const int m2 = g.end_count();
    std::vector<int> seen(m2, 0);
    for (int v = 0; v < n; ++v) {
        for (int h : g.rotation[v]) {
            if (h < 0 || h >= m2)
                throw GraphError("rotation of vertex " + std::to_string(v) +
                                 " lists unknown edge-end " + std::to_string(h));
            if (seen[h]++)
                throw GraphError("edge-end " + std::to_string(h) + " listed twice");
            if (g.tail_of(h) != v)
                throw GraphError("edge-end " + std::to_string(h) +
                                 " listed at vertex " + std::to_string(v) +
                                 " but belongs to vertex " + std::to_string(g.tail_of(h)));
        }
    }
    for (int h = 0; h < m2; ++h)
        if (!seen[h])
            throw GraphError("edge-end " + std::to_string(h) + " missing from rotation");

    g.finalize();
    return g;
}

void PlanarGraph::finalize() {
    const int m2 = end_count();

    std::vector<std::pair<int, int>> where(m2);  // vertex, index within its rotation
    for (int v = 0; v < n; ++v)
        for (size_t i = 0; i < rotation[v].size(); ++i)
            where[rotation[v][i]] = {v, static_cast<int>(i)};

    // Next end of the face walk: step to the twin, then take the rotation
    // successor around the vertex we arrived at.
    std::vector<int> succ(m2);
    for (int h = 0; h < m2; ++h) {
        auto [v, i] = where[h ^ 1];
        const auto& rot = rotation[v];
        succ[h] = rot[(i + 1) % rot.size()];
    }

    faces_.clear();
    end_face_.assign(m2, -1);
    std::vector<std::vector<int>> walks;
    for (int h0 = 0; h0 < m2; ++h0) {
        if (end_face_[h0] != -1) continue;
        std::vector<int> walk;
        int h = h0;
        do {
            end_face_[h] = static_cast<int>(walks.size());
            walk.push_back(h);
            h = succ[h];
        } while (h != h0);
        auto mn = std::min_element(walk.begin(), walk.end());
        std::rotate(walk.begin(), mn, walk.end());
        walks.push_back(std::move(walk));
    }
    std::sort(walks.begin(), walks.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });

    for (const auto& walk : walks) {
        Face f;
        f.ends = walk;
        for (int h : walk) {
            f.edges.push_back(edge_of(h));
            f.vertices.push_back(tail_of(h));
        }
        f.vertex_set = f.vertices;
        std::sort(f.vertex_set.begin(), f.vertex_set.end());
        f.vertex_set.erase(std::unique(f.vertex_set.begin(), f.vertex_set.end()),
                           f.vertex_set.end());
        f.edge_set = f.edges;
        std::sort(f.edge_set.begin(), f.edge_set.end());
        f.edge_set.erase(std::unique(f.edge_set.begin(), f.edge_set.end()), f.edge_set.end());
        for (int h : walk) end_face_[h] = static_cast<int>(faces_.size());
        faces_.push_back(std::move(f));
    }
    // The loop above rewrote end_face_ in sorted face order already; redo it
    // cleanly to be safe.
    for (size_t fi = 0; fi < faces_.size(); ++fi)
        for (int h : faces_[fi].ends) end_face_[h] = static_cast<int>(fi);

    UnionFind uf(n);
    for (const Edge& e : edges) uf.unite(e.u, e.v);
    std::vector<int> comp_vertices(n, 0), comp_edges(n, 0), comp_faces(n, 0);
    for (int v = 0; v < n; ++v) comp_vertices[uf.find(v)]++;
    for (const Edge& e : edges) comp_edges[uf.find(e.u)]++;
    for (const Face& f : faces_) comp_faces[uf.find(f.vertices[0])]++;

    components_ = 0;
    for (int v = 0; v < n; ++v) {
        if (uf.find(v) != v) continue;
        components_++;
        int expected = comp_edges[v] > 0 ? 2 : 1;
        if (comp_vertices[v] - comp_edges[v] + comp_faces[v] != expected)
            throw GraphError("rotation system is not a plane embedding (Euler check failed)");
    }

    vertex_faces_.assign(n, {});
    for (size_t fi = 0; fi < faces_.size(); ++fi)
        for (int v : faces_[fi].vertex_set)
            vertex_faces_[v].push_back(static_cast<int>(fi));
}

Weight PlanarGraph::total_weight() const {
    Weight t = 0;
    for (const Edge& e : edges) t += e.w;
    return t;
}

Weight PlanarGraph::weight_of_edges(const std::vector<int>& edge_ids) const {
    Weight t = 0;
    for (int e : edge_ids) t += edges[e].w;
    return t;
}

int GraphBuilder::add_vertex() {
    n_++;
    rotation_edges_.emplace_back();
    rotation_set_.push_back(false);
    return n_ - 1;
}

int GraphBuilder::add_vertices(int count) {
    int first = n_;
    for (int i = 0; i < count; ++i) add_vertex();
    return first;
}

int GraphBuilder::add_edge(int u, int v, Weight w) {
    edges_.push_back(Edge{u, v, std::move(w)});
    int e = static_cast<int>(edges_.size()) - 1;
    if (u >= 0 && u < n_ && !rotation_set_[u]) rotation_edges_[u].push_back(e);
    if (v >= 0 && v < n_ && !rotation_set_[v]) rotation_edges_[v].push_back(e);
    return e;
}

void GraphBuilder::set_rotation_edges(int v, const std::vector<int>& edge_ids) {
    rotation_edges_[v] = edge_ids;
    rotation_set_[v] = true;
}

PlanarGraph GraphBuilder::build() const {
    std::vector<std::vector<int>> rot(n_);
    for (int v = 0; v < n_; ++v) {
        rot[v].reserve(rotation_edges_[v].size());
        for (int e : rotation_edges_[v]) {
            if (e < 0 || e >= static_cast<int>(edges_.size()))
                throw GraphError("rotation of vertex " + std::to_string(v) +
                                 " lists unknown edge " + std::to_string(e));
            const Edge& ed = edges_[e];
            int end = (ed.u == v) ? 2 * e : (ed.v == v) ? 2 * e + 1 : -1;
            if (end < 0)
                throw GraphError("rotation of vertex " + std::to_string(v) +
                                 " lists non-incident edge " + std::to_string(e));
            rot[v].push_back(end);
        }
    }
    return build_graph(n_, edges_, std::move(rot));
}

namespace {

struct DistTable {
    std::vector<Weight> dist;
    std::vector<bool> reach;
};

DistTable run_dijkstra(const PlanarGraph& g, const std::vector<int>& sources) {
    DistTable out{std::vector<Weight>(g.n, Weight(0)), std::vector<bool>(g.n, false)};
    using Item = std::pair<Weight, int>;
    auto cmp = [](const Item& a, const Item& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    for (int s : sources) {
        if (!out.reach[s]) {
            out.reach[s] = true;
            out.dist[s] = 0;
            pq.push({Weight(0), s});
        }
    }
    std::vector<bool> done(g.n, false);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        for (int h : g.rotation[u]) {
            int v = g.head_of(h);
            Weight nd = d + g.edges[g.edge_of(h)].w;
            if (!out.reach[v] || nd < out.dist[v]) {
                out.reach[v] = true;
                out.dist[v] = nd;
                pq.push({std::move(nd), v});
            }
        }
    }
    return out;
}

}  // namespace

std::vector<bool> reach_mask(const PlanarGraph& g, const std::vector<int>& sources) {
    std::vector<bool> seen(g.n, false);
    std::vector<int> stack;
    for (int s : sources)
        if (!seen[s]) {
            seen[s] = true;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int h : g.rotation[u]) {
            int v = g.head_of(h);
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

std::vector<Weight> dijkstra_dist(const PlanarGraph& g, const std::vector<int>& sources,
                                  std::vector<bool>* reached) {
    DistTable t = run_dijkstra(g, sources);
    if (reached) *reached = t.reach;
    return std::move(t.dist);
}

PathResult shortest_path(const PlanarGraph& g, int s, int t) {
    PathResult res;
    if (s < 0 || s >= g.n || t < 0 || t >= g.n)
        throw GraphError("shortest_path endpoint out of range");
    if (s == t) {
        res.reachable = true;
        res.dist = 0;
        res.vertices = {s};
        return res;
    }
    DistTable ds = run_dijkstra(g, {s});
    if (!ds.reach[t]) return res;
    DistTable dt = run_dijkstra(g, {t});
    const Weight opt = ds.dist[t];

    // Tight edges u->v (ds[u] + w + dt[v] == opt) are exactly the directed
    // edges lying on some minimum-weight s-t path; any s->t walk inside them
    // telescopes to weight opt. Among parallel tight edges keep the smallest id.
    std::vector<std::vector<std::pair<int, int>>> cand(g.n);  // (head, edge id)
    for (int u = 0; u < g.n; ++u) {
        if (!ds.reach[u] || !dt.reach[u]) continue;
        std::map<int, int> best;
        for (int h : g.rotation[u]) {
            int v = g.head_of(h);
            if (!dt.reach[v]) continue;
            int e = g.edge_of(h);
            if (ds.dist[u] + g.edges[e].w + dt.dist[v] != opt) continue;
            auto it = best.find(v);
            if (it == best.end() || e < it->second) best[v] = e;
        }
        cand[u].assign(best.begin(), best.end());
    }

    // Depth-first over tight edges, smallest next vertex first, skipping
    // visited vertices; the first complete path is the lexicographically
    // smallest simple one. Backtracking only triggers on zero-weight ties.
    std::vector<char> visited(g.n, 0);
    std::vector<int> vpath{s}, epath;
    bool found = false;
    std::function<void(int)> dfs = [&](int u) {
        if (u == t) {
            found = true;
            return;
        }
        visited[u] = 1;
        for (auto [v, e] : cand[u]) {
            if (visited[v]) continue;
            vpath.push_back(v);
            epath.push_back(e);
            dfs(v);
            if (found) return;
            vpath.pop_back();
            epath.pop_back();
        }
        visited[u] = 0;
    };
    dfs(s);
    assert(found);
    res.reachable = true;
    res.dist = opt;
    res.vertices = std::move(vpath);
    res.edges = std::move(epath);
    return res;
}

}  // namespace pst
