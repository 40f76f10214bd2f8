#include "pst/preprocess.hpp"

#include "pst/unionfind.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <utility>

namespace pst {

namespace {

// Mutable graph state between rebuild rounds. Edge ids persist across every
// transformation step; new edges are appended.
struct Working {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> rotation;
};

int end_at(const std::vector<Edge>& edges, int e, int v) {
    if (edges[e].u == v) return 2 * e;
    assert(edges[e].v == v);
    return 2 * e + 1;
}

void move_end(std::vector<Edge>& edges, int end, int to) {
    if (end & 1)
        edges[end >> 1].v = to;
    else
        edges[end >> 1].u = to;
}

struct DfsSummary {
    std::vector<int> bridges;
    bool has_articulation = false;
    int components = 0;
};

// Iterative lowpoint DFS over the rotation lists. Parallel edges are handled
// by skipping only the exact end used to enter a vertex, so a second edge to
// the parent counts as a back edge.
DfsSummary lowpoint_scan(const PlanarGraph& g) {
    DfsSummary out;
    std::vector<int> disc(g.n, -1), low(g.n, 0);
    struct Frame {
        int v;
        int entry;  // end at v of the tree edge, -1 at roots
        size_t i = 0;
        int children = 0;
    };
    int timer = 0;
    std::vector<Frame> st;
    for (int r = 0; r < g.n; ++r) {
        if (disc[r] != -1) continue;
        ++out.components;
        disc[r] = low[r] = timer++;
        st.push_back({r, -1, 0, 0});
        while (!st.empty()) {
            Frame& f = st.back();
            if (f.i < g.rotation[f.v].size()) {
                int h = g.rotation[f.v][f.i++];
                if (h == f.entry) continue;
                int w = g.head_of(h);
                if (disc[w] == -1) {
                    ++f.children;
                    disc[w] = low[w] = timer++;
                    st.push_back({w, g.twin(h), 0, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                Frame done = f;
                st.pop_back();
                if (st.empty()) {
                    if (done.children >= 2) out.has_articulation = true;
                } else {
                    Frame& p = st.back();
                    low[p.v] = std::min(low[p.v], low[done.v]);
                    if (low[done.v] > disc[p.v]) out.bridges.push_back(g.edge_of(done.entry));
                    if (low[done.v] >= disc[p.v] && p.entry != -1) out.has_articulation = true;
                    if (low[done.v] >= disc[p.v] && p.entry == -1 && p.children >= 2)
                        out.has_articulation = true;
                }
            }
        }
    }
    std::sort(out.bridges.begin(), out.bridges.end());
    return out;
}

struct TwoPath {
    std::vector<int> edge_ids;  // in order from verts[0] to verts.back()
    std::vector<int> verts;     // edge_ids.size() + 1 entries
};

// Grows the maximal 2-path through a bridge: extend over degree-2 vertices on
// both sides until a vertex of degree != 2.
TwoPath maximal_two_path(const PlanarGraph& g, int bridge) {
    auto extend = [&](int start_v) {
        std::vector<int> chain;
        int v = start_v, last = bridge;
        while (g.degree(v) == 2) {
            int out_end = -1;
            for (int h : g.rotation[v])
                if (g.edge_of(h) != last) out_end = h;
            assert(out_end != -1);
            int e2 = g.edge_of(out_end);
            assert(e2 != bridge);  // a bridge cannot lie on a cycle
            chain.push_back(e2);
            v = g.head_of(out_end);
            last = e2;
        }
        return std::make_pair(chain, v);
    };
    auto [left, u] = extend(g.edges[bridge].u);
    auto [right, v] = extend(g.edges[bridge].v);
    assert(u != v);

    TwoPath p;
    p.edge_ids.assign(left.rbegin(), left.rend());
    p.edge_ids.push_back(bridge);
    p.edge_ids.insert(p.edge_ids.end(), right.begin(), right.end());
    p.verts.push_back(u);
    int at = u;
    for (int e : p.edge_ids) {
        at = (g.edges[e].u == at) ? g.edges[e].v : g.edges[e].u;
        p.verts.push_back(at);
    }
    assert(at == v);
    return p;
}

// Re-identifies each tracked face after a rebuild: the successor face is the
// one whose pre-existing edges are exactly the previous edge set. Ties (which
// need identical old edge sets) prefer the face holding all terminals that
// were assigned to this slot.
std::vector<int> rematch_faces(const PlanarGraph& cur,
                               const std::vector<std::vector<int>>& prev_sets, int prev_edge_count,
                               const std::vector<std::vector<int>>& slot_terminals) {
    const auto& faces = cur.faces();
    std::vector<std::vector<int>> old_part(faces.size());
    for (size_t fi = 0; fi < faces.size(); ++fi)
        for (int e : faces[fi].edge_set)
            if (e < prev_edge_count) old_part[fi].push_back(e);

    std::vector<int> chosen(prev_sets.size(), -1);
    for (size_t ki = 0; ki < prev_sets.size(); ++ki) {
        std::vector<int> cand;
        for (size_t fi = 0; fi < faces.size(); ++fi)
            if (old_part[fi] == prev_sets[ki]) cand.push_back(static_cast<int>(fi));
        if (cand.empty()) throw PreprocessError("lost track of a terminal face during rewrite");
        int pick = -1;
        for (int fi : cand) {
            bool all = true;
            for (int t : slot_terminals[ki])
                if (!faces[fi].has_vertex(t)) all = false;
            if (all) {
                pick = fi;
                break;
            }
        }
        chosen[ki] = (pick != -1) ? pick : cand.front();
    }
    return chosen;
}

PlanarGraph build_working(const Working& w) {
    return build_graph(w.n, w.edges, w.rotation);
}

}  // namespace

std::vector<int> find_bridges(const PlanarGraph& g) { return lowpoint_scan(g).bridges; }

bool is_biconnected(const PlanarGraph& g) {
    DfsSummary s = lowpoint_scan(g);
    return s.components <= 1 && !s.has_articulation;
}

PreprocessResult make_subcubic_2connected(const PlanarGraph& g,
                                          const std::vector<int>& terminals,
                                          const std::vector<int>& terminal_faces,
                                          const Weight& w_cap) {
    if (!g.connected()) throw PreprocessError("Disconnected: input graph must be connected");
    for (int f : terminal_faces)
        if (f < 0 || f >= static_cast<int>(g.faces().size()))
            throw PreprocessError("terminal face index out of range");
    for (const Edge& e : g.edges)
        if (w_cap < e.w) throw PreprocessError("w_cap is below the largest edge weight");

    std::vector<int> T(terminals);
    std::sort(T.begin(), T.end());
    T.erase(std::unique(T.begin(), T.end()), T.end());
    for (int t : T)
        if (t < 0 || t >= g.n) throw PreprocessError("terminal out of range");

    // Assign each terminal the first listed face it lies on.
    std::vector<int> k_of(T.size(), -1);
    for (size_t i = 0; i < T.size(); ++i) {
        for (size_t ki = 0; ki < terminal_faces.size(); ++ki)
            if (g.faces()[terminal_faces[ki]].has_vertex(T[i])) {
                k_of[i] = static_cast<int>(ki);
                break;
            }
        if (k_of[i] == -1)
            throw PreprocessError("TerminalNotOnFace: terminal " + std::to_string(T[i]) +
                                  " is on none of the given faces");
    }

    Working w;
    w.n = g.n;
    w.edges = g.edges;
    w.rotation = g.rotation;

    BackMap bm;
    bm.orig_n = g.n;
    bm.orig_edges = g.edges;
    bm.orig_terminals = T;
    bm.vertex_to_original.resize(g.n);
    for (int v = 0; v < g.n; ++v) bm.vertex_to_original[v] = v;
    bm.edge_kinds.assign(g.edges.size(), EdgeKind::original);

    std::vector<int> cur_pos(T.size());
    for (size_t i = 0; i < T.size(); ++i) cur_pos[i] = T[i];

    // Step 1: replace every vertex of degree >= 4 by a zero-weight cycle,
    // sending the i-th rotation end to the i-th cycle vertex. The vertex
    // keeps its id as cycle position 0.
    int prev_edge_count = static_cast<int>(g.edges.size());
    for (int u = 0; u < g.n; ++u) {
        int ell = g.degree(u);
        if (ell < 4) continue;
        std::vector<int> cyc(ell);
        cyc[0] = u;
        for (int j = 1; j < ell; ++j) {
            cyc[j] = w.n++;
            bm.vertex_to_original.push_back(u);
            w.rotation.emplace_back();
        }
        std::vector<int> ring(ell);
        for (int j = 0; j < ell; ++j) {
            ring[j] = static_cast<int>(w.edges.size());
            w.edges.push_back({cyc[j], cyc[(j + 1) % ell], Weight(0)});
            bm.edge_kinds.push_back(EdgeKind::cycle);
            bm.cycle_groups[ring[j]] = u;
        }
        for (int j = 0; j < ell; ++j) {
            int h = g.rotation[u][j];
            move_end(w.edges, h, cyc[j]);
            w.rotation[cyc[j]] = {h, 2 * ring[j], 2 * ring[(j + ell - 1) % ell] + 1};
        }
    }
    // Relocate terminals of expanded vertices onto their face's cycle vertex.
    for (size_t i = 0; i < T.size(); ++i) {
        int u = T[i];
        int ell = g.degree(u);
        if (ell < 4) continue;
        int want = terminal_faces[k_of[i]];
        int slot = -1;
        for (int j = 0; j < ell; ++j)
            if (g.face_of_end(g.rotation[u][j]) == want) {
                slot = j;
                break;
            }
        assert(slot != -1);
        if (slot > 0) {
            int base = 0;
            for (int x = 0; x < u; ++x)
                if (g.degree(x) >= 4) base += g.degree(x) - 1;
            cur_pos[i] = g.n + base + slot - 1;
        }
    }

    PlanarGraph cur = build_working(w);

    std::vector<std::vector<int>> k_sets(terminal_faces.size());
    for (size_t ki = 0; ki < terminal_faces.size(); ++ki)
        k_sets[ki] = g.faces()[terminal_faces[ki]].edge_set;
    std::vector<std::vector<int>> slot_terminals(terminal_faces.size());
    for (size_t i = 0; i < T.size(); ++i) slot_terminals[k_of[i]].push_back(cur_pos[i]);

    std::vector<int> k_face_ids = rematch_faces(cur, k_sets, prev_edge_count, slot_terminals);
    for (size_t ki = 0; ki < k_sets.size(); ++ki) k_sets[ki] = cur.faces()[k_face_ids[ki]].edge_set;

    // Step 2: double every maximal 2-path that contains a bridge, one path
    // per round, until no bridge is left. Doubling never creates a bridge,
    // so this terminates.
    size_t round_cap = lowpoint_scan(cur).bridges.size() + 1;
    for (size_t round = 0; round < round_cap + 1; ++round) {
        std::vector<int> bridges = find_bridges(cur);
        if (bridges.empty()) break;
        if (round == round_cap) throw PreprocessError("path doubling failed to terminate");
        TwoPath p = maximal_two_path(cur, bridges.front());
        const int r = static_cast<int>(p.edge_ids.size());
        int u = p.verts.front(), v = p.verts.back();

        std::vector<int> copies(r + 1);  // copies[i] doubles p.verts[i]
        for (int i = 0; i <= r; ++i) {
            copies[i] = w.n++;
            bm.vertex_to_original.push_back(bm.vertex_to_original[p.verts[i]]);
            w.rotation.emplace_back();
        }
        int cu = static_cast<int>(w.edges.size());
        w.edges.push_back({u, copies[0], Weight(0)});
        bm.edge_kinds.push_back(EdgeKind::connector);
        bm.connectors[cu] = bm.vertex_to_original[u];
        int cv = static_cast<int>(w.edges.size());
        w.edges.push_back({v, copies[r], Weight(0)});
        bm.edge_kinds.push_back(EdgeKind::connector);
        bm.connectors[cv] = bm.vertex_to_original[v];
        std::vector<int> twin(r);
        for (int i = 0; i < r; ++i) {
            twin[i] = static_cast<int>(w.edges.size());
            w.edges.push_back({copies[i], copies[i + 1], w_cap});
            bm.edge_kinds.push_back(EdgeKind::twin);
            assert(bm.edge_kinds[p.edge_ids[i]] == EdgeKind::original);
            bm.path_twins[twin[i]] = p.edge_ids[i];
        }

        // Start side: hand the rotation successor of the path end over to the
        // copy; end side mirrors with the predecessor.
        int fu = end_at(w.edges, p.edge_ids.front(), u);
        int xu = -1;
        {
            auto& rot = w.rotation[u];
            size_t pos = std::find(rot.begin(), rot.end(), fu) - rot.begin();
            if (rot.size() == 3) {
                size_t xi = (pos + 1) % 3;
                xu = rot[xi];
                move_end(w.edges, xu, copies[0]);
                rot[xi] = end_at(w.edges, cu, u);
            } else {
                rot.insert(rot.begin() + pos + 1, end_at(w.edges, cu, u));
            }
        }
        int fv = end_at(w.edges, p.edge_ids.back(), v);
        int xv = -1;
        {
            auto& rot = w.rotation[v];
            size_t pos = std::find(rot.begin(), rot.end(), fv) - rot.begin();
            if (rot.size() == 3) {
                size_t xi = (pos + 2) % 3;
                xv = rot[xi];
                move_end(w.edges, xv, copies[r]);
                rot[xi] = end_at(w.edges, cv, v);
            } else {
                rot.insert(rot.begin() + pos, end_at(w.edges, cv, v));
            }
        }
        w.rotation[copies[0]] = {end_at(w.edges, cu, copies[0]), end_at(w.edges, twin[0], copies[0])};
        if (xu != -1) w.rotation[copies[0]].push_back(xu);
        w.rotation[copies[r]] = {end_at(w.edges, twin[r - 1], copies[r]),
                                 end_at(w.edges, cv, copies[r])};
        if (xv != -1) w.rotation[copies[r]].push_back(xv);
        for (int i = 1; i < r; ++i)
            w.rotation[copies[i]] = {end_at(w.edges, twin[i - 1], copies[i]),
                                     end_at(w.edges, twin[i], copies[i])};

        prev_edge_count = static_cast<int>(cur.edges.size());
        cur = build_working(w);
        k_face_ids = rematch_faces(cur, k_sets, prev_edge_count, slot_terminals);
        for (size_t ki = 0; ki < k_sets.size(); ++ki)
            k_sets[ki] = cur.faces()[k_face_ids[ki]].edge_set;
    }

    for (int x = 0; x < cur.n; ++x) assert(cur.degree(x) <= 3);
    assert(is_biconnected(cur));
    for (size_t i = 0; i < T.size(); ++i) {
        bm.terminal_relocation[T[i]] = cur_pos[i];
        assert(cur.faces()[k_face_ids[k_of[i]]].has_vertex(cur_pos[i]));
    }
    bm.new_n = cur.n;
    bm.new_edges = cur.edges;
    bm.new_terminals = cur_pos;

    PreprocessResult res{std::move(cur), cur_pos, k_face_ids, std::move(bm)};
    return res;
}

std::vector<int> lift_solution(const BackMap& bm, const std::vector<int>& solution_edges) {
    UnionFind uf(bm.new_n);
    for (int e : solution_edges) {
        if (e < 0 || e >= static_cast<int>(bm.new_edges.size()))
            throw PreprocessError("solution edge id out of range");
        uf.unite(bm.new_edges[e].u, bm.new_edges[e].v);
    }
    for (int t : bm.new_terminals)
        if (!uf.same(t, bm.new_terminals.front()))
            throw PreprocessError("NotASolution: edges do not connect the terminals");

    std::set<int> mapped;
    for (int e : solution_edges) {
        switch (bm.edge_kinds[e]) {
        case EdgeKind::original:
            mapped.insert(e);
            break;
        case EdgeKind::twin:
            mapped.insert(bm.path_twins.at(e));
            break;
        default:
            break;  // zero-weight cycle and connector edges vanish
        }
    }

    UnionFind forest(bm.orig_n);
    std::vector<int> kept;
    for (int e : mapped) {
        if (forest.same(bm.orig_edges[e].u, bm.orig_edges[e].v)) continue;
        forest.unite(bm.orig_edges[e].u, bm.orig_edges[e].v);
        kept.push_back(e);
    }
    if (bm.orig_terminals.empty()) return {};
    int root = forest.find(bm.orig_terminals.front());
    for (int t : bm.orig_terminals)
        if (forest.find(t) != root)
            throw PreprocessError("NotASolution: lifted edges lost a terminal");
    std::vector<int> out;
    for (int e : kept)
        if (forest.find(bm.orig_edges[e].u) == root) out.push_back(e);
    return out;
}

namespace {

const char* kind_name(EdgeKind k) {
    switch (k) {
    case EdgeKind::original:
        return "original";
    case EdgeKind::cycle:
        return "cycle";
    case EdgeKind::connector:
        return "connector";
    case EdgeKind::twin:
        return "twin";
    }
    return "?";
}

EdgeKind kind_from(const std::string& s) {
    if (s == "original") return EdgeKind::original;
    if (s == "cycle") return EdgeKind::cycle;
    if (s == "connector") return EdgeKind::connector;
    if (s == "twin") return EdgeKind::twin;
    throw PreprocessError("unknown edge kind: " + s);
}

nlohmann::json edges_to_json(const std::vector<Edge>& edges) {
    nlohmann::json a = nlohmann::json::array();
    for (const Edge& e : edges) a.push_back({e.u, e.v, weight_to_string(e.w)});
    return a;
}

std::vector<Edge> edges_from_json(const nlohmann::json& a) {
    std::vector<Edge> out;
    for (const auto& row : a)
        out.push_back({row.at(0).get<int>(), row.at(1).get<int>(),
                       weight_from_string(row.at(2).get<std::string>())});
    return out;
}

nlohmann::json map_to_json(const std::map<int, int>& m) {
    nlohmann::json a = nlohmann::json::array();
    for (auto [k, v] : m) a.push_back({k, v});
    return a;
}

std::map<int, int> map_from_json(const nlohmann::json& a) {
    std::map<int, int> m;
    for (const auto& row : a) m[row.at(0).get<int>()] = row.at(1).get<int>();
    return m;
}

}  // namespace

nlohmann::json backmap_to_json(const BackMap& bm) {
    nlohmann::json j;
    j["orig_n"] = bm.orig_n;
    j["orig_edges"] = edges_to_json(bm.orig_edges);
    j["orig_terminals"] = bm.orig_terminals;
    j["new_n"] = bm.new_n;
    j["new_edges"] = edges_to_json(bm.new_edges);
    j["new_terminals"] = bm.new_terminals;
    j["vertex_to_original"] = bm.vertex_to_original;
    nlohmann::json kinds = nlohmann::json::array();
    for (EdgeKind k : bm.edge_kinds) kinds.push_back(kind_name(k));
    j["edge_kinds"] = kinds;
    j["cycle_groups"] = map_to_json(bm.cycle_groups);
    j["path_twins"] = map_to_json(bm.path_twins);
    j["connectors"] = map_to_json(bm.connectors);
    j["terminal_relocation"] = map_to_json(bm.terminal_relocation);
    return j;
}

BackMap backmap_from_json(const nlohmann::json& j) {
    BackMap bm;
    bm.orig_n = j.at("orig_n").get<int>();
    bm.orig_edges = edges_from_json(j.at("orig_edges"));
    bm.orig_terminals = j.at("orig_terminals").get<std::vector<int>>();
    bm.new_n = j.at("new_n").get<int>();
    bm.new_edges = edges_from_json(j.at("new_edges"));
    bm.new_terminals = j.at("new_terminals").get<std::vector<int>>();
    bm.vertex_to_original = j.at("vertex_to_original").get<std::vector<int>>();
    for (const auto& s : j.at("edge_kinds")) bm.edge_kinds.push_back(kind_from(s.get<std::string>()));
    bm.cycle_groups = map_from_json(j.at("cycle_groups"));
    bm.path_twins = map_from_json(j.at("path_twins"));
    bm.connectors = map_from_json(j.at("connectors"));
    bm.terminal_relocation = map_from_json(j.at("terminal_relocation"));
    return bm;
}

}  // namespace pst
