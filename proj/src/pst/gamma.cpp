#include "pst/gamma.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "pst/unionfind.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pst {

namespace {

bool power_of_two(const Weight& w) {
    return w > 0 && mpz_popcount(w.get_mpz_t()) == 1;
}

// scale / 2^shift, which must divide evenly.
Weight shifted_scale(const Weight& scale, int shift) {
    Weight q = scale >> shift;
    if ((q << shift) != scale) throw GammaError("edge weight is not integral at this scale");
    return q;
}

std::pair<int, int> ordered(int u, int v) {
    return {std::min(u, v), std::max(u, v)};
}

int lookup(const std::map<std::pair<int, int>, int>& m, std::pair<int, int> key) {
    auto it = m.find(key);
    return it == m.end() ? -1 : it->second;
}

}  // namespace

int IntervalVertex::size() const {
    if (modulus == 0) return b - a + 1;
    return ((b - a) % modulus + modulus) % modulus + 1;
}

std::string interval_to_string(const IntervalVertex& v) {
    std::ostringstream out;
    out << "[" << v.a << "," << v.b << "]";
    if (v.modulus != 0) out << "%" << v.modulus;
    return out.str();
}

int floor_log2(int x) {
    assert(x >= 1);
    int r = 0;
    while (x > 1) {
        x >>= 1;
        ++r;
    }
    return r;
}

Weight monotone_path_weight(int size_from, int size_to, const Weight& scale) {
    int lo = std::min(size_from, size_to);
    int hi = std::max(size_from, size_to);
    if (lo < 1) throw GammaError("interval sizes start at 1");
    Weight total = 0;
    for (int m = lo; m < hi; ++m) total += shifted_scale(scale, floor_log2(m));
    return total;
}

IntervalVertex interval_lca(const IntervalVertex& p, const IntervalVertex& q) {
    if (p.modulus != 0 || q.modulus != 0) throw GammaError("plain intervals expected");
    return {std::min(p.a, q.a), std::max(p.b, q.b), 0};
}

Weight interval_metric(const IntervalVertex& p, const IntervalVertex& q, const Weight& scale) {
    IntervalVertex up = interval_lca(p, q);
    return monotone_path_weight(p.size(), up.size(), scale) +
           monotone_path_weight(q.size(), up.size(), scale);
}

int GammaWindow::vertex_of(int a, int b) const {
    return lookup(index, {a, b});
}

int GammaWindow::edge_between(int u, int v) const {
    return lookup(edge_index, ordered(u, v));
}

GammaWindow gamma_window(int x_lo, int x_hi, int max_size, const Weight& scale) {
    if (x_lo > x_hi) throw GammaError("window range is empty");
    if (max_size < 1) throw GammaError("max_size must be at least 1");
    if (!power_of_two(scale)) throw GammaError("scale must be a power of two");

    GammaWindow w;
    w.x_lo = x_lo;
    w.x_hi = x_hi;
    w.max_size = max_size;
    w.scale = scale;

    int cap = std::min(max_size, x_hi - x_lo + 1);
    GraphBuilder gb;
    for (int s = 1; s <= cap; ++s) {
        for (int a = x_lo; a + s - 1 <= x_hi; ++a) {
            int id = gb.add_vertex();
            w.intervals.push_back({a, a + s - 1, 0});
            w.index[{a, a + s - 1}] = id;
        }
    }
    int n = static_cast<int>(w.intervals.size());
    for (int id = 0; id < n; ++id) {
        const IntervalVertex& iv = w.intervals[id];
        if (iv.size() < 2) continue;
        Weight step = shifted_scale(scale, floor_log2(iv.b - iv.a));
        int right = w.index.at({iv.a + 1, iv.b});
        int left = w.index.at({iv.a, iv.b - 1});
        w.edge_index[ordered(id, right)] = gb.add_edge(id, right, step);
        w.edge_index[ordered(id, left)] = gb.add_edge(id, left, step);
    }
    for (int id = 0; id < n; ++id) {
        const IntervalVertex& iv = w.intervals[id];
        // counterclockwise in the drawing: up-right, up-left, down-left, down-right
        std::pair<int, int> around[4] = {{iv.a, iv.b + 1},
                                         {iv.a - 1, iv.b},
                                         {iv.a, iv.b - 1},
                                         {iv.a + 1, iv.b}};
        std::vector<int> rot;
        for (const auto& key : around) {
            int other = lookup(w.index, key);
            if (other < 0) continue;
            int e = w.edge_between(id, other);
            if (e >= 0) rot.push_back(e);
        }
        gb.set_rotation_edges(id, rot);
    }
    w.graph = gb.build();
    return w;
}

int FlowerGadget::vertex_of(int a, int b) const {
    int aa = ((a % t) + t) % t;
    int bb = ((b % t) + t) % t;
    return lookup(index, {aa, bb});
}

int FlowerGadget::edge_between(int u, int v) const {
    return lookup(edge_index, ordered(u, v));
}

FlowerGadget build_flower(int t, const Weight& scale) {
    if (t < 4 || (t & (t - 1)) != 0) throw GammaError("t must be a power of two, at least 4");
    if (!power_of_two(scale) || scale * 4 < t)
        throw GammaError("scale must be a power of two, at least t/4");

    FlowerGadget f;
    f.t = t;
    f.scale = scale;

    GraphBuilder gb;
    for (int s = 1; s <= t / 2; ++s) {
        for (int a = 0; a < t; ++a) {
            int id = gb.add_vertex();
            int b = (a + s - 1) % t;
            f.intervals.push_back({a, b, t});
            f.index[{a, b}] = id;
        }
    }
    for (int a = 0; a < t; ++a) {
        f.terminals.push_back(f.index.at({a, a}));
        f.portals.push_back(f.index.at({a, (a + t / 2 - 1) % t}));
    }
    int n = static_cast<int>(f.intervals.size());
    for (int id = 0; id < n; ++id) {
        const IntervalVertex& iv = f.intervals[id];
        int s = iv.size();
        if (s < 2) continue;
        Weight step = shifted_scale(scale, floor_log2(s - 1));
        int right = f.index.at({(iv.a + 1) % t, iv.b});
        int left = f.index.at({iv.a, (iv.b - 1 + t) % t});
        f.edge_index[ordered(id, right)] = gb.add_edge(id, right, step);
        f.edge_index[ordered(id, left)] = gb.add_edge(id, left, step);
    }
    for (int id = 0; id < n; ++id) {
        const IntervalVertex& iv = f.intervals[id];
        // counterclockwise on the ring: outward-right, outward-left, inward-left,
        // inward-right
        std::pair<int, int> around[4] = {{iv.a, (iv.b + 1) % t},
                                         {(iv.a - 1 + t) % t, iv.b},
                                         {iv.a, (iv.b - 1 + t) % t},
                                         {(iv.a + 1) % t, iv.b}};
        std::vector<int> rot;
        for (const auto& key : around) {
            int other = lookup(f.index, key);
            if (other < 0) continue;
            int e = f.edge_between(id, other);
            if (e >= 0) rot.push_back(e);
        }
        gb.set_rotation_edges(id, rot);
    }
    f.graph = gb.build();

    auto covers = [&](const Face& face, const std::vector<int>& vs) {
        for (int v : vs)
            if (!face.has_vertex(v)) return false;
        return true;
    };
    const auto& faces = f.graph.faces();
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
        if (f.carpel_face < 0 && covers(faces[i], f.terminals)) f.carpel_face = i;
        if (covers(faces[i], f.portals)) f.outer_face = i;
    }
    assert(f.carpel_face >= 0 && f.outer_face >= 0);
    assert(f.carpel_face != f.outer_face);
    return f;
}

Weight interval_distance(const GammaWindow& w, const IntervalVertex& p, const IntervalVertex& q) {
    if (p.modulus != 0 || q.modulus != 0) throw GammaError("plain intervals expected");
    int pv = w.vertex_of(p.a, p.b);
    int qv = w.vertex_of(q.a, q.b);
    if (pv < 0 || qv < 0) throw GammaError("interval lies outside the window");
    std::vector<bool> reached;
    std::vector<Weight> dist = dijkstra_dist(w.graph, {pv}, &reached);
    if (!reached[qv]) throw GammaError("intervals are not connected in this window");
#ifndef NDEBUG
    IntervalVertex up = interval_lca(p, q);
    if (w.vertex_of(up.a, up.b) >= 0) assert(dist[qv] == interval_metric(p, q, w.scale));
#endif
    return dist[qv];
}

Weight interval_distance(const FlowerGadget& f, const IntervalVertex& p, const IntervalVertex& q) {
    if (p.modulus != f.t || q.modulus != f.t) throw GammaError("intervals modulo t expected");
    int pv = f.vertex_of(p.a, p.b);
    int qv = f.vertex_of(q.a, q.b);
    if (pv < 0 || qv < 0) throw GammaError("no such interval in the flower");
    std::vector<bool> reached;
    std::vector<Weight> dist = dijkstra_dist(f.graph, {pv}, &reached);
    assert(reached[qv]);
    return dist[qv];
}

namespace {

// Joins every dyadic block of [a, a + len - 1] to its two halves by the
// monotone paths that keep the shared endpoint fixed. vertex_at works in the
// host's coordinates; edge_at resolves an edge id between two vertex ids.
template <typename VertexAt, typename EdgeAt>
void collect_dyadic_edges(int a, int len, VertexAt vertex_at, EdgeAt edge_at,
                          std::set<int>& out) {
    for (int size = len; size >= 2; size /= 2) {
        for (int x = a; x + size <= a + len; x += size) {
            int y = x + size - 1;
            int m = size / 2;
            for (int c = x + m - 1; c < y; ++c) {
                int u = vertex_at(x, c);
                int v = vertex_at(x, c + 1);
                int e = edge_at(u, v);
                assert(e >= 0);
                out.insert(e);
            }
            for (int d = x + m; d > x; --d) {
                int u = vertex_at(d, y);
                int v = vertex_at(d - 1, y);
                int e = edge_at(u, v);
                assert(e >= 0);
                out.insert(e);
            }
        }
    }
}

}  // namespace

SteinerSolution dyadic_tree(const GammaWindow& w, int a, int len) {
    if (len < 1 || (len & (len - 1)) != 0) throw GammaError("len must be a power of two");
    if (w.vertex_of(a, a + len - 1) < 0)
        throw GammaError("the dyadic family does not fit inside the window");
    std::set<int> eids;
    collect_dyadic_edges(
        a, len,
        [&](int lo, int hi) {
            int v = w.vertex_of(lo, hi);
            assert(v >= 0);
            return v;
        },
        [&](int u, int v) { return w.edge_between(u, v); }, eids);
    SteinerSolution sol;
    sol.feasible = true;
    sol.edges.assign(eids.begin(), eids.end());
    sol.weight = w.graph.weight_of_edges(sol.edges);
    assert(sol.weight == Weight(2 * (len - 1)) * w.scale);
    return sol;
}

SteinerSolution canonical_forest(const FlowerGadget& f, int root) {
    if (root < 1 || root > f.t / 2) throw GammaError("root must lie in 1..t/2");
    std::set<int> eids;
    auto vertex_at = [&](int lo, int hi) {
        int v = f.vertex_of(lo, hi);
        assert(v >= 0);
        return v;
    };
    auto edge_at = [&](int u, int v) { return f.edge_between(u, v); };
    collect_dyadic_edges(root, f.t / 2, vertex_at, edge_at, eids);
    collect_dyadic_edges(root + f.t / 2, f.t / 2, vertex_at, edge_at, eids);
    SteinerSolution sol;
    sol.feasible = true;
    sol.edges.assign(eids.begin(), eids.end());
    sol.weight = f.graph.weight_of_edges(sol.edges);
    assert(sol.weight == Weight(2 * f.t - 4) * f.scale);
    return sol;
}

TriangleReport verify_triangle_lemma(int ell, int x_lo, int x_hi, int max_size,
                                     const Weight& scale, int threads) {
    if (ell < 0 || ell > 7) throw GammaError("ell must lie in 0..7");
    GammaWindow w = gamma_window(x_lo, x_hi, max_size, scale);
    int cap = std::min(max_size, x_hi - x_lo + 1);
    if (x_lo > 0 || x_hi < ell || cap < ell + 1)
        throw GammaError("window too small: it must contain every subinterval of [0, ell]");

    TriangleReport rep;
    rep.ell = ell;
    rep.x_lo = x_lo;
    rep.x_hi = x_hi;
    rep.max_size = max_size;
    rep.scale = scale;

    int n = w.graph.n;
    std::vector<int> fan;
    for (int i = 0; i <= ell; ++i) fan.push_back(w.vertex_of(i, i));

    std::vector<int> delta;
    for (int a = 0; a <= ell; ++a)
        for (int b = a; b <= ell; ++b) delta.push_back(w.vertex_of(a, b));
    std::vector<bool> reached;
    std::vector<Weight> dist = dijkstra_dist(w.graph, delta, &reached);

    std::vector<bool> fan_reached;
    std::vector<Weight> fan_dist = dijkstra_dist(w.graph, {fan[0]}, &fan_reached);
    bool have_shell = false;
    for (int v = 0; v < n; ++v) {
        const IntervalVertex& iv = w.intervals[v];
        if (iv.a != x_lo && iv.b != x_hi && iv.size() != cap) continue;
        if (!fan_reached[v]) continue;
        if (!have_shell || fan_dist[v] < rep.shell_distance) {
            rep.shell_distance = fan_dist[v];
            have_shell = true;
        }
    }
    if (!have_shell) throw GammaError("no window boundary is reachable from the fan");

    OracleConfig cfg;
    cfg.threads = threads;
    cfg.max_terminals = std::max(16, ell + 2);
    cfg.want_witness = false;
    SteinerField field = dreyfus_wagner_field(AdjGraph::from(w.graph), fan, cfg);

    Weight base = Weight(2 * ell) * scale;
    rep.bound_holds = true;
    for (int v = 0; v < n; ++v) {
        if (!reached[v] || !field.reachable[v])
            throw GammaError("window is disconnected; raise max_size");
        ++rep.vertices_checked;
        Weight bound = base + dist[v];
        const Weight& tree_min = field.weight[v];
        if (tree_min < bound) rep.bound_holds = false;
        if (tree_min == bound) ++rep.equality_count;
        if (tree_min < rep.shell_distance) ++rep.exact_count;
        if (tree_min > rep.max_tree_weight) rep.max_tree_weight = tree_min;
        if (dist[v] > rep.max_distance) rep.max_distance = dist[v];
    }
    int tip = w.vertex_of(0, ell);
    rep.tip_weight = field.weight[tip];
    rep.tip_equality = (rep.tip_weight == base + dist[tip]);
    rep.margin_rule = 2 * (base + rep.max_distance);
    rep.ok = rep.bound_holds;
    return rep;
}

namespace {

bool in_arc(int t, int start, int i) {
    return ((i - start) % t + t) % t < t / 2;
}

// The canonical forest must consist of exactly two trees, one per opposite
// portal, each spanning the portal's own arc of terminals and no other
// portal.
bool canonical_structure_ok(const FlowerGadget& f, int root, const SteinerSolution& sol,
                            const Weight& expected) {
    if (!sol.feasible || sol.weight != expected) return false;
    UnionFind uf(f.graph.n);
    std::set<int> spanned;
    for (int e : sol.edges) {
        const Edge& ed = f.graph.edges[e];
        uf.unite(ed.u, ed.v);
        spanned.insert(ed.u);
        spanned.insert(ed.v);
    }
    std::set<int> roots;
    for (int v : spanned) roots.insert(uf.find(v));
    if (roots.size() != 2) return false;
    if (static_cast<int>(sol.edges.size()) != static_cast<int>(spanned.size()) - 2)
        return false;
    int r1 = uf.find(f.portals[root % f.t]);
    int r2 = uf.find(f.portals[(root + f.t / 2) % f.t]);
    if (r1 == r2) return false;
    for (int i = 0; i < f.t; ++i) {
        int want = in_arc(f.t, root, i) ? r1 : r2;
        if (uf.find(f.terminals[i]) != want) return false;
    }
    for (int j = 0; j < f.t; ++j) {
        if (j == root % f.t || j == (root + f.t / 2) % f.t) continue;
        int r = uf.find(f.portals[j]);
        if (r == r1 || r == r2) return false;
    }
    return true;
}

// Structural audit of one minimum-weight feasible edge subset of the t = 4
// flower, following the shape every optimum must have.
bool optimal_subset_ok(const FlowerGadget& f, unsigned mask) {
    int t = f.t;
    int m = static_cast<int>(f.graph.edges.size());
    UnionFind uf(f.graph.n);
    for (int e = 0; e < m; ++e)
        if (mask & (1u << e)) uf.unite(f.graph.edges[e].u, f.graph.edges[e].v);

    std::set<int> occupied;
    for (int i = 0; i < t; ++i) occupied.insert(uf.find(f.terminals[i]));
    // no paid edge may sit outside a terminal's component
    for (int e = 0; e < m; ++e)
        if (mask & (1u << e))
            if (!occupied.count(uf.find(f.graph.edges[e].u))) return false;
    if (occupied.size() < 2) return false;

    std::vector<int> anchor;  // portal indices present in occupied components
    for (int r : occupied) {
        int portals_here = 0;
        for (int j = 0; j < t; ++j)
            if (uf.find(f.portals[j]) == r) {
                ++portals_here;
                anchor.push_back(j);
            }
        if (portals_here != 1) return false;
        // the component's terminals must form one contiguous run modulo t
        std::vector<bool> member(t, false);
        for (int i = 0; i < t; ++i)
            if (uf.find(f.terminals[i]) == r) member[i] = true;
        int starts = 0;
        for (int i = 0; i < t; ++i)
            if (member[i] && !member[(i + t - 1) % t]) ++starts;
        if (starts != 1) return false;
    }
    // every run of t/2 consecutive portals carries an anchor
    for (int s = 0; s < t; ++s) {
        bool hit = false;
        for (int j : anchor)
            if (((j - s) % t + t) % t < t / 2) hit = true;
        if (!hit) return false;
    }
    // with exactly two components the anchors are opposite and each side
    // holds precisely the arc below its portal
    if (occupied.size() == 2) {
        int x = anchor[0], y = anchor[1];
        if ((y - x + t) % t != t / 2 && (x - y + t) % t != t / 2) return false;
        for (int i = 0; i < t; ++i) {
            int want = in_arc(t, x, i) ? uf.find(f.portals[x]) : uf.find(f.portals[y]);
            if (uf.find(f.terminals[i]) != want) return false;
        }
    }
    return true;
}

}  // namespace

FlowerReport verify_flower_theorem(int t, int threads) {
    if (t != 4 && t != 8) throw GammaError("flower verification handles t = 4 and t = 8");
    Weight scale = std::max(1, t / 4);
    FlowerGadget f = build_flower(t, scale);

    FlowerReport rep;
    rep.t = t;
    rep.scale = scale;
    rep.anchored_expected = Weight(2 * t - 4) * scale;

    OracleConfig cfg;
    cfg.threads = threads;
    cfg.max_terminals = t + 2;
    cfg.want_witness = false;
    rep.anchored_min = portal_anchored_forest_min(f.graph, f.terminals, f.portals, cfg);
    rep.anchored_ok = (rep.anchored_min == rep.anchored_expected);

    rep.canonical_ok = true;
    for (int a = 1; a <= t / 2; ++a) {
        SteinerSolution sol = canonical_forest(f, a);
        if (!canonical_structure_ok(f, a, sol, rep.anchored_expected)) rep.canonical_ok = false;
    }

    // Minimum cost of hanging the terminals off two chosen anchor portals,
    // split every possible way; trees may pass through other portals freely.
    int full = 1 << t;
    AdjGraph adj = AdjGraph::from(f.graph);
    std::vector<std::vector<Weight>> anchored(t, std::vector<Weight>(full));
    {
        OracleConfig one;
        one.threads = 1;
        one.max_terminals = t + 1;
        one.want_witness = false;
        long long jobs = static_cast<long long>(t) * full;
#ifdef _OPENMP
#pragma omp parallel for num_threads(std::max(1, threads)) schedule(dynamic)
#endif
        for (long long job = 0; job < jobs; ++job) {
            int p = static_cast<int>(job / full);
            int mask = static_cast<int>(job % full);
            std::vector<int> ts{f.portals[p]};
            for (int i = 0; i < t; ++i)
                if (mask & (1 << i)) ts.push_back(f.terminals[i]);
            anchored[p][mask] = dreyfus_wagner(adj, ts, one).weight;
        }
    }
    rep.split_strict_ok = true;
    rep.split_opposite_ok = true;
    for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) {
            ++rep.pairs_checked;
            Weight best = anchored[i][0] + anchored[j][full - 1];
            for (int mask = 0; mask < full; ++mask) {
                Weight cost = anchored[i][mask] + anchored[j][full - 1 - mask];
                if (cost < best) best = cost;
            }
            if (j - i == t / 2) {
                int arc = 0;
                for (int k = i; k < i + t / 2; ++k) arc |= 1 << k;
                bool canonical_hits =
                    (anchored[i][arc] + anchored[j][full - 1 - arc] == rep.anchored_expected);
                if (best != rep.anchored_expected || !canonical_hits)
                    rep.split_opposite_ok = false;
            } else {
                if (best <= rep.anchored_expected) rep.split_strict_ok = false;
            }
        }
    }

    if (t == 4) {
        rep.exhaustive_done = true;
        rep.exhaustive_ok = true;
        int m = static_cast<int>(f.graph.edges.size());
        assert(m <= 16);
        Weight best;
        bool any = false;
        std::vector<unsigned> optima;
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            UnionFind uf(f.graph.n);
            Weight cost = 0;
            for (int e = 0; e < m; ++e)
                if (mask & (1u << e)) {
                    uf.unite(f.graph.edges[e].u, f.graph.edges[e].v);
                    cost += f.graph.edges[e].w;
                }
            bool feasible = true;
            for (int i = 0; i < t && feasible; ++i) {
                bool anchored_terminal = false;
                for (int j = 0; j < t && !anchored_terminal; ++j)
                    if (uf.same(f.terminals[i], f.portals[j])) anchored_terminal = true;
                feasible = anchored_terminal;
            }
            if (!feasible) continue;
            if (!any || cost < best) {
                best = cost;
                optima.clear();
                any = true;
            }
            if (cost == best) optima.push_back(mask);
        }
        if (!any || best != rep.anchored_expected) rep.exhaustive_ok = false;
        rep.optima_count = static_cast<long long>(optima.size());
        for (unsigned mask : optima)
            if (!optimal_subset_ok(f, mask)) rep.exhaustive_ok = false;
    }

    rep.ok = rep.anchored_ok && rep.canonical_ok && rep.split_strict_ok &&
             rep.split_opposite_ok && (t != 4 || rep.exhaustive_ok);
    return rep;
}

}  // namespace pst
