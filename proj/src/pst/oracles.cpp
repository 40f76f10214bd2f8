#include "pst/oracles.hpp"

#include "pst/unionfind.hpp"

#include <omp.h>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace pst {

bool solution_less(const SteinerSolution& a, const SteinerSolution& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return false;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.edges < b.edges;
}

AdjGraph AdjGraph::from(const PlanarGraph& g) {
    return from_edges(g.n, g.edges);
}

AdjGraph AdjGraph::from_edges(int n, std::vector<Edge> edges) {
    AdjGraph a;
    a.n = n;
    a.edges = std::move(edges);
    a.adj.assign(n, {});
    for (size_t e = 0; e < a.edges.size(); ++e) {
        a.adj[a.edges[e].u].push_back({static_cast<int>(e), a.edges[e].v});
        a.adj[a.edges[e].v].push_back({static_cast<int>(e), a.edges[e].u});
    }
    return a;
}

Weight AdjGraph::weight_of(const std::vector<int>& edge_ids) const {
    Weight t = 0;
    for (int e : edge_ids) t += edges[e].w;
    return t;
}

std::vector<int> prune_to_tree(const AdjGraph& g, std::vector<int> edge_ids,
                               const std::vector<int>& keep_vertices) {
    std::sort(edge_ids.begin(), edge_ids.end());
    edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());

    UnionFind uf(g.n);
    std::vector<int> forest;
    for (int e : edge_ids)
        if (uf.unite(g.edges[e].u, g.edges[e].v)) forest.push_back(e);

    std::vector<char> keep(g.n, 0);
    for (int v : keep_vertices) keep[v] = 1;
    std::vector<int> deg(g.n, 0);
    std::vector<char> alive(g.edges.size(), 0);
    for (int e : forest) {
        alive[e] = 1;
        deg[g.edges[e].u]++;
        deg[g.edges[e].v]++;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e : forest) {
            if (!alive[e]) continue;
            int u = g.edges[e].u, v = g.edges[e].v;
            int leaf = -1;
            if (deg[u] == 1 && !keep[u]) leaf = u;
            else if (deg[v] == 1 && !keep[v]) leaf = v;
            if (leaf >= 0) {
                alive[e] = 0;
                deg[u]--;
                deg[v]--;
                changed = true;
            }
        }
    }
    std::vector<int> out;
    for (int e : forest)
        if (alive[e]) out.push_back(e);
    return out;
}

namespace {

// Multi-source Dijkstra relaxation of a seed array over the whole graph.
// Seeds are the vertices with seeded[v] set; parents let the caller walk any
// relaxed vertex back to its seed.
template <typename W>
struct Closure {
    std::vector<W> dist;
    std::vector<char> reach;
    std::vector<int> parent_vertex;  // -1 at seeds and unreached
    std::vector<int> parent_edge;
};

template <typename W>
Closure<W> run_closure(const AdjGraph& g, const std::vector<W>& ew,
                       const std::vector<W>& seed_dist, const std::vector<char>& seeded,
                       bool want_parents) {
    Closure<W> c;
    c.dist.assign(g.n, W());
    c.reach.assign(g.n, 0);
    if (want_parents) {
        c.parent_vertex.assign(g.n, -1);
        c.parent_edge.assign(g.n, -1);
    }
    using Item = std::pair<W, int>;
    auto cmp = [](const Item& a, const Item& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    for (int v = 0; v < g.n; ++v) {
        if (seeded[v]) {
            c.dist[v] = seed_dist[v];
            c.reach[v] = 1;
            pq.push({c.dist[v], v});
        }
    }
    std::vector<char> done(g.n, 0);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u] || d != c.dist[u]) continue;
        done[u] = 1;
        for (auto [e, v] : g.adj[u]) {
            if (done[v]) continue;
            W nd = d + ew[e];
            if (!c.reach[v] || nd < c.dist[v]) {
                c.dist[v] = nd;
                c.reach[v] = 1;
                if (want_parents) {
                    c.parent_vertex[v] = u;
                    c.parent_edge[v] = e;
                }
                pq.push({nd, v});
            }
        }
    }
    return c;
}

template <typename W>
Closure<W> single_source(const AdjGraph& g, const std::vector<W>& ew, int s,
                         bool want_parents) {
    std::vector<W> seed(g.n, W());
    std::vector<char> seeded(g.n, 0);
    seeded[s] = 1;
    return run_closure(g, ew, seed, seeded, want_parents);
}

// Dreyfus-Wagner over a fixed weight domain W (uint64_t or Weight).
template <typename W>
class DwEngine {
public:
    DwEngine(const AdjGraph& g, const std::vector<W>& ew, std::vector<int> terminals,
             int threads)
        : g_(g), ew_(ew), T_(std::move(terminals)), threads_(threads) {}

    // Returns false if some terminal is unreachable from T_[0].
    bool solve() {
        k_ = static_cast<int>(T_.size());
        bits_ = k_ - 1;
        term_dij_.resize(k_);
        for (int i = 0; i < k_; ++i) term_dij_[i] = single_source(g_, ew_, T_[i], true);
        for (int i = 1; i < k_; ++i)
            if (!term_dij_[i].reach[T_[0]]) return false;

        dp_.assign(size_t(1) << bits_, {});
        reach_.assign(size_t(1) << bits_, {});
        for (int b = 0; b < bits_; ++b) {
            size_t m = size_t(1) << b;
            dp_[m] = term_dij_[b + 1].dist;
            reach_[m] = term_dij_[b + 1].reach;
        }

        std::vector<std::vector<uint32_t>> by_pop(bits_ + 1);
        for (uint32_t m = 1; m < (uint32_t(1) << bits_); ++m)
            by_pop[__builtin_popcount(m)].push_back(m);

        for (int pc = 2; pc <= bits_; ++pc) {
            const auto& group = by_pop[pc];
            int count = static_cast<int>(group.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads_) if (threads_ > 1)
            for (int idx = 0; idx < count; ++idx) process_mask(group[idx]);
        }
        return true;
    }

    bool value_at(uint32_t mask, int v, W& out) const {
        if (mask == 0) {
            out = W();
            return true;
        }
        if (!reach_[mask][v]) return false;
        out = dp_[mask][v];
        return true;
    }

    // Rebuilds one optimal tree for (mask, v) by recomputing the closure of
    // that mask with parent tracking; no parent tables are stored globally.
    void rebuild(uint32_t mask, int v, std::set<int>& out) const {
        if (mask == 0) return;
        if (__builtin_popcount(mask) == 1) {
            int b = __builtin_ctz(mask);
            const auto& dij = term_dij_[b + 1];
            int cur = v;
            while (dij.parent_vertex[cur] != -1) {
                out.insert(dij.parent_edge[cur]);
                cur = dij.parent_vertex[cur];
            }
            assert(cur == T_[b + 1]);
            return;
        }
        std::vector<W> base;
        std::vector<char> based;
        merge_base(mask, base, based);
        Closure<W> c = run_closure(g_, ew_, base, based, true);
        int cur = v;
        while (c.parent_vertex[cur] != -1) {
            out.insert(c.parent_edge[cur]);
            cur = c.parent_vertex[cur];
        }
        int r = cur;
        assert(based[r]);
        uint32_t lb = mask & (~mask + 1);
        uint32_t rest = mask ^ lb;
        for (uint32_t sub = 0;; sub = (sub - rest) & rest) {
            uint32_t a = lb | sub;
            if (a != mask && reach_[a][r] && reach_[mask ^ a][r] &&
                dp_[a][r] + dp_[mask ^ a][r] == base[r]) {
                rebuild(a, r, out);
                rebuild(mask ^ a, r, out);
                return;
            }
            if (sub == rest) break;
        }
        assert(false && "no split reproduces the merge value");
    }

private:
    void merge_base(uint32_t mask, std::vector<W>& base, std::vector<char>& based) const {
        base.assign(g_.n, W());
        based.assign(g_.n, 0);
        uint32_t lb = mask & (~mask + 1);
        uint32_t rest = mask ^ lb;
        for (uint32_t sub = 0;; sub = (sub - rest) & rest) {
            uint32_t a = lb | sub;
            if (a != mask) {
                uint32_t b = mask ^ a;
                const auto& da = dp_[a];
                const auto& db = dp_[b];
                const auto& ra = reach_[a];
                const auto& rb = reach_[b];
                for (int v = 0; v < g_.n; ++v) {
                    if (!ra[v] || !rb[v]) continue;
                    W cand = da[v] + db[v];
                    if (!based[v] || cand < base[v]) {
                        base[v] = cand;
                        based[v] = 1;
                    }
                }
            }
            if (sub == rest) break;
        }
    }

    void process_mask(uint32_t mask) {
        std::vector<W> base;
        std::vector<char> based;
        merge_base(mask, base, based);
        Closure<W> c = run_closure(g_, ew_, base, based, false);
        dp_[mask] = std::move(c.dist);
        reach_[mask] = std::move(c.reach);
    }

    const AdjGraph& g_;
    const std::vector<W>& ew_;
    std::vector<int> T_;
    int threads_;
    int k_ = 0, bits_ = 0;
    std::vector<Closure<W>> term_dij_;
    std::vector<std::vector<W>> dp_;
    std::vector<std::vector<char>> reach_;
};

template <typename W>
SteinerSolution dw_run(const AdjGraph& g, const std::vector<W>& ew,
                       const std::vector<int>& terminals, const OracleConfig& cfg,
                       const Weight& unit) {
    DwEngine<W> engine(g, ew, terminals, cfg.threads);
    if (!engine.solve()) return SteinerSolution::infeasible_solution();
    uint32_t full = (uint32_t(1) << (terminals.size() - 1)) - 1;
    W val;
    bool ok = engine.value_at(full, terminals[0], val);
    if (!ok) return SteinerSolution::infeasible_solution();

    SteinerSolution sol;
    sol.feasible = true;
    sol.weight = Weight(val) * unit;
    if (cfg.want_witness) {
        std::set<int> acc;
        engine.rebuild(full, terminals[0], acc);
        std::vector<int> edges(acc.begin(), acc.end());
        edges = prune_to_tree(g, std::move(edges), terminals);
        sol.edges = std::move(edges);
        assert(g.weight_of(sol.edges) == sol.weight);
    }
    return sol;
}

// The engine keeps terminal 0 out of the mask bits, so running it with the
// first terminal repeated puts every real terminal into the mask; the full
// mask row is then exactly the field.
template <typename W>
SteinerField field_run(const AdjGraph& g, const std::vector<W>& ew,
                       const std::vector<int>& terminals, const OracleConfig& cfg,
                       const Weight& unit) {
    std::vector<int> padded;
    padded.reserve(terminals.size() + 1);
    padded.push_back(terminals.front());
    padded.insert(padded.end(), terminals.begin(), terminals.end());

    SteinerField f;
    f.reachable.assign(g.n, 0);
    f.weight.assign(g.n, Weight(0));
    DwEngine<W> engine(g, ew, padded, cfg.threads);
    if (!engine.solve()) return f;  // the terminals are not even mutually connected
    const uint32_t full = (uint32_t(1) << terminals.size()) - 1;
    for (int v = 0; v < g.n; ++v) {
        W val;
        if (!engine.value_at(full, v, val)) continue;
        f.reachable[v] = 1;
        f.weight[v] = Weight(val) * unit;
    }
    return f;
}

}  // namespace

SteinerField dreyfus_wagner_field(const AdjGraph& g, std::vector<int> terminals,
                                  const OracleConfig& cfg) {
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    for (int t : terminals)
        if (t < 0 || t >= g.n) throw std::invalid_argument("terminal out of range");
    if (static_cast<int>(terminals.size()) > cfg.max_terminals)
        throw std::invalid_argument("dreyfus_wagner_field: " + std::to_string(terminals.size()) +
                                    " terminals exceeds the cap of " +
                                    std::to_string(cfg.max_terminals));
    if (terminals.empty()) {
        SteinerField f;
        f.reachable.assign(g.n, 1);
        f.weight.assign(g.n, Weight(0));
        return f;
    }

    Weight g_all = 0;
    Weight total = 0;
    for (const Edge& e : g.edges) {
        g_all = weight_gcd(g_all, e.w);
        total += e.w;
    }
    if (g_all == 0) g_all = 1;
    if (total / g_all < Weight("4611686018427387904")) {  // 2^62
        std::vector<uint64_t> ew(g.edges.size());
        for (size_t e = 0; e < g.edges.size(); ++e) {
            Weight q = g.edges[e].w / g_all;
            ew[e] = q.get_ui();
            assert(Weight(ew[e]) == q);
        }
        return field_run<uint64_t>(g, ew, terminals, cfg, g_all);
    }
    std::vector<Weight> ew(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) ew[e] = g.edges[e].w;
    return field_run<Weight>(g, ew, terminals, cfg, Weight(1));
}

SteinerSolution dreyfus_wagner(const AdjGraph& g, std::vector<int> terminals,
                               const OracleConfig& cfg) {
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    for (int t : terminals)
        if (t < 0 || t >= g.n) throw std::invalid_argument("terminal out of range");
    if (static_cast<int>(terminals.size()) > cfg.max_terminals)
        throw std::invalid_argument("dreyfus_wagner: " + std::to_string(terminals.size()) +
                                    " terminals exceeds the cap of " +
                                    std::to_string(cfg.max_terminals));
    if (terminals.size() <= 1) return SteinerSolution::empty_solution();

    // gcd rescale; totals that fit in uint64 run in machine words
    Weight g_all = 0;
    Weight total = 0;
    for (const Edge& e : g.edges) {
        g_all = weight_gcd(g_all, e.w);
        total += e.w;
    }
    if (g_all == 0) g_all = 1;
    Weight scaled_total = total / g_all;
    if (scaled_total < Weight("4611686018427387904")) {  // 2^62
        std::vector<uint64_t> ew(g.edges.size());
        for (size_t e = 0; e < g.edges.size(); ++e) {
            Weight q = g.edges[e].w / g_all;
            ew[e] = q.get_ui();
            assert(Weight(ew[e]) == q);
        }
        return dw_run<uint64_t>(g, ew, terminals, cfg, g_all);
    }
    std::vector<Weight> ew(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) ew[e] = g.edges[e].w;
    return dw_run<Weight>(g, ew, terminals, cfg, Weight(1));
}

SteinerSolution exhaustive_min_steiner(const AdjGraph& g, std::vector<int> terminals,
                                       const OracleConfig& cfg) {
    const int m = static_cast<int>(g.edges.size());
    if (m > 24) throw std::invalid_argument("exhaustive_min_steiner is limited to 24 edges");
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    for (int t : terminals)
        if (t < 0 || t >= g.n) throw std::invalid_argument("terminal out of range");
    if (terminals.size() <= 1) return SteinerSolution::empty_solution();

    const uint32_t full = uint32_t(1) << m;
    const int nthreads = std::max(1, cfg.threads);
    std::vector<SteinerSolution> best_per(nthreads);

#pragma omp parallel num_threads(nthreads) if (nthreads > 1)
    {
        int tid = nthreads > 1 ? omp_get_thread_num() : 0;
        SteinerSolution best;
#pragma omp for schedule(static)
        for (int64_t maski = 0; maski < static_cast<int64_t>(full); ++maski) {
            uint32_t mask = static_cast<uint32_t>(maski);
            UnionFind uf(g.n);
            for (int e = 0; e < m; ++e)
                if (mask & (uint32_t(1) << e)) uf.unite(g.edges[e].u, g.edges[e].v);
            int root = uf.find(terminals[0]);
            bool ok = true;
            for (size_t i = 1; i < terminals.size() && ok; ++i)
                ok = uf.find(terminals[i]) == root;
            if (!ok) continue;
            SteinerSolution cand;
            cand.feasible = true;
            cand.weight = 0;
            for (int e = 0; e < m; ++e)
                if (mask & (uint32_t(1) << e)) {
                    cand.edges.push_back(e);
                    cand.weight += g.edges[e].w;
                }
            if (solution_less(cand, best)) best = std::move(cand);
        }
        best_per[tid] = std::move(best);
    }

    SteinerSolution best;
    for (const auto& b : best_per)
        if (solution_less(b, best)) best = b;
    return best;
}

SteinerSolution one_face_steiner(const PlanarGraph& g, std::vector<int> terminals,
                                 int face_id, const OracleConfig& cfg) {
    if (face_id < 0 || face_id >= static_cast<int>(g.faces().size()))
        throw std::invalid_argument("one_face_steiner: face id out of range");
    const Face& face = g.faces()[face_id];
    if (face.vertex_set.size() != face.vertices.size())
        throw std::invalid_argument("one_face_steiner: face walk is not a simple cycle");

    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    if (terminals.size() <= 1) return SteinerSolution::empty_solution();
    for (int t : terminals)
        if (!face.has_vertex(t))
            throw std::invalid_argument("one_face_steiner: terminal " + std::to_string(t) +
                                        " is not on the face");

    // terminals in face-walk order
    std::vector<int> order;
    for (int v : face.vertices)
        if (std::binary_search(terminals.begin(), terminals.end(), v)) order.push_back(v);
    const int p = static_cast<int>(order.size());
    assert(p == static_cast<int>(terminals.size()));

    AdjGraph a = AdjGraph::from(g);
    std::vector<Weight> ew(a.edges.size());
    for (size_t e = 0; e < a.edges.size(); ++e) ew[e] = a.edges[e].w;

    std::vector<Closure<Weight>> tdij(p);
    for (int i = 0; i < p; ++i) tdij[i] = single_source(a, ew, order[i], true);

    // dp[i][j][v], stored flat at (i * p + j)
    std::vector<std::vector<Weight>> dp(p * p);
    std::vector<std::vector<char>> rp(p * p);
    auto at = [p](int i, int j) { return i * p + j; };

    auto merge_interval = [&](int i, int j, std::vector<Weight>& base,
                              std::vector<char>& based) {
        base.assign(a.n, Weight());
        based.assign(a.n, 0);
        for (int mmid = i; mmid < j; ++mmid) {
            const auto& d1 = dp[at(i, mmid)];
            const auto& r1 = rp[at(i, mmid)];
            const auto& d2 = dp[at(mmid + 1, j)];
            const auto& r2 = rp[at(mmid + 1, j)];
            for (int v = 0; v < a.n; ++v) {
                if (!r1[v] || !r2[v]) continue;
                Weight cand = d1[v] + d2[v];
                if (!based[v] || cand < base[v]) {
                    base[v] = std::move(cand);
                    based[v] = 1;
                }
            }
        }
    };

    for (int i = 0; i < p; ++i) {
        dp[at(i, i)] = tdij[i].dist;
        rp[at(i, i)] = tdij[i].reach;
    }
    for (int len = 2; len <= p; ++len) {
        for (int i = 0; i + len - 1 < p; ++i) {
            int j = i + len - 1;
            std::vector<Weight> base;
            std::vector<char> based;
            merge_interval(i, j, base, based);
            Closure<Weight> c = run_closure(a, ew, base, based, false);
            dp[at(i, j)] = std::move(c.dist);
            rp[at(i, j)] = std::move(c.reach);
        }
    }

    int best_v = -1;
    for (int v = 0; v < a.n; ++v) {
        if (!rp[at(0, p - 1)][v]) continue;
        if (best_v < 0 || dp[at(0, p - 1)][v] < dp[at(0, p - 1)][best_v]) best_v = v;
    }
    if (best_v < 0) return SteinerSolution::infeasible_solution();

    SteinerSolution sol;
    sol.feasible = true;
    sol.weight = dp[at(0, p - 1)][best_v];
    if (!cfg.want_witness) return sol;

    std::set<int> acc;
    std::function<void(int, int, int)> rebuild = [&](int i, int j, int v) {
        if (i == j) {
            const auto& dij = tdij[i];
            int cur = v;
            while (dij.parent_vertex[cur] != -1) {
                acc.insert(dij.parent_edge[cur]);
                cur = dij.parent_vertex[cur];
            }
            return;
        }
        std::vector<Weight> base;
        std::vector<char> based;
        merge_interval(i, j, base, based);
        Closure<Weight> c = run_closure(a, ew, base, based, true);
        int cur = v;
        while (c.parent_vertex[cur] != -1) {
            acc.insert(c.parent_edge[cur]);
            cur = c.parent_vertex[cur];
        }
        int r = cur;
        for (int mmid = i; mmid < j; ++mmid) {
            if (rp[at(i, mmid)][r] && rp[at(mmid + 1, j)][r] &&
                dp[at(i, mmid)][r] + dp[at(mmid + 1, j)][r] == base[r]) {
                rebuild(i, mmid, r);
                rebuild(mmid + 1, j, r);
                return;
            }
        }
        assert(false && "no interval split reproduces the merge value");
    };
    rebuild(0, p - 1, best_v);
    std::vector<int> edges(acc.begin(), acc.end());
    sol.edges = prune_to_tree(a, std::move(edges), terminals);
    assert(a.weight_of(sol.edges) == sol.weight);
    return sol;
}

SteinerSolution portal_anchored_forest(const PlanarGraph& g, const std::vector<int>& terminals,
                                       const std::vector<int>& portals,
                                       const OracleConfig& cfg) {
    if (portals.empty()) throw std::invalid_argument("portal set is empty");
    std::vector<Edge> edges = g.edges;
    const int apex = g.n;
    std::vector<int> ps = portals;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    const int first_apex_edge = static_cast<int>(edges.size());
    for (int p : ps) edges.push_back(Edge{apex, p, Weight(0)});
    AdjGraph aug = AdjGraph::from_edges(g.n + 1, std::move(edges));

    std::vector<int> T = terminals;
    T.push_back(apex);
    SteinerSolution sol = dreyfus_wagner(aug, std::move(T), cfg);
    if (!sol.feasible) return sol;
    std::vector<int> kept;
    for (int e : sol.edges)
        if (e < first_apex_edge) kept.push_back(e);
    sol.edges = std::move(kept);
    return sol;
}

Weight portal_anchored_forest_min(const PlanarGraph& g, const std::vector<int>& terminals,
                                  const std::vector<int>& portals, const OracleConfig& cfg) {
    SteinerSolution s = portal_anchored_forest(g, terminals, portals, cfg);
    if (!s.feasible)
        throw GraphError("portal_anchored_forest_min: terminals cannot reach the portals");
    return s.weight;
}

}  // namespace pst
