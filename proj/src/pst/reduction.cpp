#include "pst/reduction.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cassert>
#include <set>
#include <string>

#include "pst/gamma.hpp"
#include "pst/oracles.hpp"

namespace pst {

namespace {

void validate_grid_tiling(const GridTilingInstance& gt) {
    if (gt.n < 1) throw ReductionError("grid tiling side must be at least 1");
    if (gt.k < 1) throw ReductionError("grid tiling must have at least one cell row");
    if (static_cast<int>(gt.cells.size()) != gt.k * gt.k)
        throw ReductionError("grid tiling needs exactly k*k cells");
    for (const auto& [key, pairs] : gt.cells) {
        auto [a, b] = key;
        if (a < 1 || a > gt.k || b < 1 || b > gt.k)
            throw ReductionError("grid tiling cell index out of range");
        for (const auto& [x, y] : pairs)
            if (x < 1 || x > gt.n || y < 1 || y > gt.n)
                throw ReductionError("grid tiling pair out of range");
    }
}

}  // namespace

GridTilingInstance grid_tiling_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ReductionError(std::string("grid tiling JSON is malformed: ") + e.what());
    }
    GridTilingInstance gt;
    try {
        gt.n = j.at("n").get<int>();
        gt.k = j.at("k").get<int>();
        for (const auto& [key, value] : j.at("cells").items()) {
            size_t comma = key.find(',');
            if (comma == std::string::npos)
                throw ReductionError("grid tiling cell key must look like \"a,b\"");
            int a = std::stoi(key.substr(0, comma));
            int b = std::stoi(key.substr(comma + 1));
            auto& pairs = gt.cells[{a, b}];
            for (const auto& pr : value) {
                if (!pr.is_array() || pr.size() != 2)
                    throw ReductionError("grid tiling pair must be a two-element array");
                pairs.insert({pr.at(0).get<int>(), pr.at(1).get<int>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ReductionError(std::string("grid tiling JSON is missing fields: ") + e.what());
    }
    validate_grid_tiling(gt);
    return gt;
}

std::string grid_tiling_to_json(const GridTilingInstance& gt) {
    nlohmann::json cells = nlohmann::json::object();
    for (const auto& [key, pairs] : gt.cells) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& [x, y] : pairs) list.push_back({x, y});
        cells[std::to_string(key.first) + "," + std::to_string(key.second)] = list;
    }
    nlohmann::json j{{"n", gt.n}, {"k", gt.k}, {"cells", cells}};
    return j.dump(2);
}

std::optional<GridTilingSolution> solve_grid_tiling_bruteforce(const GridTilingInstance& gt) {
    validate_grid_tiling(gt);
    if (gt.n > 3 || gt.k > 3)
        throw ReductionError("grid tiling brute force handles sides up to 3");
    std::vector<int> x(gt.k, 1), y(gt.k, 1);
    auto advance = [&](std::vector<int>& v) {
        for (int i = 0; i < gt.k; ++i) {
            if (v[i] < gt.n) {
                ++v[i];
                return true;
            }
            v[i] = 1;
        }
        return false;
    };
    do {
        std::fill(y.begin(), y.end(), 1);
        do {
            bool good = true;
            for (int a = 1; a <= gt.k && good; ++a)
                for (int b = 1; b <= gt.k && good; ++b)
                    good = gt.cells.at({a, b}).count({x[a - 1], y[b - 1]}) > 0;
            if (good) return GridTilingSolution{x, y};
        } while (advance(y));
    } while (advance(x));
    return std::nullopt;
}

ReductionConstants reduction_constants(int n, int k) {
    if (n < 1 || k < 1) throw ReductionError("grid tiling sizes must be positive");
    ReductionConstants rc;
    rc.n = std::max(2, static_cast<int>(std::bit_ceil(static_cast<unsigned>(n))));
    rc.k = k;
    rc.N = rc.n * rc.n;
    rc.L = rc.n;
    rc.t = 2 * rc.n;
    rc.base = Weight(10) * k * k * rc.N * rc.L;
    rc.powers.resize(8);
    for (int i = 0; i <= 7; ++i) rc.powers[i] = weight_pow(rc.base, i);
    return rc;
}

ReductionOutput build_reduction(const GridTilingInstance& gt) {
    validate_grid_tiling(gt);
    ReductionOutput out;
    out.constants = reduction_constants(gt.n, gt.k);
    const ReductionConstants& rc = out.constants;
    const int n = rc.n, k = rc.k, N = rc.N, L = rc.L, t = rc.t;
    const Weight& m6 = rc.powers[6];
    const Weight& m7 = rc.powers[7];

    GraphBuilder gb;
    out.root = gb.add_vertex();
    for (int a = 1; a <= k; ++a) out.heads.push_back(gb.add_vertex());
    for (int b = 1; b <= k; ++b) out.south_dummy.push_back(gb.add_vertex());
    for (int b = 1; b <= k; ++b) out.north_dummy.push_back(gb.add_vertex());

    // Cell chains. Row a grows northward, column b eastward; the east chain
    // reads the same construction upside down, so its selector row for entry
    // m is N - m + 1. Apexes of row 1 east and row k west all collapse onto
    // the per-column dummy terminals.
    out.west.assign(k, {});
    out.east.assign(k, {});
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b) {
            std::vector<std::vector<int>> sw(L), se(L);
            for (const auto& [i, l] : gt.cells.at({a, b})) {
                int m = (i - 1) * n + l;
                sw[l - 1].push_back(m);
                se[l - 1].push_back(N - m + 1);
            }
            for (auto& s : sw) std::sort(s.begin(), s.end());
            for (auto& s : se) std::sort(s.begin(), s.end());
            std::vector<int> w_west, w_east;
            if (a == k) w_west.assign(L, out.north_dummy[b - 1]);
            if (a == 1) w_east.assign(L, out.south_dummy[b - 1]);
            out.west[a - 1].push_back(emit_lvg(gb, N, L, sw, rc.base, w_west));
            out.east[a - 1].push_back(emit_lvg(gb, N, L, se, rc.base, w_east));
        }

    // Joins pair the far ends of the two chains inside each cell.
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b)
            for (int j = 1; j <= N; ++j)
                gb.add_edge(out.west[a - 1][b - 1].q[j - 1],
                            out.east[a - 1][b - 1].q[N - j], m6);

    // Fuse columns forward the row choice from cell b to cell b+1: fuse
    // vertex i bridges the n east-side entries of row block i to the same
    // block on the next cell's west side.
    out.fuse.assign(k, {});
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b < k; ++b) {
            std::vector<int> column;
            for (int i = 1; i <= n; ++i) {
                int f = gb.add_vertex();
                std::vector<int> to_west, to_east;
                for (int l = 1; l <= n; ++l) {
                    int m = (i - 1) * n + l;
                    to_west.push_back(
                        gb.add_edge(out.east[a - 1][b - 1].p[N - m], f, m6));
                }
                for (int l = 1; l <= n; ++l) {
                    int m = (i - 1) * n + l;
                    to_east.push_back(
                        gb.add_edge(f, out.west[a - 1][b].p[m - 1], m6));
                }
                // Counterclockwise around the fuse: the eastward bundle
                // climbs the rows, the westward bundle comes back down.
                std::vector<int> rot = to_east;
                for (int l = n; l >= 1; --l) rot.push_back(to_west[l - 1]);
                gb.set_rotation_edges(f, rot);
                column.push_back(f);
            }
            out.fuse[a - 1].push_back(column);
        }

    // The root fans out to every west flank, one head per row collects the
    // east flank. Insertion order keeps both fans sorted by height.
    for (int a = 1; a <= k; ++a)
        for (int j = 1; j <= N; ++j)
            gb.add_edge(out.root, out.west[a - 1][0].p[j - 1], m6);
    for (int a = 1; a <= k; ++a)
        for (int j = 1; j <= N; ++j)
            gb.add_edge(out.east[a - 1][k - 1].p[j - 1], out.heads[a - 1], m6);

    // Connector rings between vertically adjacent rows. The ring template
    // comes from the interval gadget; portals starting at 1..t/2 land on the
    // row below, the opposite portals on the row above, and every edge is
    // scaled so the cheapest ring edge costs 4 M^7.
    FlowerGadget tmpl = build_flower(t, Weight(t / 4));
    const Weight ring_mult = 4 * m7;
    std::set<int> tmpl_portals(tmpl.portals.begin(), tmpl.portals.end());
    if (k > 1) out.rings.assign(k - 1, {});
    for (int a = 1; a < k; ++a)
        for (int b = 1; b <= k; ++b) {
            std::vector<int> vmap(tmpl.graph.n, -1);
            for (int l = 1; l <= t / 2; ++l) {
                vmap[tmpl.portals[l]] = out.west[a - 1][b - 1].w[l - 1];
                vmap[tmpl.portals[(l + t / 2) % t]] = out.east[a][b - 1].w[l - 1];
            }
            RingSite site;
            for (int v = 0; v < tmpl.graph.n; ++v)
                if (vmap[v] < 0) {
                    vmap[v] = gb.add_vertex();
                    site.vertices.push_back(vmap[v]);
                }
            for (int s = 0; s < t; ++s) site.terminals.push_back(vmap[tmpl.terminals[s]]);

            std::vector<int> emap(tmpl.graph.edges.size(), -1);
            for (size_t e = 0; e < tmpl.graph.edges.size(); ++e) {
                const Edge& ed = tmpl.graph.edges[e];
                emap[e] = gb.add_edge(vmap[ed.u], vmap[ed.v], ed.w * ring_mult);
                site.edges.push_back(emap[e]);
            }
            for (int v = 0; v < tmpl.graph.n; ++v) {
                if (tmpl_portals.count(v)) continue;
                std::vector<int> rot;
                rot.reserve(tmpl.graph.rotation[v].size());
                for (int end : tmpl.graph.rotation[v]) rot.push_back(emap[end / 2]);
                gb.set_rotation_edges(vmap[v], rot);
            }

            // Merged apexes: selectors ascending, then the two ring edges in
            // the template's own portal order.
            auto ring_pair = [&](int start) {
                int pid = tmpl.portals[start % t];
                int same_start =
                    tmpl.edge_between(pid, tmpl.vertex_of(start, start + t / 2 - 2));
                int next_start =
                    tmpl.edge_between(pid, tmpl.vertex_of(start + 1, start + t / 2 - 1));
                assert(same_start >= 0 && next_start >= 0);
                return std::pair<int, int>{emap[same_start], emap[next_start]};
            };
            for (int l = 1; l <= t / 2; ++l) {
                auto set_apex = [&](const LvgPorts& chain, int start) {
                    std::vector<int> rot;
                    for (const auto& kv : chain.blocks[l - 1].selector_edge)
                        rot.push_back(kv.second);
                    auto [same_start, next_start] = ring_pair(start);
                    rot.push_back(same_start);
                    rot.push_back(next_start);
                    gb.set_rotation_edges(chain.w[l - 1], rot);
                };
                set_apex(out.west[a - 1][b - 1], l);
                set_apex(out.east[a][b - 1], l + t / 2);
            }
            out.rings[a - 1].push_back(site);
        }

    out.graph = gb.build();

    out.terminals.push_back(out.root);
    for (int h : out.heads) out.terminals.push_back(h);
    for (int d : out.south_dummy) out.terminals.push_back(d);
    for (int d : out.north_dummy) out.terminals.push_back(d);
    for (int a = 1; a < k; ++a)
        for (int b = 1; b <= k; ++b)
            for (int v : out.rings[a - 1][b - 1].terminals) out.terminals.push_back(v);

    // Ring faces: among faces holding all t tips of a ring, the tight walk
    // is the carpel; the rest of the terminals share the outer face.
    const auto& faces = out.graph.faces();
    for (int a = 1; a < k; ++a)
        for (int b = 1; b <= k; ++b) {
            RingSite& site = out.rings[a - 1][b - 1];
            int best = -1;
            for (size_t fi = 0; fi < faces.size(); ++fi) {
                bool all = true;
                for (int v : site.terminals)
                    if (!faces[fi].has_vertex(v)) {
                        all = false;
                        break;
                    }
                if (all && (best < 0 || faces[fi].ends.size() < faces[best].ends.size()))
                    best = static_cast<int>(fi);
            }
            if (best < 0) throw ReductionError("connector ring lost its terminal face");
            site.carpel_face = best;
            out.terminal_faces.push_back(best);
        }
    {
        int outer = -1;
        for (size_t fi = 0; fi < faces.size(); ++fi) {
            bool all = faces[fi].has_vertex(out.root);
            for (int h : out.heads) all = all && faces[fi].has_vertex(h);
            for (int d : out.south_dummy) all = all && faces[fi].has_vertex(d);
            for (int d : out.north_dummy) all = all && faces[fi].has_vertex(d);
            if (!all) continue;
            if (outer >= 0) throw ReductionError("boundary terminals span several faces");
            outer = static_cast<int>(fi);
        }
        if (outer < 0) throw ReductionError("boundary terminals lost their shared face");
        out.terminal_faces.push_back(outer);
    }

    Weight ring_part = Weight(k) * (k - 1) * (2 * t - 4) * t * m7;
    Weight chain_target = Weight(L) * rc.powers[5] + Weight(L) * (N - 1) * rc.powers[4] +
                          Weight(N) * rc.powers[3] + rc.powers[2];
    out.budget = ring_part + Weight(3) * k * k * m6 + Weight(2) * k * k * chain_target;

    Weight cap = Weight(t) * m7;
    for (const Edge& e : out.graph.edges)
        if (e.w > cap) throw ReductionError("edge weight exceeds the intended cap");

    return out;
}

PlanarGraph subdivide_to_unit_weights(const PlanarGraph& g, const Weight& budget) {
    if (g.total_weight() > budget)
        throw ReductionError("subdivision would exceed the unit-edge budget");
    GraphBuilder gb;
    gb.add_vertices(g.n);
    std::vector<int> first_seg(g.edges.size(), -1), last_seg(g.edges.size(), -1);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        if (ed.w < 1) throw ReductionError("unit subdivision needs positive weights");
        if (!ed.w.fits_slong_p())
            throw ReductionError("edge weight too large to lay out as unit edges");
        long steps = ed.w.get_si();
        int prev = ed.u;
        for (long s = 1; s < steps; ++s) {
            int mid = gb.add_vertex();
            int seg = gb.add_edge(prev, mid, Weight(1));
            if (s == 1) first_seg[e] = seg;
            prev = mid;
        }
        last_seg[e] = gb.add_edge(prev, ed.v, Weight(1));
        if (first_seg[e] < 0) first_seg[e] = last_seg[e];
    }
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> rot;
        rot.reserve(g.rotation[v].size());
        for (int end : g.rotation[v])
            rot.push_back(end % 2 == 0 ? first_seg[end / 2] : last_seg[end / 2]);
        gb.set_rotation_edges(v, rot);
    }
    return gb.build();
}

ReductionCheckReport check_reduction_instance(const GridTilingInstance& gt, int threads) {
    ReductionCheckReport rep;
    ReductionConstants rc = reduction_constants(gt.n, gt.k);
    int terminal_count = 1 + rc.k + 2 * rc.k + rc.k * (rc.k - 1) * rc.t;
    if (terminal_count > 16)
        throw ReductionError("instance too large for the exact end-to-end check");

    std::optional<GridTilingSolution> expected = solve_grid_tiling_bruteforce(gt);
    ReductionOutput out = build_reduction(gt);

    rep.n = gt.n;
    rep.k = gt.k;
    rep.vertices = out.graph.n;
    rep.edges = static_cast<long long>(out.graph.edges.size());
    rep.terminal_count = static_cast<int>(out.terminals.size());
    rep.budget = out.budget;

    AdjGraph adj = AdjGraph::from(out.graph);
    OracleConfig cfg;
    cfg.threads = threads;
    cfg.max_terminals = 16;
    cfg.want_witness = false;
    SteinerSolution sol = dreyfus_wagner(adj, out.terminals, cfg);
    rep.feasible = sol.feasible;
    if (sol.feasible) rep.optimum = sol.weight;

    rep.sat_expected = expected.has_value();
    rep.sat_observed = sol.feasible && sol.weight <= out.budget;
    rep.never_below_budget = !sol.feasible || sol.weight >= out.budget;
    rep.ok = (rep.sat_expected == rep.sat_observed) && rep.never_below_budget;
    return rep;
}

}  // namespace pst
