#include "pst/solver.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <map>
#include <set>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pst/noncrossing.hpp"
#include "pst/unionfind.hpp"

namespace pst {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool contains(const std::vector<int>& sorted, int x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> set_union_of(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> set_intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> mask_subset(const std::vector<int>& items, std::uint32_t mask) {
    std::vector<int> out;
    for (std::size_t i = 0; i < items.size(); ++i)
        if (mask >> i & 1u) out.push_back(items[i]);
    return out;
}

int isqrt_floor(long long v) {
    if (v <= 0) return 0;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return static_cast<int>(r);
}

// Lexicographically next k-subset of {0..n-1}; false once c was the last one.
bool next_combination(std::vector<int>& c, int n) {
    int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

struct RecResult {
    SteinerSolution sol;
    bool certified = true;
};

RecResult recurse(const PlanarGraph& g, const std::vector<int>& B, const Partition& pi,
                  const std::vector<int>& T, const std::vector<int>& K,
                  const SolverConfig& cfg, int depth, SolverStats& stats);

// Expands one separator candidate X at the current node: enumerates balanced
// splits of the boundary and the terminal faces, partition pairs that glue
// back to pi, and reassignments of the terminals living on the faces X cuts,
// then folds every resulting two-child candidate into best.
void eval_separator(const PlanarGraph& g, const std::vector<int>& B, const Partition& pi,
                    const std::vector<int>& T, const std::vector<int>& K,
                    const std::vector<int>& K_T, int p, const std::vector<int>& X,
                    const SolverConfig& cfg, int depth, SolverStats& stats,
                    SteinerSolution& best, bool& children_ok) {
    ++stats.separators_tried;
    const auto& faces = g.faces();

    std::vector<int> K_X = faces_hit(g, K, X);
    std::vector<int> Brem = set_minus(B, X);
    std::vector<int> Krem = set_minus(K_T, K_X);

    // terminals on the cut faces, X itself excluded
    std::vector<int> kxT;
    for (int f : K_X) kxT = set_union_of(kxT, set_intersect(faces[f].vertex_set, T));
    kxT = set_minus(kxT, X);

    // terminal sets of the walk components of the cut faces; only the
    // terminal content of a component matters downstream, so dedupe on it
    std::vector<std::vector<int>> block_ts;
    for (int f : K_X) {
        for (const Block& blk : face_components(g, f, X)) {
            std::vector<int> ts = set_intersect(blk, T);
            ts = set_minus(ts, X);
            if (!ts.empty()) block_ts.push_back(std::move(ts));
        }
    }
    std::sort(block_ts.begin(), block_ts.end());
    block_ts.erase(std::unique(block_ts.begin(), block_ts.end()), block_ts.end());

    int nb = static_cast<int>(Brem.size());
    int nk = static_cast<int>(Krem.size());
    if (nb > 20 || nk > 20 || block_ts.size() > 20)
        throw SolverError("split enumeration too large; lower c0 or the instance size");

    std::vector<std::vector<int>> krem_t(nk);
    for (int i = 0; i < nk; ++i) krem_t[i] = set_intersect(faces[Krem[i]].vertex_set, T);

    for (std::uint32_t bm = 0; bm < (1u << nb); ++bm) {
        for (std::uint32_t km = 0; km < (1u << nk); ++km) {
            int m = std::popcount(bm) + std::popcount(km);
            if (3 * m < p || 3 * m > 2 * p) continue;

            std::vector<int> B1 = mask_subset(Brem, bm);
            std::vector<int> B2 = mask_subset(Brem, ~bm & ((1u << nb) - 1u));
            std::vector<int> K1 = mask_subset(Krem, km);
            std::vector<int> K2 = mask_subset(Krem, ~km & ((1u << nk) - 1u));

            std::vector<int> ground1 = set_union_of(B1, X);
            std::vector<int> ground2 = set_union_of(B2, X);
            std::vector<Partition> parts1 =
                ground1.empty() ? std::vector<Partition>{Partition{}} : all_partitions(ground1);
            std::vector<Partition> parts2 =
                ground2.empty() ? std::vector<Partition>{Partition{}} : all_partitions(ground2);

            // keep only partition pairs whose join restricts to pi on B and
            // ties every separator vertex to the boundary
            std::vector<std::pair<int, int>> accepted;
            for (int i = 0; i < static_cast<int>(parts1.size()); ++i) {
                for (int j = 0; j < static_cast<int>(parts2.size()); ++j) {
                    Partition jn = partition_join(parts1[i], parts2[j]);
                    if (partition_project(jn, B) != pi) continue;
                    bool tied = true;
                    for (int u : X) {
                        bool found = false;
                        for (int v : B)
                            if (same_block(jn, u, v)) {
                                found = true;
                                break;
                            }
                        if (!found) {
                            tied = false;
                            break;
                        }
                    }
                    if (tied) accepted.emplace_back(i, j);
                }
            }
            if (accepted.empty()) continue;

            std::vector<int> childK1 = set_union_of(K1, K_X);
            std::vector<int> childK2 = set_union_of(K2, K_X);
            std::vector<int> k1T, k2T;
            for (int i = 0; i < nk; ++i)
                if (km >> i & 1u)
                    k1T = set_union_of(k1T, krem_t[i]);
                else
                    k2T = set_union_of(k2T, krem_t[i]);

            // each distinct child shows up across many (A1, partition) combos
            std::map<std::pair<int, std::vector<int>>, RecResult> cache1, cache2;
            std::set<std::pair<std::vector<int>, std::vector<int>>> seen;

            auto child = [&](std::map<std::pair<int, std::vector<int>>, RecResult>& cache,
                             int pidx, const Partition& cpi, const std::vector<int>& ground,
                             const std::vector<int>& ct,
                             const std::vector<int>& ck) -> const RecResult& {
                auto key = std::make_pair(pidx, ct);
                auto it = cache.find(key);
                if (it != cache.end()) return it->second;
#ifndef NDEBUG
                for (int t : ct) {
                    bool on = false;
                    for (int f : ck)
                        if (faces[f].has_vertex(t)) {
                            on = true;
                            break;
                        }
                    assert(on && "child terminal left the listed faces");
                }
                int ckt = static_cast<int>(faces_hit(g, ck, ct).size());
                int pp = static_cast<int>(ground.size()) + ckt;
                assert(3 * pp <= 2 * p + 12 * (isqrt_floor(225LL * p) + 2));
#endif
                RecResult r = recurse(g, ground, cpi, ct, ck, cfg, depth + 1, stats);
                return cache.emplace(std::move(key), std::move(r)).first->second;
            };

            std::uint32_t nblk = static_cast<std::uint32_t>(block_ts.size());
            for (std::uint32_t am = 0; am < (1u << nblk); ++am) {
                std::vector<int> a1T;
                for (std::uint32_t i = 0; i < nblk; ++i)
                    if (am >> i & 1u) a1T = set_union_of(a1T, block_ts[i]);

                std::vector<int> T1 = set_union_of(a1T, k1T);
                std::vector<int> T2 = set_union_of(set_minus(kxT, a1T), k2T);
                std::vector<int> T1c = set_minus(T1, X);
                std::vector<int> T2c = set_minus(T2, X);
                assert(set_minus(T, set_union_of(set_union_of(T1c, T2c), X)).empty());
                if (!seen.emplace(T1c, T2c).second) continue;

                for (const auto& [i, j] : accepted) {
                    const RecResult& r1 = child(cache1, i, parts1[i], ground1, T1c, childK1);
                    children_ok = children_ok && r1.certified;
                    if (!r1.sol.feasible) continue;
                    const RecResult& r2 = child(cache2, j, parts2[j], ground2, T2c, childK2);
                    children_ok = children_ok && r2.certified;
                    if (!r2.sol.feasible) continue;

                    std::vector<int> un = set_union_of(r1.sol.edges, r2.sol.edges);
                    SteinerSolution cand{true, g.weight_of_edges(un), un};
                    if (solution_less(cand, best)) best = cand;
                }
            }
        }
    }
}

RecResult recurse(const PlanarGraph& g, const std::vector<int>& B, const Partition& pi,
                  const std::vector<int>& T, const std::vector<int>& K,
                  const SolverConfig& cfg, int depth, SolverStats& stats) {
    stats.recursion_depth = std::max(stats.recursion_depth, depth);

    if (B.empty()) {
        RecResult r;
        if (T.empty()) r.sol = SteinerSolution{true, Weight(0), {}};
        return r;
    }

    std::vector<int> K_T = faces_hit(g, K, T);
    int p = static_cast<int>(B.size()) + static_cast<int>(K_T.size());
    PbsfInstance sub{&g, B, pi, T, K};

    if (p <= cfg.c0 || depth >= cfg.depth_max) {
        ++stats.base_case_calls;
        return RecResult{steiner_base(sub), true};
    }

    int paper = isqrt_floor(225LL * p) + 2;
    int bound = std::min({cfg.sep_max, paper, g.n});
    if (bound < 0) bound = 0;
    bool full_cover = bound >= std::min(paper, g.n);

    SteinerSolution best;
    bool children_ok = true;

    for (int s = 0; s <= bound; ++s) {
        std::vector<std::vector<int>> xs;
        if (s == 0) {
            xs.push_back({});
        } else if (s <= g.n) {
            std::vector<int> c(s);
            for (int i = 0; i < s; ++i) c[i] = i;
            do xs.push_back(c);
            while (next_combination(c, g.n));
        }

        bool done = false;
#ifdef _OPENMP
        if (depth == 0 && cfg.parallel && cfg.threads > 1 && xs.size() > 1) {
            int nt = cfg.threads;
            std::vector<SteinerSolution> bests(nt);
            std::vector<char> oks(nt, 1);
            std::vector<SolverStats> tstats(nt);
#pragma omp parallel for num_threads(nt) schedule(static)
            for (long long idx = 0; idx < static_cast<long long>(xs.size()); ++idx) {
                int tid = omp_get_thread_num();
                bool ok = oks[tid] != 0;
                eval_separator(g, B, pi, T, K, K_T, p, xs[idx], cfg, depth, tstats[tid],
                               bests[tid], ok);
                oks[tid] = ok ? 1 : 0;
            }
            for (int t = 0; t < nt; ++t) {
                stats.base_case_calls += tstats[t].base_case_calls;
                stats.separators_tried += tstats[t].separators_tried;
                stats.recursion_depth = std::max(stats.recursion_depth, tstats[t].recursion_depth);
                children_ok = children_ok && oks[t] != 0;
                if (solution_less(bests[t], best)) best = bests[t];
            }
            done = true;
        }
#endif
        if (!done)
            for (const auto& x : xs)
                eval_separator(g, B, pi, T, K, K_T, p, x, cfg, depth, stats, best, children_ok);
    }

    if (!best.feasible) {
        // no split produced a candidate; settle the node outright
        ++stats.base_case_calls;
        return RecResult{steiner_base(sub), true};
    }
    return RecResult{best, full_cover && children_ok};
}

}  // namespace

std::vector<int> faces_hit(const PlanarGraph& g, const std::vector<int>& face_ids,
                           const std::vector<int>& x) {
    const auto& faces = g.faces();
    std::vector<int> xs = sorted_unique(x);
    std::vector<int> out;
    for (int f : sorted_unique(face_ids)) {
        if (f < 0 || f >= static_cast<int>(faces.size()))
            throw SolverError("faces_hit: face id out of range");
        const auto& vs = faces[f].vertex_set;
        for (int v : xs) {
            if (std::binary_search(vs.begin(), vs.end(), v)) {
                out.push_back(f);
                break;
            }
        }
    }
    return out;
}

Partition face_components(const PlanarGraph& g, int face_id, const std::vector<int>& x) {
    const auto& faces = g.faces();
    if (face_id < 0 || face_id >= static_cast<int>(faces.size()))
        throw SolverError("face_components: face id out of range");
    std::vector<int> xs = sorted_unique(x);
    const std::vector<int>& walk = faces[face_id].vertices;

    std::vector<int> ground;
    for (int v : walk)
        if (!contains(xs, v)) ground.push_back(v);
    ground = sorted_unique(ground);
    if (ground.empty()) return {};

    UnionFind uf(g.n);
    int len = static_cast<int>(walk.size());
    for (int i = 0; i < len; ++i) {
        int u = walk[i];
        int v = walk[(i + 1) % len];
        if (!contains(xs, u) && !contains(xs, v)) uf.unite(u, v);
    }

    std::map<int, Block> by_root;
    for (int v : ground) by_root[uf.find(v)].push_back(v);
    Partition out;
    for (auto& [root, blk] : by_root) out.push_back(std::move(blk));
    return canonical_partition(out);
}

SteinerSolution steiner_base(const PbsfInstance& inst) {
    if (inst.graph == nullptr) throw SolverError("steiner_base: missing graph");
    const PlanarGraph& g = *inst.graph;
    const auto& faces = g.faces();

    std::vector<int> B = sorted_unique(inst.boundary);
    std::vector<int> T = sorted_unique(inst.terminals);
    std::vector<int> K = sorted_unique(inst.faces);
    for (int b : B)
        if (b < 0 || b >= g.n) throw SolverError("steiner_base: boundary vertex out of range");
    for (int t : T)
        if (t < 0 || t >= g.n) throw SolverError("steiner_base: terminal out of range");
    for (int f : K)
        if (f < 0 || f >= static_cast<int>(faces.size()))
            throw SolverError("steiner_base: face id out of range");

    if (B.empty()) {
        if (T.empty()) return SteinerSolution{true, Weight(0), {}};
        return {};
    }
    Partition pi = canonical_partition(inst.pi);
    if (partition_ground(pi) != B) throw SolverError("steiner_base: pi must partition the boundary");

    std::vector<int> teff = set_minus(T, B);

    // face-walk positions of the free terminals; only faces whose walk is a
    // simple cycle give a usable cyclic order, others skip the filter
    std::vector<std::vector<int>> filter_pos;
    for (int f : K) {
        const Face& face = faces[f];
        if (face.vertex_set.size() != face.vertices.size()) continue;
        std::vector<int> pos;
        for (int v : face.vertices) {
            auto it = std::lower_bound(teff.begin(), teff.end(), v);
            if (it != teff.end() && *it == v) pos.push_back(static_cast<int>(it - teff.begin()));
        }
        if (pos.size() >= 4) filter_pos.push_back(std::move(pos));
    }

    AdjGraph adj;
    bool adj_ready = false;
    std::map<std::vector<int>, SteinerSolution> memo;

    auto group_tree = [&](const std::vector<int>& u) -> const SteinerSolution& {
        auto it = memo.find(u);
        if (it != memo.end()) return it->second;
        OracleConfig ocfg;
        ocfg.threads = 1;
        ocfg.max_terminals = std::max<int>(16, static_cast<int>(u.size()));
        int face_id = -1;
        for (int f : K) {
            const Face& face = faces[f];
            if (face.vertex_set.size() != face.vertices.size()) continue;
            if (std::includes(face.vertex_set.begin(), face.vertex_set.end(), u.begin(),
                              u.end())) {
                face_id = f;
                break;
            }
        }
        SteinerSolution sol;
        if (face_id >= 0) {
            sol = one_face_steiner(g, u, face_id, ocfg);
        } else {
            if (!adj_ready) {
                adj = AdjGraph::from(g);
                adj_ready = true;
            }
            sol = dreyfus_wagner(adj, u, ocfg);
        }
        return memo.emplace(u, std::move(sol)).first->second;
    };

    SteinerSolution best;
    for (const Partition& ps : coarsenings_of(pi)) {
        int l = static_cast<int>(ps.size());
        std::vector<int> digits(teff.size(), 0);
        while (true) {
            bool ok = true;
            for (const auto& pos : filter_pos) {
                ValueSeq seq;
                seq.reserve(pos.size());
                for (int idx : pos) seq.push_back(digits[idx]);
                if (!is_noncrossing(seq)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                std::vector<int> un;
                bool feas = true;
                for (int i = 0; i < l && feas; ++i) {
                    std::vector<int> u = ps[i];
                    for (std::size_t jj = 0; jj < digits.size(); ++jj)
                        if (digits[jj] == i) u.push_back(teff[jj]);
                    std::sort(u.begin(), u.end());
                    if (u.size() <= 1) continue;
                    const SteinerSolution& s = group_tree(u);
                    if (!s.feasible) {
                        feas = false;
                        break;
                    }
                    un.insert(un.end(), s.edges.begin(), s.edges.end());
                }
                if (feas) {
                    un = sorted_unique(un);
                    SteinerSolution cand{true, g.weight_of_edges(un), un};
                    if (solution_less(cand, best)) best = cand;
                }
            }
            std::size_t d = 0;
            while (d < digits.size() && ++digits[d] == l) digits[d++] = 0;
            if (d == digits.size()) break;
        }
    }
    return best;
}

SolverResult steiner(const PbsfInstance& inst, const SolverConfig& cfg) {
    if (inst.graph == nullptr) throw SolverError("steiner: missing graph");
    const PlanarGraph& g = *inst.graph;
    const auto& faces = g.faces();

    std::vector<int> B = sorted_unique(inst.boundary);
    std::vector<int> T = sorted_unique(inst.terminals);
    std::vector<int> K = sorted_unique(inst.faces);
    if (B.empty()) throw SolverError("steiner: boundary must not be empty");
    for (int b : B)
        if (b < 0 || b >= g.n) throw SolverError("steiner: boundary vertex out of range");
    for (int t : T)
        if (t < 0 || t >= g.n) throw SolverError("steiner: terminal out of range");
    for (int f : K)
        if (f < 0 || f >= static_cast<int>(faces.size()))
            throw SolverError("steiner: face id out of range");
    Partition pi = canonical_partition(inst.pi);
    if (partition_ground(pi) != B) throw SolverError("steiner: pi must partition the boundary");
    for (int t : T) {
        bool on = false;
        for (int f : K)
            if (faces[f].has_vertex(t)) {
                on = true;
                break;
            }
        if (!on) throw SolverError("steiner: terminal not on any listed face");
    }

    SolverConfig c = cfg;
    if (c.threads < 1) c.threads = 1;
    if (c.depth_max < 0) c.depth_max = 0;

    SolverResult out;
    RecResult r = recurse(g, B, pi, T, K, c, 0, out.stats);
    out.solution = std::move(r.sol);
    out.optimal_certified = r.certified;

#ifndef NDEBUG
    if (out.solution.feasible) {
        UnionFind uf(g.n);
        for (int e : out.solution.edges) uf.unite(g.edges[e].u, g.edges[e].v);
        for (int t : T) {
            bool linked = false;
            for (int b : B)
                if (uf.same(t, b)) {
                    linked = true;
                    break;
                }
            assert(linked && "terminal not connected to the boundary");
        }
        for (const Block& blk : pi)
            for (std::size_t i = 1; i < blk.size(); ++i) assert(uf.same(blk[0], blk[i]));
        assert(out.solution.weight == g.weight_of_edges(out.solution.edges));
    }
#endif
    return out;
}

}  // namespace pst
