#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pst/gamma.hpp"
#include "pst/graph.hpp"
#include "pst/oracles.hpp"
#include "pst/random_planar.hpp"

using namespace pst;

namespace {

PlanarGraph make_cycle4() {
    GraphBuilder b;
    b.add_vertices(4);
    b.add_edge(0, 1, Weight(1));
    b.add_edge(1, 2, Weight(2));
    b.add_edge(2, 3, Weight(3));
    b.add_edge(3, 0, Weight(4));
    return b.build();
}

PlanarGraph make_grid3() {
    GraphBuilder b;
    b.add_vertices(9);
    auto id = [](int i, int j) { return j * 3 + i; };
    int k = 0;
    std::vector<std::vector<int>> hor(3, std::vector<int>(3, -1));
    std::vector<std::vector<int>> ver(3, std::vector<int>(3, -1));
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 2; ++i)
            hor[i][j] = b.add_edge(id(i, j), id(i + 1, j), Weight(1 + (k++ * 7) % 5));
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 3; ++i)
            ver[i][j] = b.add_edge(id(i, j), id(i, j + 1), Weight(1 + (k++ * 7) % 5));
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            std::vector<int> rot;
            if (i + 1 < 3) rot.push_back(hor[i][j]);
            if (j + 1 < 3) rot.push_back(ver[i][j]);
            if (i - 1 >= 0) rot.push_back(hor[i - 1][j]);
            if (j - 1 >= 0) rot.push_back(ver[i][j - 1]);
            b.set_rotation_edges(id(i, j), rot);
        }
    return b.build();
}

bool connects(const AdjGraph& g, const std::vector<int>& edge_ids,
              const std::vector<int>& terminals) {
    if (terminals.empty()) return true;
    std::vector<std::vector<int>> adj(g.n);
    for (int e : edge_ids) {
        adj[g.edges[e].u].push_back(g.edges[e].v);
        adj[g.edges[e].v].push_back(g.edges[e].u);
    }
    std::vector<bool> seen(g.n, false);
    std::vector<int> stack{terminals[0]};
    seen[terminals[0]] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return std::all_of(terminals.begin(), terminals.end(),
                       [&](int t) { return seen[t]; });
}

}  // namespace

TEST_CASE("adjacency views") {
    AdjGraph a = AdjGraph::from(make_cycle4());
    CHECK(a.n == 4);
    CHECK(a.edges.size() == 4);
    CHECK(a.adj[0].size() == 2);
    CHECK(a.weight_of({0, 1}) == Weight(3));

    AdjGraph b = AdjGraph::from_edges(3, {{0, 1, Weight(2)}, {1, 2, Weight(5)}});
    CHECK(b.adj[1].size() == 2);
}

TEST_CASE("subset dynamic program on small graphs") {
    AdjGraph g = AdjGraph::from(make_cycle4());
    SteinerSolution s = dreyfus_wagner(g, {0, 2});
    CHECK(s.feasible);
    CHECK(s.weight == Weight(3));
    CHECK(s.edges == std::vector<int>{0, 1});

    SteinerSolution one = dreyfus_wagner(g, {3});
    CHECK(one.feasible);
    CHECK(one.weight == Weight(0));
    CHECK(one.edges.empty());

    SteinerSolution none = dreyfus_wagner(g, {});
    CHECK(none.feasible);
    CHECK(none.weight == Weight(0));

    AdjGraph apart = AdjGraph::from_edges(4, {{0, 1, Weight(1)}, {2, 3, Weight(1)}});
    CHECK(!dreyfus_wagner(apart, {0, 3}).feasible);
}

TEST_CASE("terminal cap and witness flag") {
    AdjGraph g = AdjGraph::from(make_cycle4());
    OracleConfig strict;
    strict.max_terminals = 1;
    CHECK_THROWS_AS(dreyfus_wagner(g, {0, 2}, strict), GraphError);

    OracleConfig quiet;
    quiet.want_witness = false;
    SteinerSolution s = dreyfus_wagner(g, {0, 2}, quiet);
    CHECK(s.feasible);
    CHECK(s.weight == Weight(3));
    CHECK(s.edges.empty());
}

TEST_CASE("dynamic program agrees with exhaustive search on random graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        TinyGraph tg = random_tiny_graph(seed);
        AdjGraph g = AdjGraph::from_edges(tg.n, tg.edges);
        SteinerSolution dw = dreyfus_wagner(g, tg.terminals);
        SteinerSolution ex = exhaustive_min_steiner(g, tg.terminals);
        REQUIRE(dw.feasible == ex.feasible);
        if (dw.feasible) {
            REQUIRE(dw.weight == ex.weight);
            CHECK(connects(g, dw.edges, tg.terminals));
            CHECK(g.weight_of(dw.edges) == dw.weight);
        }
    }
}

TEST_CASE("parallel table equals the serial one") {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        TinyGraph tg = random_tiny_graph(seed);
        AdjGraph g = AdjGraph::from_edges(tg.n, tg.edges);
        OracleConfig par;
        par.threads = 4;
        SteinerSolution a = dreyfus_wagner(g, tg.terminals);
        SteinerSolution b = dreyfus_wagner(g, tg.terminals, par);
        CHECK(a.feasible == b.feasible);
        CHECK(a.weight == b.weight);
        CHECK(a.edges == b.edges);
    }
}

TEST_CASE("arbitrary-precision weights survive the table") {
    Weight big = weight_pow(Weight(10), 30);
    AdjGraph g = AdjGraph::from_edges(
        3, {{0, 1, big}, {1, 2, big}, {0, 2, 3 * big - 1}});
    SteinerSolution s = dreyfus_wagner(g, {0, 2});
    CHECK(s.weight == 2 * big);
    SteinerSolution e = exhaustive_min_steiner(g, {0, 2});
    CHECK(e.weight == s.weight);
}

TEST_CASE("exhaustive oracle rejects large graphs") {
    std::vector<Edge> edges;
    for (int i = 0; i < 25; ++i) edges.push_back({i, i + 1, Weight(1)});
    AdjGraph g = AdjGraph::from_edges(26, std::move(edges));
    CHECK_THROWS_AS(exhaustive_min_steiner(g, {0, 25}), GraphError);
}

TEST_CASE("field run answers every extra vertex at once") {
    PlanarGraph g = make_grid3();
    AdjGraph a = AdjGraph::from(g);
    std::vector<int> T{0, 8};
    SteinerField field = dreyfus_wagner_field(a, T);
    for (int v = 0; v < a.n; ++v) {
        REQUIRE(field.reachable[v]);
        std::vector<int> with = T;
        if (std::find(with.begin(), with.end(), v) == with.end()) with.push_back(v);
        SteinerSolution direct = dreyfus_wagner(a, with);
        CHECK(field.weight[v] == direct.weight);
    }
}

TEST_CASE("one-face dynamic program matches the general one") {
    PlanarGraph g = make_grid3();
    int outer = -1;
    for (size_t f = 0; f < g.faces().size(); ++f)
        if (g.faces()[f].vertex_set.size() == 8) outer = static_cast<int>(f);
    REQUIRE(outer >= 0);

    std::vector<int> T{0, 2, 8, 6};
    SteinerSolution of = one_face_steiner(g, T, outer);
    SteinerSolution dw = dreyfus_wagner(AdjGraph::from(g), T);
    CHECK(of.feasible);
    CHECK(of.weight == dw.weight);

    // terminal off the face walk is rejected
    CHECK_THROWS_AS(one_face_steiner(g, {0, 4}, outer), GraphError);
}

TEST_CASE("one-face dynamic program on the flower carpel") {
    FlowerGadget f = build_flower(4, Weight(1));
    SteinerSolution of = one_face_steiner(f.graph, f.terminals, f.carpel_face);
    SteinerSolution dw = dreyfus_wagner(AdjGraph::from(f.graph), f.terminals);
    CHECK(of.weight == dw.weight);
}

TEST_CASE("portal-anchored forests") {
    FlowerGadget f = build_flower(4, Weight(1));
    SteinerSolution s = portal_anchored_forest(f.graph, f.terminals, f.portals);
    CHECK(s.feasible);
    CHECK(s.weight == Weight(4));
    CHECK(portal_anchored_forest_min(f.graph, f.terminals, f.portals) == Weight(4));
    CHECK(f.graph.weight_of_edges(s.edges) == s.weight);

    // anchoring at a single portal degenerates to a Steiner tree through it
    PlanarGraph g = make_cycle4();
    SteinerSolution t = portal_anchored_forest(g, {1}, {3});
    SteinerSolution dw = dreyfus_wagner(AdjGraph::from(g), {1, 3});
    CHECK(t.weight == dw.weight);
}

TEST_CASE("prune_to_tree removes cycles and stray leaves") {
    AdjGraph g = AdjGraph::from(make_cycle4());
    std::vector<int> pruned = prune_to_tree(g, {0, 1, 2, 3}, {0, 2});
    CHECK(pruned == std::vector<int>{0, 1});

    std::vector<int> keep_all = prune_to_tree(g, {0, 1}, {0, 1, 2});
    CHECK(keep_all == std::vector<int>{0, 1});
}

TEST_CASE("solution ordering prefers feasibility, weight, then edges") {
    SteinerSolution bad = SteinerSolution::infeasible_solution();
    SteinerSolution good = SteinerSolution::empty_solution();
    CHECK(solution_less(good, bad));
    CHECK(!solution_less(bad, good));

    SteinerSolution a = good, b = good;
    a.weight = 1;
    a.edges = {0};
    b.weight = 2;
    b.edges = {1};
    CHECK(solution_less(a, b));
    b.weight = 1;
    b.edges = {0, 1};
    CHECK(solution_less(a, b));
}
