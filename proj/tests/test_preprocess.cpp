#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pst/graph.hpp"
#include "pst/oracles.hpp"
#include "pst/preprocess.hpp"
#include "pst/random_planar.hpp"

using namespace pst;

namespace {

PlanarGraph pendant_triangle() {
    GraphBuilder b;
    b.add_vertices(4);
    b.add_edge(0, 1, Weight(5));
    b.add_edge(1, 2, Weight(7));
    b.add_edge(2, 0, Weight(9));
    b.add_edge(0, 3, Weight(4));
    b.set_rotation_edges(0, {0, 2, 3});
    b.set_rotation_edges(1, {0, 1});
    b.set_rotation_edges(2, {1, 2});
    b.set_rotation_edges(3, {3});
    return b.build();
}

PlanarGraph bowtie() {
    GraphBuilder b;
    b.add_vertices(5);
    b.add_edge(0, 1, Weight(1));
    b.add_edge(1, 2, Weight(1));
    b.add_edge(2, 0, Weight(1));
    b.add_edge(0, 3, Weight(1));
    b.add_edge(3, 4, Weight(1));
    b.add_edge(4, 0, Weight(1));
    b.set_rotation_edges(0, {0, 2, 3, 5});
    b.set_rotation_edges(1, {0, 1});
    b.set_rotation_edges(2, {1, 2});
    b.set_rotation_edges(3, {3, 4});
    b.set_rotation_edges(4, {4, 5});
    return b.build();
}

}  // namespace

TEST_CASE("bridge and biconnectivity helpers") {
    PlanarGraph g = pendant_triangle();
    CHECK(find_bridges(g) == std::vector<int>{3});
    CHECK(!is_biconnected(g));

    GraphBuilder b;
    b.add_vertices(3);
    b.add_edge(0, 1, Weight(1));
    b.add_edge(1, 2, Weight(1));
    b.add_edge(2, 0, Weight(1));
    PlanarGraph tri = b.build();
    CHECK(find_bridges(tri).empty());
    CHECK(is_biconnected(tri));
}

TEST_CASE("pendant path gets a heavy twin") {
    PlanarGraph g = pendant_triangle();
    REQUIRE(g.faces().size() == 2);
    int outer = -1, tri = -1;
    for (size_t i = 0; i < g.faces().size(); ++i)
        (g.faces()[i].has_edge(3) ? outer : tri) = static_cast<int>(i);
    REQUIRE(outer >= 0);
    REQUIRE(tri >= 0);

    auto r = make_subcubic_2connected(g, {3, 1}, {outer, tri}, Weight(9));
    CHECK(r.graph.n == 6);
    CHECK(r.graph.edges.size() == 7);
    CHECK(r.graph.faces().size() == 3);
    CHECK(is_biconnected(r.graph));
    CHECK(find_bridges(r.graph).empty());
    for (int v = 0; v < r.graph.n; ++v) CHECK(r.graph.degree(v) <= 3);

    // tracked faces still carry their terminals
    CHECK(r.graph.faces()[r.terminal_faces[0]].has_vertex(3));
    CHECK(r.graph.faces()[r.terminal_faces[1]].has_vertex(1));

    // solutions lift back to source edges, twins fold onto the source path
    CHECK(lift_solution(r.back_map, {3, 4, 0}) == std::vector<int>{0, 3});
    CHECK(lift_solution(r.back_map, {0, 4, 6, 5}) == std::vector<int>{0, 3});
}

TEST_CASE("high-degree vertex becomes a zero-weight cycle") {
    PlanarGraph g = bowtie();
    REQUIRE(g.faces().size() == 3);
    int t1 = -1, t2 = -1, outer = -1;
    for (size_t i = 0; i < g.faces().size(); ++i) {
        const Face& f = g.faces()[i];
        if (f.edge_set.size() == 3 && f.has_edge(0))
            t1 = static_cast<int>(i);
        else if (f.edge_set.size() == 3)
            t2 = static_cast<int>(i);
        else
            outer = static_cast<int>(i);
    }
    REQUIRE(t1 >= 0);
    REQUIRE(t2 >= 0);
    REQUIRE(outer >= 0);

    auto r = make_subcubic_2connected(g, {0, 2}, {t1, outer}, Weight(1));
    CHECK(r.graph.n == 8);
    CHECK(r.graph.edges.size() == 10);
    CHECK(r.graph.faces().size() == 4);
    CHECK(is_biconnected(r.graph));
    for (int v = 0; v < r.graph.n; ++v) CHECK(r.graph.degree(v) <= 3);

    int center = r.back_map.terminal_relocation.at(0);
    CHECK(r.graph.faces()[r.terminal_faces[0]].has_vertex(center));
    CHECK(r.graph.faces()[r.terminal_faces[1]].has_vertex(
        r.back_map.terminal_relocation.at(2)));
}

TEST_CASE("back map survives a json round trip") {
    PlanarGraph g = bowtie();
    int t1 = -1, outer = -1;
    for (size_t i = 0; i < g.faces().size(); ++i) {
        const Face& f = g.faces()[i];
        if (f.edge_set.size() == 3 && f.has_edge(0)) t1 = static_cast<int>(i);
        if (f.edge_set.size() > 3) outer = static_cast<int>(i);
    }
    auto r = make_subcubic_2connected(g, {0, 2}, {t1, outer}, Weight(1));
    BackMap bm2 = backmap_from_json(backmap_to_json(r.back_map));
    CHECK(bm2.new_n == r.back_map.new_n);
    CHECK(bm2.orig_n == r.back_map.orig_n);
    CHECK(bm2.path_twins == r.back_map.path_twins);
    CHECK(bm2.cycle_groups == r.back_map.cycle_groups);
    CHECK(bm2.connectors == r.back_map.connectors);
    CHECK(bm2.terminal_relocation == r.back_map.terminal_relocation);
    CHECK(bm2.vertex_to_original == r.back_map.vertex_to_original);
}

TEST_CASE("rejects disconnected inputs and stray terminals") {
    GraphBuilder b;
    b.add_vertices(4);
    b.add_edge(0, 1, Weight(1));
    b.add_edge(2, 3, Weight(1));
    PlanarGraph g = b.build();
    CHECK_THROWS_AS(make_subcubic_2connected(g, {0, 2}, {0}, Weight(1)),
                    PreprocessError);

    PlanarGraph tri = pendant_triangle();
    int tri_face = -1;
    for (size_t i = 0; i < tri.faces().size(); ++i)
        if (!tri.faces()[i].has_edge(3)) tri_face = static_cast<int>(i);
    // terminal 3 is not on the triangle face
    CHECK_THROWS_AS(make_subcubic_2connected(tri, {3, 1}, {tri_face}, Weight(9)),
                    PreprocessError);
}

TEST_CASE("transform preserves the Steiner optimum on random instances") {
    int done = 0;
    for (std::uint64_t seed = 0; done < 25; ++seed) {
        PlanarInstance pi = random_grid_instance(seed, 14, 4, 2);
        if (pi.graph.n > 12) continue;
        ++done;

        Weight wcap(1);
        for (const Edge& e : pi.graph.edges) wcap = std::max(wcap, e.w);
        auto r = make_subcubic_2connected(pi.graph, pi.terminals, pi.terminal_faces, wcap);

        CHECK(is_biconnected(r.graph));
        CHECK(find_bridges(r.graph).empty());
        for (int v = 0; v < r.graph.n; ++v) CHECK(r.graph.degree(v) <= 3);
        CHECK(r.terminal_faces.size() == pi.terminal_faces.size());

        SteinerSolution before = dreyfus_wagner(AdjGraph::from(pi.graph), pi.terminals);
        SteinerSolution after = dreyfus_wagner(AdjGraph::from(r.graph), r.terminals);
        REQUIRE(before.feasible);
        REQUIRE(after.feasible);
        CHECK(before.weight == after.weight);

        std::vector<int> lifted = lift_solution(r.back_map, after.edges);
        CHECK(pi.graph.weight_of_edges(lifted) <= after.weight);
        CHECK(pi.graph.weight_of_edges(lifted) == before.weight);
    }
}
