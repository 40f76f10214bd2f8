#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pst/graph.hpp"

using namespace pst;

namespace {

PlanarGraph make_cycle4() {
    GraphBuilder b;
    b.add_vertices(4);
    int e01 = b.add_edge(0, 1, Weight(1));
    int e12 = b.add_edge(1, 2, Weight(2));
    int e23 = b.add_edge(2, 3, Weight(3));
    int e30 = b.add_edge(3, 0, Weight(4));
    b.set_rotation_edges(0, {e01, e30});
    b.set_rotation_edges(1, {e12, e01});
    b.set_rotation_edges(2, {e23, e12});
    b.set_rotation_edges(3, {e30, e23});
    return b.build();
}

PlanarGraph make_unit_square() {
    GraphBuilder b;
    b.add_vertices(4);
    b.add_edge(0, 1, Weight(1));
    b.add_edge(1, 2, Weight(1));
    b.add_edge(2, 3, Weight(1));
    b.add_edge(3, 0, Weight(1));
    return b.build();
}

}  // namespace

TEST_CASE("cycle embedding and accessors") {
    PlanarGraph g = make_cycle4();
    CHECK(g.n == 4);
    CHECK(g.edges.size() == 4);
    CHECK(g.faces().size() == 2);
    CHECK(g.connected());
    CHECK(g.components() == 1);
    CHECK(g.total_weight() == Weight(10));
    CHECK(g.weight_of_edges({0, 1}) == Weight(3));
    CHECK(g.weight_of_edges({}) == Weight(0));
    for (int v = 0; v < 4; ++v) CHECK(g.degree(v) == 2);

    for (const Face& f : g.faces()) {
        CHECK(f.vertices.size() == 4);
        CHECK(f.edge_set.size() == 4);
        CHECK(f.has_vertex(0));
        CHECK(f.has_edge(2));
        CHECK(!f.has_vertex(7));
        // the stored walk starts at its smallest end
        CHECK(*std::min_element(f.ends.begin(), f.ends.end()) == f.ends[0]);
    }

    // end arithmetic
    CHECK(g.edge_of(5) == 2);
    CHECK(g.twin(4) == 5);
    CHECK(g.tail_of(2) == 1);
    CHECK(g.head_of(2) == 2);
    CHECK(g.end_count() == 8);
    CHECK(g.face_of_end(0) >= 0);
    CHECK(g.faces_at_vertex(0).size() == 2);
}

TEST_CASE("builder defaults rotation to insertion order") {
    PlanarGraph g = make_unit_square();
    CHECK(g.faces().size() == 2);
    CHECK(g.rotation[0] == std::vector<int>{0, 7});
    CHECK(g.rotation[1] == std::vector<int>{1, 2});
}

TEST_CASE("parallel edges are allowed, self-loops are not") {
    GraphBuilder b;
    b.add_vertices(2);
    b.add_edge(0, 1, Weight(1));
    b.add_edge(0, 1, Weight(2));
    PlanarGraph g = b.build();
    CHECK(g.faces().size() == 2);

    GraphBuilder loop;
    loop.add_vertex();
    loop.add_edge(0, 0, Weight(1));
    CHECK_THROWS_AS(loop.build(), GraphError);
}

TEST_CASE("rotation system must satisfy the Euler relation") {
    // theta graph: three parallel edges; same rotation order on both sides
    // closes into one face only, which is not a plane embedding
    std::vector<Edge> edges{{0, 1, Weight(1)}, {0, 1, Weight(1)}, {0, 1, Weight(1)}};
    CHECK_NOTHROW(build_graph(2, edges, {{0, 2, 4}, {5, 3, 1}}));
    CHECK_THROWS_AS(build_graph(2, edges, {{0, 2, 4}, {1, 3, 5}}), GraphError);
}

TEST_CASE("build_graph validates the rotation contents") {
    std::vector<Edge> edges{{0, 1, Weight(1)}};
    // an end listed at the wrong vertex
    CHECK_THROWS_AS(build_graph(2, edges, {{1}, {0}}), GraphError);
    // a missing end
    CHECK_THROWS_AS(build_graph(2, edges, {{0}, {}}), GraphError);
    // a duplicated end
    CHECK_THROWS_AS(build_graph(2, edges, {{0, 0}, {1}}), GraphError);
    // negative weight
    std::vector<Edge> neg{{0, 1, Weight(-3)}};
    CHECK_THROWS_AS(build_graph(2, neg, {{0}, {1}}), GraphError);
}

TEST_CASE("shortest path picks minimum weight, then lexicographic order") {
    PlanarGraph g = make_cycle4();
    PathResult r = shortest_path(g, 0, 2);
    CHECK(r.reachable);
    CHECK(r.dist == Weight(3));
    CHECK(r.vertices == std::vector<int>{0, 1, 2});
    CHECK(r.edges == std::vector<int>{0, 1});

    PlanarGraph sq = make_unit_square();
    PathResult tie = shortest_path(sq, 0, 2);
    CHECK(tie.dist == Weight(2));
    CHECK(tie.vertices == std::vector<int>{0, 1, 2});

    PathResult self = shortest_path(g, 1, 1);
    CHECK(self.reachable);
    CHECK(self.dist == Weight(0));
    CHECK(self.vertices == std::vector<int>{1});
    CHECK(self.edges.empty());
}

TEST_CASE("parallel ties pick the smaller edge id") {
    GraphBuilder b;
    b.add_vertices(2);
    b.add_edge(0, 1, Weight(5));
    b.add_edge(0, 1, Weight(5));
    PlanarGraph g = b.build();
    PathResult r = shortest_path(g, 0, 1);
    CHECK(r.dist == Weight(5));
    CHECK(r.edges == std::vector<int>{0});
}

TEST_CASE("reachability and multi-source distances") {
    GraphBuilder b;
    b.add_vertices(5);
    b.add_edge(0, 1, Weight(1));
    b.add_edge(1, 2, Weight(2));
    b.add_edge(3, 4, Weight(7));
    PlanarGraph g = b.build();
    CHECK(!g.connected());
    CHECK(g.components() == 2);

    std::vector<bool> reach = reach_mask(g, {0});
    CHECK(reach == std::vector<bool>{true, true, true, false, false});

    PathResult r = shortest_path(g, 0, 4);
    CHECK(!r.reachable);

    std::vector<bool> hit;
    std::vector<Weight> d = dijkstra_dist(g, {0, 2}, &hit);
    CHECK(d[0] == Weight(0));
    CHECK(d[1] == Weight(1));
    CHECK(d[2] == Weight(0));
    CHECK(!hit[3]);
    CHECK(!hit[4]);

    std::vector<Weight> d2 = dijkstra_dist(make_cycle4(), {0, 2});
    CHECK(d2[1] == Weight(1));
    CHECK(d2[3] == Weight(3));
}
