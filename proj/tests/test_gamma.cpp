#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pst/gamma.hpp"
#include "pst/oracles.hpp"

using namespace pst;

TEST_CASE("interval arithmetic") {
    CHECK(floor_log2(1) == 0);
    CHECK(floor_log2(2) == 1);
    CHECK(floor_log2(3) == 1);
    CHECK(floor_log2(8) == 3);
    CHECK(floor_log2(9) == 3);

    CHECK(IntervalVertex{2, 5, 0}.size() == 4);
    CHECK(IntervalVertex{3, 3, 0}.size() == 1);
    CHECK(IntervalVertex{6, 1, 8}.size() == 4);  // wraps past 7

    CHECK(interval_lca({0, 1, 0}, {3, 3, 0}) == IntervalVertex{0, 3, 0});
    CHECK(interval_lca({2, 4, 0}, {3, 3, 0}) == IntervalVertex{2, 4, 0});

    CHECK(interval_to_string({2, 5, 0}) == "[2,5]");
}

TEST_CASE("monotone path weights count size levels") {
    // one step out of a singleton costs the full scale
    CHECK(monotone_path_weight(1, 2, Weight(4)) == Weight(4));
    // sizes 1 -> 4 cross levels of weight 1, 1/2, 1/2 at scale 1
    CHECK(monotone_path_weight(1, 4, Weight(2)) == Weight(4));
    CHECK(monotone_path_weight(4, 1, Weight(2)) == Weight(4));
    CHECK(monotone_path_weight(3, 3, Weight(2)) == Weight(0));
    // a fractional step is rejected
    CHECK_THROWS_AS(monotone_path_weight(1, 4, Weight(1)), GammaError);
}

TEST_CASE("closed-form metric agrees with itself under symmetry") {
    Weight s(4);
    CHECK(interval_metric({0, 0, 0}, {0, 3, 0}, s) ==
          monotone_path_weight(1, 4, s));
    CHECK(interval_metric({0, 0, 0}, {1, 1, 0}, s) == Weight(2) * s);
    CHECK(interval_metric({2, 3, 0}, {5, 5, 0}, s) ==
          interval_metric({5, 5, 0}, {2, 3, 0}, s));
    CHECK(interval_metric({1, 2, 0}, {1, 2, 0}, s) == Weight(0));
}

TEST_CASE("window shape and edge weights") {
    GammaWindow w = gamma_window(0, 9, 7, Weight(4));
    CHECK(w.graph.n == 49);
    CHECK(w.graph.edges.size() == 78);

    int s0 = w.vertex_of(0, 0);
    int s01 = w.vertex_of(0, 1);
    int s02 = w.vertex_of(0, 2);
    CHECK(s0 == 0);
    CHECK(s01 >= 10);
    CHECK(w.vertex_of(3, 9) >= 0);
    CHECK(w.vertex_of(3, 2) == -1);
    CHECK(w.vertex_of(0, 7) == -1);  // size 8 exceeds the cap

    int e = w.edge_between(s0, s01);
    REQUIRE(e >= 0);
    CHECK(w.graph.edges[e].w == Weight(4));
    int e2 = w.edge_between(s01, s02);
    REQUIRE(e2 >= 0);
    CHECK(w.graph.edges[e2].w == Weight(2));
    CHECK(w.edge_between(s0, s02) == -1);

    CHECK(interval_distance(w, {0, 0, 0}, {1, 1, 0}) == Weight(8));
    CHECK(interval_distance(w, {0, 1, 0}, {0, 3, 0}) == Weight(4));
    CHECK(interval_distance(w, {2, 3, 0}, {5, 5, 0}) ==
          interval_metric({2, 3, 0}, {5, 5, 0}, Weight(4)));
}

TEST_CASE("window guards") {
    GammaWindow tiny = gamma_window(0, 3, 1, Weight(1));
    CHECK(tiny.graph.n == 4);
    CHECK(tiny.graph.edges.empty());

    // scale must be a power of two keeping all weights integral
    CHECK_THROWS_AS(gamma_window(0, 9, 7, Weight(2)), GammaError);
    CHECK_THROWS_AS(gamma_window(0, 9, 7, Weight(3)), GammaError);
    CHECK_THROWS_AS(gamma_window(5, 4, 1, Weight(1)), GammaError);
}

TEST_CASE("dyadic trees join halves at fixed cost") {
    GammaWindow w = gamma_window(0, 9, 10, Weight(16));
    SteinerSolution t8 = dyadic_tree(w, 0, 8);
    CHECK(t8.feasible);
    CHECK(t8.weight == Weight(14 * 16));
    CHECK(w.graph.weight_of_edges(t8.edges) == t8.weight);

    SteinerSolution t1 = dyadic_tree(w, 3, 1);
    CHECK(t1.edges.empty());
    CHECK(t1.weight == Weight(0));

    SteinerSolution t2 = dyadic_tree(w, 4, 2);
    CHECK(t2.weight == Weight(2 * 16));
}

TEST_CASE("flower shapes") {
    FlowerGadget f4 = build_flower(4, Weight(1));
    CHECK(f4.graph.n == 8);
    CHECK(f4.graph.edges.size() == 8);
    CHECK(f4.carpel_face != f4.outer_face);
    CHECK(f4.terminals.size() == 4);
    CHECK(f4.portals.size() == 4);
    for (int a = 0; a < 4; ++a) {
        CHECK(f4.graph.faces()[f4.carpel_face].has_vertex(f4.terminals[a]));
        CHECK(f4.graph.faces()[f4.outer_face].has_vertex(f4.portals[a]));
    }

    FlowerGadget f8 = build_flower(8, Weight(2));
    CHECK(f8.graph.n == 32);
    CHECK(f8.graph.edges.size() == 48);
    CHECK(f8.graph.faces().size() == 18);

    // the edge below a portal covers half the ring at half a step
    FlowerGadget f8s = build_flower(8, Weight(8));
    int p0 = f8s.portals[0];
    int below = f8s.vertex_of(0, 2);
    int pe = f8s.edge_between(p0, below);
    REQUIRE(pe >= 0);
    CHECK(f8s.graph.edges[pe].w == Weight(4));

    CHECK_THROWS_AS(build_flower(6, Weight(2)), GammaError);
    CHECK_THROWS_AS(build_flower(8, Weight(1)), GammaError);
}

TEST_CASE("canonical forests hit the anchored minimum") {
    FlowerGadget f4 = build_flower(4, Weight(1));
    SteinerSolution c = canonical_forest(f4, 1);
    CHECK(c.weight == Weight(4));
    CHECK(c.edges.size() == 4);
    CHECK(c.weight == portal_anchored_forest_min(f4.graph, f4.terminals, f4.portals));

    FlowerGadget f8 = build_flower(8, Weight(2));
    for (int root = 1; root <= 4; ++root) {
        SteinerSolution cf = canonical_forest(f8, root);
        CHECK(cf.weight == Weight(2 * 8 - 4) * Weight(2));
    }
}

TEST_CASE("fan lower bound sweeps") {
    TriangleReport r0 = verify_triangle_lemma(0, -16, 16, 33, Weight(32));
    CHECK(r0.ok);
    CHECK(r0.bound_holds);
    CHECK(r0.equality_count == r0.vertices_checked);
    CHECK(r0.tip_equality);
    CHECK(r0.tip_weight == Weight(0));

    TriangleReport r3 = verify_triangle_lemma(3, -16, 19, 36, Weight(32));
    CHECK(r3.ok);
    CHECK(r3.bound_holds);
    CHECK(r3.tip_equality);
    CHECK(r3.tip_weight == Weight(6 * 32));
    CHECK(r3.vertices_checked == 666);

    TriangleReport r7 = verify_triangle_lemma(7, 0, 7, 8, Weight(4), 2);
    CHECK(r7.ok);
    CHECK(r7.tip_equality);
    CHECK(r7.tip_weight == Weight(14 * 4));

    CHECK_THROWS_AS(verify_triangle_lemma(8, 0, 8, 9, Weight(4)), GammaError);
}

TEST_CASE("flower minimum forest certificates") {
    FlowerReport v4 = verify_flower_theorem(4, 2);
    CHECK(v4.ok);
    CHECK(v4.anchored_ok);
    CHECK(v4.anchored_min == Weight(4));
    CHECK(v4.anchored_expected == v4.anchored_min);
    CHECK(v4.canonical_ok);
    CHECK(v4.exhaustive_done);
    CHECK(v4.exhaustive_ok);
    CHECK(v4.optima_count == 16);
    CHECK(v4.split_strict_ok);
    CHECK(v4.split_opposite_ok);

    FlowerReport v8 = verify_flower_theorem(8, 4);
    CHECK(v8.ok);
    CHECK(v8.anchored_min == Weight(24));
    CHECK(!v8.exhaustive_done);

    CHECK_THROWS_AS(verify_flower_theorem(16), GammaError);
}
