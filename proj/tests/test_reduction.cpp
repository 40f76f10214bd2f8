#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pst/oracles.hpp"
#include "pst/reduction.hpp"

using namespace pst;

namespace {

GridTilingInstance all_cells_same(int n, int k, std::set<std::pair<int, int>> pairs) {
    GridTilingInstance gt;
    gt.n = n;
    gt.k = k;
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b) gt.cells[{a, b}] = pairs;
    return gt;
}

}  // namespace

TEST_CASE("grid tiling json round trip") {
    GridTilingInstance gt = all_cells_same(2, 2, {{1, 1}, {2, 2}});
    gt.cells[{1, 2}] = {{2, 1}};
    std::string text = grid_tiling_to_json(gt);
    GridTilingInstance back = grid_tiling_from_json(text);
    CHECK(back.n == 2);
    CHECK(back.k == 2);
    CHECK(back.cells == gt.cells);

    CHECK_THROWS_AS(grid_tiling_from_json("{}"), ReductionError);
    CHECK_THROWS_AS(grid_tiling_from_json("{\"n\":2,\"k\":2,\"cells\":{}}"),
                    ReductionError);
    // out-of-range pair
    CHECK_THROWS_AS(
        grid_tiling_from_json(
            "{\"n\":2,\"k\":1,\"cells\":{\"1,1\":[[3,1]]}}"),
        ReductionError);
}

TEST_CASE("brute force grid tiling") {
    GridTilingInstance sat = all_cells_same(2, 2, {{1, 1}});
    auto sol = solve_grid_tiling_bruteforce(sat);
    REQUIRE(sol.has_value());
    CHECK(sol->x == std::vector<int>{1, 1});
    CHECK(sol->y == std::vector<int>{1, 1});

    GridTilingInstance unsat = sat;
    unsat.cells[{1, 2}] = {{2, 2}};
    CHECK(!solve_grid_tiling_bruteforce(unsat).has_value());

    GridTilingInstance big = all_cells_same(4, 2, {{1, 1}});
    CHECK_THROWS_AS(solve_grid_tiling_bruteforce(big), ReductionError);
}

TEST_CASE("constants follow the padded side") {
    ReductionConstants c = reduction_constants(2, 2);
    CHECK(c.n == 2);
    CHECK(c.N == 4);
    CHECK(c.L == 2);
    CHECK(c.t == 4);
    CHECK(c.base == Weight(10 * 2 * 2 * 4 * 2));
    CHECK(c.powers.size() == 8);
    CHECK(c.powers[0] == Weight(1));
    CHECK(c.powers[7] == weight_pow(c.base, 7));

    // non-power-of-two sides are padded up
    ReductionConstants c3 = reduction_constants(3, 2);
    CHECK(c3.n == 4);
    ReductionConstants c1 = reduction_constants(1, 1);
    CHECK(c1.n == 2);
}

TEST_CASE("built instance shape at the smallest size") {
    GridTilingInstance gt = all_cells_same(2, 2, {{1, 1}});
    ReductionOutput out = build_reduction(gt);
    CHECK(out.graph.n == 475);
    CHECK(out.graph.edges.size() == 584);
    CHECK(out.graph.faces().size() == 111);
    CHECK(out.graph.connected());
    CHECK(out.terminals.size() == 15);
    CHECK(out.terminal_faces.size() == 3);
    CHECK(out.constants.base == Weight(320));

    Weight M = out.constants.base;
    Weight expect = Weight(32) * weight_pow(M, 7) + Weight(12) * weight_pow(M, 6) +
                    Weight(16) * weight_pow(M, 5) + Weight(48) * weight_pow(M, 4) +
                    Weight(32) * weight_pow(M, 3) + Weight(8) * weight_pow(M, 2);
    CHECK(out.budget == expect);
    CHECK(weight_to_string(out.budget) == "11008055371105075200");

    // every terminal face carries terminals, none are duplicated
    std::set<int> seen;
    for (int t : out.terminals) CHECK(seen.insert(t).second);
    for (int f : out.terminal_faces) {
        bool carries = false;
        for (int t : out.terminals)
            if (out.graph.faces()[f].has_vertex(t)) carries = true;
        CHECK(carries);
    }
}

TEST_CASE("instance sizes grow with the grid") {
    GridTilingInstance g23 = all_cells_same(2, 3, {{1, 1}});
    ReductionOutput o23 = build_reduction(g23);
    CHECK(o23.graph.n == 1078);
    CHECK(o23.terminals.size() == 34);
    CHECK(o23.terminal_faces.size() == 7);

    GridTilingInstance g42 = all_cells_same(4, 2, {{1, 1}});
    CHECK(build_reduction(g42).graph.n == 9551);

    GridTilingInstance g11 = all_cells_same(1, 1, {{1, 1}});
    ReductionOutput o11 = build_reduction(g11);
    CHECK(o11.constants.n == 2);
    CHECK(o11.graph.n == 116);
    CHECK(o11.terminals.size() == 4);
    CHECK(o11.terminal_faces.size() == 1);
}

TEST_CASE("unit subdivision preserves faces and totals") {
    GraphBuilder gb;
    gb.add_vertices(3);
    gb.add_edge(0, 1, Weight(3));
    gb.add_edge(1, 2, Weight(2));
    gb.add_edge(2, 0, Weight(1));
    PlanarGraph g = gb.build();

    PlanarGraph u = subdivide_to_unit_weights(g, Weight(100));
    CHECK(u.n == 6);
    CHECK(u.edges.size() == 6);
    CHECK(u.faces().size() == g.faces().size());
    CHECK(u.total_weight() == g.total_weight());
    for (const Edge& e : u.edges) CHECK(e.w == Weight(1));

    CHECK_THROWS_AS(subdivide_to_unit_weights(g, Weight(5)), ReductionError);
}

TEST_CASE("subdivision preserves the Steiner optimum") {
    GraphBuilder gb;
    gb.add_vertices(4);
    gb.add_edge(0, 1, Weight(2));
    gb.add_edge(1, 2, Weight(3));
    gb.add_edge(2, 3, Weight(4));
    gb.add_edge(3, 0, Weight(5));
    PlanarGraph g = gb.build();
    PlanarGraph u = subdivide_to_unit_weights(g, Weight(50));

    SteinerSolution a = dreyfus_wagner(AdjGraph::from(g), {0, 2});
    SteinerSolution b = dreyfus_wagner(AdjGraph::from(u), {0, 2});
    CHECK(a.weight == b.weight);
    CHECK(a.weight == Weight(5));
}

TEST_CASE("end-to-end classification at the smallest size") {
    GridTilingInstance sat = all_cells_same(2, 2, {{1, 1}});
    ReductionCheckReport rep = check_reduction_instance(sat, 4);
    CHECK(rep.ok);
    CHECK(rep.sat_expected);
    CHECK(rep.sat_observed);
    CHECK(rep.feasible);
    CHECK(rep.never_below_budget);
    CHECK(rep.optimum == rep.budget);
    CHECK(rep.terminal_count == 15);

    GridTilingInstance unsat = sat;
    unsat.cells[{1, 2}] = {{2, 2}};
    ReductionCheckReport urep = check_reduction_instance(unsat, 4);
    CHECK(urep.ok);
    CHECK(!urep.sat_expected);
    CHECK(!urep.sat_observed);
    CHECK(urep.optimum > urep.budget);

    // the exact range refuses k = 3 (too many terminals)
    GridTilingInstance wide = all_cells_same(2, 3, {{1, 1}});
    CHECK_THROWS_AS(check_reduction_instance(wide, 1), ReductionError);
}
