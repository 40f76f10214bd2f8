#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pst/oracles.hpp"
#include "pst/vgadget.hpp"

using namespace pst;

namespace {

int face_with_all(const PlanarGraph& g, const std::vector<int>& vs) {
    for (size_t f = 0; f < g.faces().size(); ++f) {
        bool all = true;
        for (int v : vs)
            if (!g.faces()[f].has_vertex(v)) {
                all = false;
                break;
            }
        if (all) return static_cast<int>(f);
    }
    return -1;
}

}  // namespace

TEST_CASE("block ports and cheapest connections") {
    Weight M(100);
    Weight m2 = weight_pow(M, 2), m3 = weight_pow(M, 3);
    Weight m4 = weight_pow(M, 4), m5 = weight_pow(M, 5);

    VgGadget g = build_vg(2, {1, 2}, M);
    CHECK(g.graph.n == 9);
    CHECK(g.graph.edges.size() == 9);
    CHECK(g.ports.n_side == 2);
    CHECK(g.ports.y.size() == 2);
    CHECK(g.ports.z.size() == 2);
    CHECK(g.ports.selector_edge.size() == 2);

    // all portals share a face
    std::vector<int> portals = g.ports.y;
    portals.insert(portals.end(), g.ports.z.begin(), g.ports.z.end());
    portals.push_back(g.ports.w);
    CHECK(face_with_all(g.graph, portals) >= 0);

    AdjGraph adj = AdjGraph::from(g.graph);
    SteinerSolution s1 = dreyfus_wagner(adj, {g.ports.y[0], g.ports.z[0], g.ports.w});
    CHECK(s1.feasible);
    CHECK(s1.weight == m5 + m4 + 2 * m3);

    SteinerSolution s2 = dreyfus_wagner(adj, {g.ports.y[1], g.ports.z[1]});
    CHECK(s2.weight == m4 + 2 * m2 + 2 * m3);

    SteinerSolution s3 = dreyfus_wagner(adj, {g.ports.y[0], g.ports.z[1]});
    CHECK(s3.weight == m4 + m2 + m3 + 2 * m3);
}

TEST_CASE("unselected rows have no selector edge") {
    VgGadget g = build_vg(3, {2}, Weight(50));
    CHECK(g.ports.selector_edge.size() == 1);
    CHECK(g.ports.selector_edge.count(2) == 1);
    CHECK(g.ports.v.size() == 3);
    CHECK(g.ports.v[0].size() == 3);
}

TEST_CASE("chain ports") {
    Weight M(100);
    LvgGadget g = build_lvg(2, 2, {{1, 2}, {1, 2}}, M);
    CHECK(g.graph.n == 2 * 9 + 4);
    CHECK(g.ports.p.size() == 2);
    CHECK(g.ports.q.size() == 2);
    CHECK(g.ports.w.size() == 2);
    CHECK(g.ports.blocks.size() == 2);
    CHECK(g.ports.connector_edge.size() == 1);

    Weight m2 = weight_pow(M, 2), m3 = weight_pow(M, 3);
    Weight m4 = weight_pow(M, 4), m5 = weight_pow(M, 5);
    AdjGraph adj = AdjGraph::from(g.graph);
    Weight target = 2 * m5 + 2 * m4 + 2 * m3 + m2;
    SteinerSolution s = dreyfus_wagner(adj, {g.ports.p[0], g.ports.q[0], g.ports.w[0]});
    CHECK(s.feasible);
    CHECK(s.weight == target);

    // mismatched entry and exit rows cost strictly more
    SteinerSolution cross =
        dreyfus_wagner(adj, {g.ports.p[0], g.ports.q[1], g.ports.w[0]});
    CHECK(cross.feasible);
    CHECK(cross.weight > target);
}

TEST_CASE("input guards") {
    CHECK_THROWS_AS(build_vg(2, {1, 2}, Weight(20)), VgadgetError);
    CHECK_THROWS_AS(build_vg(2, {3}, Weight(100)), VgadgetError);
    CHECK_THROWS_AS(build_vg(0, {}, Weight(100)), VgadgetError);
    CHECK_THROWS_AS(build_lvg(2, 2, {{1}}, Weight(100)), VgadgetError);
    CHECK_THROWS_AS(build_lvg(2, 2, {{1}, {2}}, Weight(30)), VgadgetError);
    CHECK_THROWS_AS(verify_gadget_lemmas(5, 1, Weight(1000), 1), VgadgetError);
    CHECK_THROWS_AS(verify_gadget_lemmas(2, 3, Weight(1000), 1), VgadgetError);
}

TEST_CASE("cost lemmas over every selection and portal pair") {
    GadgetLemmaReport rep = verify_gadget_lemmas(2, 2, Weight(100), 4);
    CHECK(rep.ok);
    CHECK(rep.n_side == 2);
    CHECK(rep.levels == 2);
    CHECK(rep.vg_cases == 32);
    CHECK(rep.lvg_cases == 128);
    CHECK(rep.row_path_exact);
    CHECK(rep.apex_lower_bound);
    CHECK(rep.apex_equality);
    CHECK(rep.apex_selector);
    CHECK(rep.chain_lower_bound);
    CHECK(rep.chain_equality);
    CHECK(rep.chain_selector);

    GadgetLemmaReport r31 = verify_gadget_lemmas(3, 1, Weight(50), 4);
    CHECK(r31.ok);
    CHECK(r31.vg_cases > 0);
}
