#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pst/gamma.hpp"
#include "pst/graph.hpp"
#include "pst/json_io.hpp"
#include "pst/noncrossing.hpp"
#include "pst/oracles.hpp"
#include "pst/preprocess.hpp"
#include "pst/random_planar.hpp"
#include "pst/reduction.hpp"
#include "pst/solver.hpp"
#include "pst/vgadget.hpp"
#include "pst/weight.hpp"

namespace {

using nlohmann::json;
using namespace pst;

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kInputError = 2;
constexpr int kInfeasible = 3;

using Clock = std::chrono::steady_clock;

long long ms_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
}

GraphInstance read_instance(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return instance_from_json(json::parse(ss.str()));
    }
    return load_instance(path);
}

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw GraphError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw GraphError("cannot write " + path);
    f << text;
}

void emit_json(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_text(out, j.dump(2) + "\n");
}

json stats_json(const SolverStats& s) {
    return json{{"recursion_depth", s.recursion_depth},
                {"base_case_calls", s.base_case_calls},
                {"separators_tried", s.separators_tried}};
}

json result_json(const Weight& w, std::vector<int> edges, bool certified,
                 const SolverStats& st) {
    std::sort(edges.begin(), edges.end());
    return json{{"weight", weight_to_string(w)},
                {"edges", edges},
                {"optimal_certified", certified},
                {"stats", stats_json(st)}};
}

int face_with_vertices(const PlanarGraph& g, const std::vector<int>& vs) {
    const auto& faces = g.faces();
    for (size_t f = 0; f < faces.size(); ++f) {
        bool all = true;
        for (int v : vs)
            if (!faces[f].has_vertex(v)) {
                all = false;
                break;
            }
        if (all) return int(f);
    }
    throw GraphError("no face contains the requested vertices");
}

// ---- solve / oracle ------------------------------------------------------

struct PipelineOutcome {
    bool feasible = false;
    Weight weight;
    std::vector<int> edges;
    bool certified = false;
    SolverStats stats;
};

PipelineOutcome run_pipeline(const GraphInstance& inst, SolverConfig cfg) {
    PipelineOutcome out;
    if (inst.terminals.size() <= 1) {
        out.feasible = true;
        out.weight = 0;
        out.certified = true;
        return out;
    }
    std::vector<bool> reach = reach_mask(inst.g, {inst.terminals[0]});
    for (int t : inst.terminals)
        if (!reach[size_t(t)]) return out;

    Weight wcap(1);
    for (const Edge& e : inst.g.edges) wcap = std::max(wcap, e.w);
    PreprocessResult pp =
        make_subcubic_2connected(inst.g, inst.terminals, inst.terminal_faces, wcap);
    PbsfInstance pinst{&pp.graph,
                       {pp.terminals[0]},
                       {{pp.terminals[0]}},
                       pp.terminals,
                       pp.terminal_faces};
    SolverResult res = steiner(pinst, cfg);
    if (!res.solution.feasible) return out;
    out.feasible = true;
    out.edges = lift_solution(pp.back_map, res.solution.edges);
    out.weight = inst.g.weight_of_edges(out.edges);
    out.certified = res.optimal_certified;
    out.stats = res.stats;
    return out;
}

SteinerSolution run_oracle_engine(const GraphInstance& inst, const std::string& engine,
                                  int threads) {
    OracleConfig cfg;
    cfg.threads = threads;
    if (engine == "dw") return dreyfus_wagner(AdjGraph::from(inst.g), inst.terminals, cfg);
    if (engine == "exhaustive")
        return exhaustive_min_steiner(AdjGraph::from(inst.g), inst.terminals, cfg);
    if (engine == "oneface") {
        if (inst.terminal_faces.empty())
            throw GraphError("oneface engine needs a declared terminal face");
        return one_face_steiner(inst.g, inst.terminals, inst.terminal_faces[0], cfg);
    }
    throw GraphError("unknown oracle engine: " + engine);
}

// ---- gen -----------------------------------------------------------------

std::string sidecar_path(const std::string& out) {
    const std::string suffix = ".json";
    if (out.size() > suffix.size() &&
        out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
        return out.substr(0, out.size() - suffix.size()) + ".sidecar.json";
    return out + ".sidecar.json";
}

void emit_instance(GraphInstance& inst, const json& meta, const std::string& out,
                   const std::string& dot) {
    inst.meta = meta;
    json j = instance_to_json(inst);
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_text(out, j.dump(2) + "\n");
        write_text(sidecar_path(out), meta.dump(2) + "\n");
    }
    if (!dot.empty()) write_text(dot, to_dot(inst));
}

std::vector<Weight> base_powers(const Weight& M, int up_to) {
    std::vector<Weight> p(size_t(up_to) + 1);
    p[0] = 1;
    for (int i = 1; i <= up_to; ++i) p[size_t(i)] = p[size_t(i) - 1] * M;
    return p;
}

int gen_flower(int t, long scale_in, const std::string& out, const std::string& dot) {
    Weight scale = scale_in > 0 ? Weight(scale_in) : Weight(std::max(1, t / 4));
    FlowerGadget f = build_flower(t, scale);
    GraphInstance inst = make_instance(f.graph, f.terminals, {f.carpel_face});
    json meta{{"kind", "flower"},
              {"t", t},
              {"scale", weight_to_string(f.scale)},
              {"portals", f.portals},
              {"outer_face", f.outer_face},
              {"canonical_forest_weight", weight_to_string(Weight(2 * t - 4) * f.scale)}};
    emit_instance(inst, meta, out, dot);
    return kOk;
}

int gen_vg(int N, std::vector<int> S, long M_in, const std::string& out,
           const std::string& dot) {
    if (S.empty())
        for (int i = 1; i <= N; ++i) S.push_back(i);
    Weight M = M_in > 0 ? Weight(M_in) : Weight(std::max(100, 10 * N + 10));
    VgGadget g = build_vg(N, S, M);
    std::vector<int> terminals{g.ports.y[0], g.ports.z[0], g.ports.w};
    std::sort(terminals.begin(), terminals.end());
    int outer = face_with_vertices(g.graph, {g.ports.y[0], g.ports.w, g.ports.z[0]});
    GraphInstance inst = make_instance(g.graph, terminals, {outer});
    std::vector<int> portals = g.ports.y;
    portals.insert(portals.end(), g.ports.z.begin(), g.ports.z.end());
    portals.push_back(g.ports.w);
    auto pw = base_powers(M, 5);
    json meta{{"kind", "vg"},
              {"N", N},
              {"S", S},
              {"M", weight_to_string(M)},
              {"portals", portals},
              {"apex_target",
               weight_to_string(pw[5] + Weight(N - 1) * pw[4] + Weight(N) * pw[3])}};
    emit_instance(inst, meta, out, dot);
    return kOk;
}

std::vector<std::vector<int>> parse_s_list(const std::string& text, int N, int L) {
    std::vector<std::vector<int>> s_list;
    if (text.empty()) {
        s_list.assign(size_t(L), {});
        for (auto& s : s_list)
            for (int i = 1; i <= N; ++i) s.push_back(i);
        return s_list;
    }
    std::stringstream ss(text);
    std::string level;
    while (std::getline(ss, level, ';')) {
        std::vector<int> s;
        std::stringstream ls(level);
        std::string item;
        while (std::getline(ls, item, ','))
            if (!item.empty()) s.push_back(std::stoi(item));
        s_list.push_back(std::move(s));
    }
    return s_list;
}

int gen_lvg(int N, int L, const std::string& s_text, long M_in, const std::string& out,
            const std::string& dot) {
    std::vector<std::vector<int>> s_list = parse_s_list(s_text, N, L);
    Weight M = M_in > 0 ? Weight(M_in) : Weight(std::max(100, 10 * N * L + 10));
    LvgGadget g = build_lvg(N, L, s_list, M);
    std::vector<int> terminals;
    terminals.insert(terminals.end(), g.ports.p.begin(), g.ports.p.end());
    terminals.insert(terminals.end(), g.ports.w.begin(), g.ports.w.end());
    terminals.insert(terminals.end(), g.ports.q.begin(), g.ports.q.end());
    std::sort(terminals.begin(), terminals.end());
    int outer = face_with_vertices(g.graph, {g.ports.p[0], g.ports.w[0], g.ports.q[0]});
    GraphInstance inst = make_instance(g.graph, terminals, {outer});
    auto pw = base_powers(M, 5);
    Weight chain_target = Weight(L) * pw[5] + Weight(L) * Weight(N - 1) * pw[4] +
                          Weight(N) * pw[3] + pw[2];
    json meta{{"kind", "lvg"},      {"N", N},
              {"L", L},             {"S", s_list},
              {"M", weight_to_string(M)}, {"portals", terminals},
              {"chain_target", weight_to_string(chain_target)}};
    emit_instance(inst, meta, out, dot);
    return kOk;
}

std::vector<int> remap_faces_after_subdivision(const PlanarGraph& orig, const PlanarGraph& sub,
                                               const std::vector<int>& face_ids) {
    std::vector<int> out;
    const auto& ofaces = orig.faces();
    const auto& sfaces = sub.faces();
    for (int fid : face_ids) {
        std::vector<int> key = ofaces[size_t(fid)].vertex_set;
        int found = -1;
        for (size_t f = 0; f < sfaces.size(); ++f) {
            std::vector<int> restricted;
            for (int v : sfaces[f].vertex_set)
                if (v < orig.n) restricted.push_back(v);
            if (restricted == key) {
                if (found >= 0) throw GraphError("ambiguous face after subdivision");
                found = int(f);
            }
        }
        if (found < 0) throw GraphError("face lost after subdivision");
        out.push_back(found);
    }
    return out;
}

int gen_reduction(const std::string& grid_path, bool subdivide, const std::string& out,
                  const std::string& dot) {
    GridTilingInstance gt = grid_tiling_from_json(read_text(grid_path));
    ReductionOutput ro = build_reduction(gt);
    json meta{{"kind", "reduction"},
              {"n", gt.n},
              {"k", gt.k},
              {"padded_n", ro.constants.n},
              {"N", ro.constants.N},
              {"L", ro.constants.L},
              {"t", ro.constants.t},
              {"M", weight_to_string(ro.constants.base)},
              {"budget", weight_to_string(ro.budget)},
              {"terminals", int(ro.terminals.size())},
              {"terminal_faces", int(ro.terminal_faces.size())}};
    if (subdivide) {
        if (ro.graph.total_weight() > Weight(2000000))
            throw GraphError("refusing to lay out more than 2000000 unit edges");
        PlanarGraph unit = subdivide_to_unit_weights(ro.graph, ro.budget);
        std::vector<int> faces =
            remap_faces_after_subdivision(ro.graph, unit, ro.terminal_faces);
        meta["subdivided"] = true;
        GraphInstance inst = make_instance(std::move(unit), ro.terminals, faces);
        emit_instance(inst, meta, out, dot);
        return kOk;
    }
    GraphInstance inst =
        make_instance(std::move(ro.graph), ro.terminals, ro.terminal_faces);
    emit_instance(inst, meta, out, dot);
    return kOk;
}

int gen_random_planar(int n, std::uint64_t seed, const std::string& out,
                      const std::string& dot) {
    PlanarInstance pi = random_grid_instance(seed, n);
    GraphInstance inst =
        make_instance(std::move(pi.graph), pi.terminals, pi.terminal_faces);
    json meta{{"kind", "random-planar"},
              {"n", n},
              {"seed", seed},
              {"vertices", inst.g.n},
              {"edges", int(inst.g.edges.size())}};
    emit_instance(inst, meta, out, dot);
    return kOk;
}

// ---- verify --------------------------------------------------------------

json claim(const std::string& name, const json& expected, const json& observed) {
    return json{{"name", name},
                {"expected", expected},
                {"observed", observed},
                {"pass", expected == observed}};
}

int finish_report(json& report, const std::string& out) {
    bool ok = true;
    for (const auto& c : report["claims"]) ok = ok && c.at("pass").get<bool>();
    report["ok"] = ok;
    emit_json(report, out);
    return ok ? kOk : kVerifyFail;
}

int too_large(const std::string& suite, const std::string& detail, const std::string& out) {
    emit_json(json{{"suite", suite}, {"error", "TooLarge"}, {"detail", detail}}, out);
    return kInputError;
}

int verify_flower_cmd(int t, int threads, const std::string& out) {
    if (t != 4 && t != 8) return too_large("flower", "t must be 4 or 8", out);
    FlowerReport rep = verify_flower_theorem(t, threads);
    json report{{"suite", "flower"},
                {"params", {{"t", t}, {"scale", weight_to_string(rep.scale)}}},
                {"claims", json::array()}};
    auto& cl = report["claims"];
    cl.push_back(claim("anchored_minimum", weight_to_string(rep.anchored_expected),
                       weight_to_string(rep.anchored_min)));
    cl.push_back(claim("canonical_forests_reach_minimum", true, rep.canonical_ok));
    cl.push_back(claim("opposite_anchors_reach_target", true, rep.split_opposite_ok));
    cl.push_back(claim("non_opposite_anchors_strictly_above", true, rep.split_strict_ok));
    if (t == 4) {
        cl.push_back(claim("exhaustive_enumeration_ran", true, rep.exhaustive_done));
        cl.push_back(claim("exhaustive_structure", true, rep.exhaustive_ok));
    }
    cl.push_back(claim("all_checks", true, rep.ok));
    report["observed"] = {{"optima_count", rep.optima_count},
                          {"pairs_checked", rep.pairs_checked}};
    return finish_report(report, out);
}

int verify_triangle_cmd(int ell, int x_lo, int x_hi, int max_size, long scale_in,
                        int threads, const std::string& out) {
    if (ell < 0 || ell > 7) return too_large("triangle", "ell must be in 0..7", out);
    if (x_hi - x_lo > 63 || max_size > 64)
        return too_large("triangle", "window too wide for the sweep", out);
    Weight scale(scale_in);
    TriangleReport rep = verify_triangle_lemma(ell, x_lo, x_hi, max_size, scale, threads);
    json report{{"suite", "triangle"},
                {"params",
                 {{"ell", ell},
                  {"x_lo", x_lo},
                  {"x_hi", x_hi},
                  {"max_size", max_size},
                  {"scale", weight_to_string(scale)}}},
                {"claims", json::array()}};
    auto& cl = report["claims"];
    cl.push_back(claim("lower_bound_every_vertex", true, rep.bound_holds));
    cl.push_back(claim("sweep_sound", true, rep.ok));
    bool tip_is_dyadic = ((ell + 1) & ell) == 0;  // ell + 1 a power of two
    if (tip_is_dyadic) {
        cl.push_back(claim("tip_equality", true, rep.tip_equality));
        cl.push_back(claim("tip_weight", weight_to_string(Weight(2 * ell) * scale),
                           weight_to_string(rep.tip_weight)));
    }
    report["observed"] = {{"vertices_checked", rep.vertices_checked},
                          {"equality_count", rep.equality_count},
                          {"exact_count", rep.exact_count},
                          {"tip_weight", weight_to_string(rep.tip_weight)},
                          {"max_tree_weight", weight_to_string(rep.max_tree_weight)}};
    return finish_report(report, out);
}

json gadget_params(const GadgetLemmaReport& rep) {
    return json{{"N", rep.n_side}, {"L", rep.levels}, {"M", weight_to_string(rep.base)}};
}

int verify_vg_cmd(int N, long M_in, int threads, const std::string& out) {
    if (N < 1 || N > 4) return too_large("vg", "N must be in 1..4", out);
    Weight M = M_in > 0 ? Weight(M_in) : Weight(std::max(100, 10 * N + 10));
    GadgetLemmaReport rep = verify_gadget_lemmas(N, 1, M, threads);
    json report{{"suite", "vg"}, {"params", gadget_params(rep)}, {"claims", json::array()}};
    auto& cl = report["claims"];
    cl.push_back(claim("row_path_minimum_exact", true, rep.row_path_exact));
    cl.push_back(claim("apex_lower_bound", true, rep.apex_lower_bound));
    cl.push_back(claim("apex_equality_iff_selected_diagonal", true, rep.apex_equality));
    cl.push_back(claim("near_minimal_uses_unique_selector", true, rep.apex_selector));
    report["observed"] = {{"vg_cases", rep.vg_cases}};
    return finish_report(report, out);
}

int verify_lvg_cmd(int N, int L, long M_in, int threads, const std::string& out) {
    if (N < 1 || N > 4 || L < 1 || L > 2)
        return too_large("lvg", "need N in 1..4 and L in 1..2", out);
    Weight M = M_in > 0 ? Weight(M_in) : Weight(std::max(100, 10 * N * L + 10));
    GadgetLemmaReport rep = verify_gadget_lemmas(N, L, M, threads);
    json report{{"suite", "lvg"}, {"params", gadget_params(rep)}, {"claims", json::array()}};
    auto& cl = report["claims"];
    cl.push_back(claim("row_path_minimum_exact", true, rep.row_path_exact));
    cl.push_back(claim("apex_lower_bound", true, rep.apex_lower_bound));
    cl.push_back(claim("apex_equality_iff_selected_diagonal", true, rep.apex_equality));
    cl.push_back(claim("near_minimal_uses_unique_selector", true, rep.apex_selector));
    cl.push_back(claim("chain_lower_bound", true, rep.chain_lower_bound));
    cl.push_back(claim("chain_equality_iff_selected_diagonal", true, rep.chain_equality));
    cl.push_back(claim("chain_equality_unique_selector", true, rep.chain_selector));
    report["observed"] = {{"vg_cases", rep.vg_cases}, {"lvg_cases", rep.lvg_cases}};
    return finish_report(report, out);
}

GridTilingInstance builtin_tiling(bool satisfiable) {
    GridTilingInstance gt;
    gt.n = 2;
    gt.k = 2;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) gt.cells[{a, b}] = {{1, 1}};
    if (!satisfiable) gt.cells[{1, 2}] = {{2, 2}};
    return gt;
}

void append_reduction_claims(json& cl, const std::string& tag,
                             const ReductionCheckReport& rep) {
    cl.push_back(claim(tag + "_classified", rep.sat_expected, rep.sat_observed));
    cl.push_back(claim(tag + "_never_below_budget", true, rep.never_below_budget));
    cl.push_back(claim(tag + "_check", true, rep.ok));
}

int verify_reduction_cmd(const std::string& grid_path, int threads, const std::string& out) {
    json report{{"suite", "reduction"}, {"claims", json::array()}};
    auto& cl = report["claims"];
    if (grid_path.empty()) {
        ReductionCheckReport sat = check_reduction_instance(builtin_tiling(true), threads);
        ReductionCheckReport unsat = check_reduction_instance(builtin_tiling(false), threads);
        report["params"] = {{"n", 2}, {"k", 2}, {"builtin", true}};
        append_reduction_claims(cl, "sat", sat);
        cl.push_back(claim("sat_optimum_equals_budget", weight_to_string(sat.budget),
                           weight_to_string(sat.optimum)));
        append_reduction_claims(cl, "unsat", unsat);
        report["observed"] = {{"budget", weight_to_string(sat.budget)},
                              {"vertices", sat.vertices},
                              {"terminals", sat.terminal_count}};
        return finish_report(report, out);
    }
    GridTilingInstance gt = grid_tiling_from_json(read_text(grid_path));
    if (gt.n > 3 || gt.k > 3)
        return too_large("reduction", "grid side or order above the exact range", out);
    ReductionConstants rc = reduction_constants(gt.n, gt.k);
    int terminal_count = 1 + gt.k + 2 * gt.k + gt.k * (gt.k - 1) * rc.t;
    if (terminal_count > 16)
        return too_large("reduction", "instance needs more than 16 terminals", out);
    ReductionCheckReport rep = check_reduction_instance(gt, threads);
    report["params"] = {{"n", gt.n}, {"k", gt.k}, {"builtin", false}};
    append_reduction_claims(cl, "instance", rep);
    report["observed"] = {{"budget", weight_to_string(rep.budget)},
                          {"optimum", weight_to_string(rep.optimum)},
                          {"feasible", rep.feasible},
                          {"vertices", rep.vertices},
                          {"terminals", rep.terminal_count}};
    return finish_report(report, out);
}

int verify_noncrossing_cmd(int ell, const std::string& out) {
    if (ell < 1 || ell > 4) return too_large("noncrossing", "ell must be in 1..4", out);
    NoncrossingReport rep = verify_noncrossing_bound(ell);
    json report{{"suite", "noncrossing"},
                {"params", {{"ell", ell}}},
                {"claims", json::array()}};
    auto& cl = report["claims"];
    cl.push_back(claim("no_sequence_beyond_four_ell", 0LL, rep.overlong_count));
    cl.push_back(
        claim("max_length_at_most_four_ell", true, rep.max_length <= 4 * rep.l));
    report["observed"] = {{"sequence_count", rep.sequence_count},
                          {"max_length", rep.max_length}};
    return finish_report(report, out);
}

// ---- bench ---------------------------------------------------------------

int bench_cmd(int seeds, const std::vector<int>& sizes, int threads,
              const std::string& out) {
    std::ostringstream csv;
    csv << "size,seed,vertices,edges,terminals,terminal_faces,dw_weight,solver_weight,"
           "weights_equal,dw_ms,solver_ms,solver_par_ms,recursion_depth,base_case_calls,"
           "separators_tried\n";
    for (int size : sizes) {
        if (size < 6 || size > 25) throw GraphError("bench sizes must be in 6..25");
        for (int seed = 0; seed < seeds; ++seed) {
            PlanarInstance pi = random_grid_instance(std::uint64_t(seed), size, 6, 1);
            GraphInstance inst =
                make_instance(std::move(pi.graph), pi.terminals, pi.terminal_faces);

            auto t0 = Clock::now();
            SteinerSolution dw =
                dreyfus_wagner(AdjGraph::from(inst.g), inst.terminals, OracleConfig{});
            auto t1 = Clock::now();

            SolverConfig cfg;
            PipelineOutcome serial = run_pipeline(inst, cfg);
            auto t2 = Clock::now();

            cfg.parallel = threads > 1;
            cfg.threads = threads;
            PipelineOutcome parallel = run_pipeline(inst, cfg);
            auto t3 = Clock::now();

            bool equal = dw.feasible && serial.feasible && parallel.feasible &&
                         dw.weight == serial.weight && dw.weight == parallel.weight;
            csv << size << "," << seed << "," << inst.g.n << "," << inst.g.edges.size()
                << "," << inst.terminals.size() << "," << inst.terminal_faces.size() << ","
                << weight_to_string(dw.weight) << "," << weight_to_string(serial.weight)
                << "," << (equal ? 1 : 0) << "," << ms_between(t0, t1) << ","
                << ms_between(t1, t2) << "," << ms_between(t2, t3) << ","
                << serial.stats.recursion_depth << "," << serial.stats.base_case_calls
                << "," << serial.stats.separators_tried << "\n";
        }
    }
    if (out.empty())
        std::cout << csv.str();
    else
        write_text(out, csv.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for planar Steiner trees with terminals on few faces"};
    app.require_subcommand(1);
    std::function<int()> action;

    // solve
    auto* solve = app.add_subcommand("solve", "solve an instance end to end");
    std::string solve_input, solve_engine = "pipeline", solve_out;
    SolverConfig solve_cfg;
    solve->add_option("input", solve_input, "instance JSON file, or - for stdin")
        ->required();
    solve->add_option("--engine", solve_engine, "pipeline or oracle")
        ->check(CLI::IsMember({"pipeline", "oracle"}))
        ->envname("PST_ENGINE");
    solve->add_option("--c0", solve_cfg.c0, "base-case threshold")->envname("PST_C0");
    solve->add_option("--sep-max", solve_cfg.sep_max, "separator size cap")
        ->envname("PST_SEP_MAX");
    solve->add_option("--depth-max", solve_cfg.depth_max, "recursion depth cap")
        ->envname("PST_DEPTH_MAX");
    solve->add_option("--threads", solve_cfg.threads, "worker threads")
        ->envname("PST_THREADS");
    solve->add_flag("--parallel", solve_cfg.parallel, "parallelize the root separators")
        ->envname("PST_PARALLEL");
    solve->add_option("--out", solve_out, "write the result JSON here");
    solve->callback([&] {
        action = [&]() -> int {
            GraphInstance inst = read_instance(solve_input);
            if (solve_engine == "oracle") {
                SteinerSolution sol =
                    run_oracle_engine(inst, "dw", std::max(1, solve_cfg.threads));
                if (!sol.feasible) {
                    std::cerr << "infeasible: terminals cannot be connected\n";
                    return kInfeasible;
                }
                emit_json(result_json(sol.weight, sol.edges, true, SolverStats{}), solve_out);
                return kOk;
            }
            if (solve_cfg.threads > 1) solve_cfg.parallel = true;
            PipelineOutcome po = run_pipeline(inst, solve_cfg);
            if (!po.feasible) {
                std::cerr << "infeasible: terminals cannot be connected\n";
                return kInfeasible;
            }
            emit_json(result_json(po.weight, po.edges, po.certified, po.stats), solve_out);
            return kOk;
        };
    });

    // oracle
    auto* oracle = app.add_subcommand("oracle", "run a reference oracle");
    std::string oracle_input, oracle_engine = "dw", oracle_out;
    int oracle_threads = 1;
    oracle->add_option("input", oracle_input, "instance JSON file, or - for stdin")
        ->required();
    oracle->add_option("--engine", oracle_engine, "dw, exhaustive, or oneface")
        ->check(CLI::IsMember({"dw", "exhaustive", "oneface"}))
        ->envname("PST_ENGINE");
    oracle->add_option("--threads", oracle_threads, "worker threads")->envname("PST_THREADS");
    oracle->add_option("--out", oracle_out, "write the result JSON here");
    oracle->callback([&] {
        action = [&]() -> int {
            GraphInstance inst = read_instance(oracle_input);
            SteinerSolution sol = run_oracle_engine(inst, oracle_engine, oracle_threads);
            if (!sol.feasible) {
                std::cerr << "infeasible: terminals cannot be connected\n";
                return kInfeasible;
            }
            emit_json(result_json(sol.weight, sol.edges, true, SolverStats{}), oracle_out);
            return kOk;
        };
    });

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance");
    gen->require_subcommand(1);

    auto* gf = gen->add_subcommand("flower", "ring of dyadic intervals");
    int gf_t = 4;
    long gf_scale = 0;
    std::string gf_out, gf_dot;
    gf->add_option("--t", gf_t, "petal count, power of two >= 4")->required();
    gf->add_option("--scale", gf_scale, "weight scale, power of two >= t/4");
    gf->add_option("--out", gf_out, "write the instance JSON here");
    gf->add_option("--dot", gf_dot, "also write a DOT rendering here");
    gf->callback([&] { action = [&] { return gen_flower(gf_t, gf_scale, gf_out, gf_dot); }; });

    auto* gv = gen->add_subcommand("vg", "verification block");
    int gv_N = 2;
    std::vector<int> gv_S;
    long gv_M = 0;
    std::string gv_out, gv_dot;
    gv->add_option("--N", gv_N, "grid side")->required();
    gv->add_option("--S", gv_S, "selected rows (default all)")->delimiter(',');
    gv->add_option("--M", gv_M, "weight base, must exceed 10*N");
    gv->add_option("--out", gv_out, "write the instance JSON here");
    gv->add_option("--dot", gv_dot, "also write a DOT rendering here");
    gv->callback([&] { action = [&] { return gen_vg(gv_N, gv_S, gv_M, gv_out, gv_dot); }; });

    auto* gl = gen->add_subcommand("lvg", "chain of verification blocks");
    int gl_N = 2, gl_L = 2;
    std::string gl_S, gl_out, gl_dot;
    long gl_M = 0;
    gl->add_option("--N", gl_N, "grid side")->required();
    gl->add_option("--L", gl_L, "block count")->required();
    gl->add_option("--S", gl_S, "selected rows per block, ';' between blocks");
    gl->add_option("--M", gl_M, "weight base, must exceed 10*N*L");
    gl->add_option("--out", gl_out, "write the instance JSON here");
    gl->add_option("--dot", gl_dot, "also write a DOT rendering here");
    gl->callback(
        [&] { action = [&] { return gen_lvg(gl_N, gl_L, gl_S, gl_M, gl_out, gl_dot); }; });

    auto* gr = gen->add_subcommand("reduction", "Steiner instance from a Grid-Tiling file");
    std::string gr_grid, gr_out, gr_dot;
    bool gr_subdivide = false;
    gr->add_option("--grid", gr_grid, "Grid-Tiling JSON file, or - for stdin")->required();
    gr->add_flag("--subdivide", gr_subdivide, "expand edges into unit-weight paths");
    gr->add_option("--out", gr_out, "write the instance JSON here");
    gr->add_option("--dot", gr_dot, "also write a DOT rendering here");
    gr->callback(
        [&] { action = [&] { return gen_reduction(gr_grid, gr_subdivide, gr_out, gr_dot); }; });

    auto* grp = gen->add_subcommand("random-planar", "random grid-subgraph instance");
    int grp_n = 20;
    std::uint64_t grp_seed = 0;
    std::string grp_out, grp_dot;
    grp->add_option("--n", grp_n, "vertex budget");
    grp->add_option("--seed", grp_seed, "generator seed");
    grp->add_option("--out", grp_out, "write the instance JSON here");
    grp->add_option("--dot", grp_dot, "also write a DOT rendering here");
    grp->callback(
        [&] { action = [&] { return gen_random_planar(grp_n, grp_seed, grp_out, grp_dot); }; });

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    verify->fallthrough();
    int verify_threads = 1;
    verify->add_option("--threads", verify_threads, "worker threads")->envname("PST_THREADS");

    auto* vf = verify->add_subcommand("flower", "minimum forest facts");
    int vf_t = 4;
    std::string vf_out;
    vf->add_option("--t", vf_t, "petal count, 4 or 8")->required();
    vf->add_option("--out", vf_out, "write the report JSON here");
    vf->callback([&] { action = [&] { return verify_flower_cmd(vf_t, verify_threads, vf_out); }; });

    auto* vt = verify->add_subcommand("triangle", "fan lower-bound sweep");
    int vt_l = 0, vt_xlo = -16, vt_xhi = 0, vt_max = 0;
    long vt_scale = 32;
    std::string vt_out;
    vt->add_option("--l", vt_l, "fan width, 0..7")->required();
    vt->add_option("--x-lo", vt_xlo, "window left endpoint");
    auto* vt_xhi_opt =
        vt->add_option("--x-hi", vt_xhi, "window right endpoint (default l + 16)");
    vt->add_option("--max-size", vt_max, "window size cap (default full span)");
    vt->add_option("--scale", vt_scale, "weight scale, power of two");
    vt->add_option("--out", vt_out, "write the report JSON here");
    vt->callback([&, vt_xhi_opt] {
        action = [&, vt_xhi_opt] {
            int hi = vt_xhi_opt->count() ? vt_xhi : vt_l + 16;
            int mx = vt_max > 0 ? vt_max : hi - vt_xlo + 1;
            return verify_triangle_cmd(vt_l, vt_xlo, hi, mx, vt_scale, verify_threads, vt_out);
        };
    });

    auto* vv = verify->add_subcommand("vg", "verification block cost facts");
    int vv_N = 2;
    long vv_M = 0;
    std::string vv_out;
    vv->add_option("--N", vv_N, "grid side, 1..4")->required();
    vv->add_option("--M", vv_M, "weight base (default 100)");
    vv->add_option("--out", vv_out, "write the report JSON here");
    vv->callback(
        [&] { action = [&] { return verify_vg_cmd(vv_N, vv_M, verify_threads, vv_out); }; });

    auto* vl = verify->add_subcommand("lvg", "chained block cost facts");
    int vl_N = 2, vl_L = 2;
    long vl_M = 0;
    std::string vl_out;
    vl->add_option("--N", vl_N, "grid side, 1..4")->required();
    vl->add_option("--L", vl_L, "block count, 1..2")->required();
    vl->add_option("--M", vl_M, "weight base (default 100)");
    vl->add_option("--out", vl_out, "write the report JSON here");
    vl->callback([&] {
        action = [&] { return verify_lvg_cmd(vl_N, vl_L, vl_M, verify_threads, vl_out); };
    });

    auto* vr = verify->add_subcommand("reduction", "end-to-end classification check");
    std::string vr_grid, vr_out;
    vr->add_option("--grid", vr_grid, "Grid-Tiling JSON file (default: builtin pair)");
    vr->add_option("--out", vr_out, "write the report JSON here");
    vr->callback([&] {
        action = [&] { return verify_reduction_cmd(vr_grid, verify_threads, vr_out); };
    });

    auto* vn = verify->add_subcommand("noncrossing", "minimal sequence length bound");
    int vn_l = 3;
    std::string vn_out;
    vn->add_option("--l", vn_l, "value count, 1..4")->required();
    vn->add_option("--out", vn_out, "write the report JSON here");
    vn->callback([&] { action = [&] { return verify_noncrossing_cmd(vn_l, vn_out); }; });

    // bench
    auto* bench = app.add_subcommand("bench", "time the solver against the oracle");
    int bench_seeds = 0, bench_threads = 4;
    std::vector<int> bench_sizes;
    std::string bench_out;
    bench->add_option("--seeds", bench_seeds, "seeds per size (0 rows when 0)");
    bench->add_option("--sizes", bench_sizes, "vertex budgets, comma separated")
        ->delimiter(',');
    bench->add_option("--threads", bench_threads, "threads for the parallel run")
        ->envname("PST_THREADS");
    bench->add_option("--out", bench_out, "write the CSV here");
    bench->callback([&] {
        action = [&] { return bench_cmd(bench_seeds, bench_sizes, bench_threads, bench_out); };
    });

    CLI11_PARSE(app, argc, argv);

    try {
        return action();
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
