#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>
#include <unistd.h>

#include "pst/json_io.hpp"

using namespace pst;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string binary() {
    const char* bin = std::getenv("PST_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

RunResult run_cmd(const std::string& args) {
    std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int rc = pclose(pipe);
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string tmp_path(const std::string& name) {
    return "/tmp/pst_cli_" + std::to_string(getpid()) + "_" + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    REQUIRE(f.good());
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json triangle_instance() {
    return json{{"vertices", 3},
                {"edges", json::array({json::array({0, 1, "1"}),
                                       json::array({1, 2, "3"}),
                                       json::array({2, 0, "1"})})},
                {"terminals", json::array({0, 1, 2})},
                {"terminal_faces", json::array({json::array({0, 1, 2})})}};
}

}  // namespace

TEST_CASE("solve a triangle through both engines") {
    std::string in = tmp_path("tri.json");
    write_file(in, triangle_instance().dump());

    RunResult r = run_cmd("solve " + in);
    REQUIRE(r.code == 0);
    json out = json::parse(r.out);
    CHECK(out.at("weight").get<std::string>() == "2");
    CHECK(out.at("edges") == json::array({0, 2}));
    CHECK(out.contains("optimal_certified"));
    CHECK(out.at("stats").contains("base_case_calls"));

    RunResult o = run_cmd("solve " + in + " --engine oracle");
    REQUIRE(o.code == 0);
    json oout = json::parse(o.out);
    CHECK(oout.at("weight").get<std::string>() == "2");

    std::string res = tmp_path("tri_result.json");
    RunResult w = run_cmd("solve " + in + " --out " + res);
    REQUIRE(w.code == 0);
    json fromfile = json::parse(read_file(res));
    CHECK(fromfile.at("weight").get<std::string>() == "2");
}

TEST_CASE("exit codes for bad and infeasible inputs") {
    std::string garbled = tmp_path("garbled.json");
    write_file(garbled, "this is not json");
    CHECK(run_cmd("solve " + garbled).code == 2);

    json split{{"vertices", 4},
               {"edges", json::array({json::array({0, 1, "1"}),
                                      json::array({2, 3, "1"})})},
               {"terminals", json::array({0, 2})},
               {"terminal_faces",
                json::array({json::array({0}), json::array({1})})}};
    std::string in = tmp_path("split.json");
    write_file(in, split.dump());
    CHECK(run_cmd("solve " + in).code == 3);

    CHECK(run_cmd("solve " + tmp_path("missing.json")).code == 2);
}

TEST_CASE("gen flower emits a well formed instance") {
    RunResult r = run_cmd("gen flower --t 4");
    REQUIRE(r.code == 0);
    json inst = json::parse(r.out);
    CHECK(inst.at("vertices") == 8);
    CHECK(inst.at("edges").size() == 8);
    CHECK(inst.at("meta").at("kind") == "flower");
    CHECK(inst.at("meta").at("t") == 4);

    GraphInstance parsed = instance_from_json(inst);
    CHECK(parsed.g.n == 8);
    CHECK(parsed.terminals.size() == 4);
    CHECK(parsed.terminal_faces.size() == 1);
}

TEST_CASE("gen writes instance, sidecar, and dot files") {
    std::string out = tmp_path("flower.json");
    std::string dot = tmp_path("flower.dot");
    RunResult r = run_cmd("gen flower --t 4 --out " + out + " --dot " + dot);
    REQUIRE(r.code == 0);

    json inst = json::parse(read_file(out));
    CHECK(inst.at("vertices") == 8);
    json side = json::parse(read_file(tmp_path("flower.sidecar.json")));
    CHECK(side.at("kind") == "flower");

    std::string d = read_file(dot);
    CHECK(d.find("doublecircle") != std::string::npos);
    CHECK(d.find("diamond") != std::string::npos);
}

TEST_CASE("gen random-planar is deterministic") {
    RunResult a = run_cmd("gen random-planar --n 12 --seed 5");
    RunResult b = run_cmd("gen random-planar --n 12 --seed 5");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    RunResult c = run_cmd("gen random-planar --n 12 --seed 6");
    CHECK(a.out != c.out);

    // solving the generated instance agrees with the oracle
    std::string in = tmp_path("rand.json");
    write_file(in, a.out);
    json solved = json::parse(run_cmd("solve " + in).out);
    json oracle = json::parse(run_cmd("oracle " + in + " --engine dw").out);
    CHECK(solved.at("weight") == oracle.at("weight"));
}

TEST_CASE("verify subcommands report their claims") {
    RunResult r = run_cmd("verify noncrossing --l 3");
    REQUIRE(r.code == 0);
    json rep = json::parse(r.out);
    CHECK(rep.at("suite") == "noncrossing");
    CHECK(rep.at("ok") == true);
    for (const auto& c : rep.at("claims")) CHECK(c.at("pass") == true);

    RunResult v = run_cmd("verify vg --N 2");
    REQUIRE(v.code == 0);
    json vrep = json::parse(v.out);
    std::set<std::string> names;
    for (const auto& c : vrep.at("claims")) names.insert(c.at("name"));
    CHECK(names == std::set<std::string>{"row_path_minimum_exact", "apex_lower_bound",
                                         "apex_equality_iff_selected_diagonal",
                                         "near_minimal_uses_unique_selector"});

    // out-of-range parameters are a TooLarge input error
    RunResult big = run_cmd("verify flower --t 16");
    CHECK(big.code == 2);
    json brep = json::parse(big.out);
    CHECK(brep.at("error") == "TooLarge");
}

TEST_CASE("bench emits the documented csv") {
    RunResult r = run_cmd("bench --seeds 2 --sizes 6,7");
    REQUIRE(r.code == 0);
    std::istringstream ss(r.out);
    std::string header;
    REQUIRE(std::getline(ss, header));
    CHECK(header ==
          "size,seed,vertices,edges,terminals,terminal_faces,dw_weight,"
          "solver_weight,weights_equal,dw_ms,solver_ms,solver_par_ms,"
          "recursion_depth,base_case_calls,separators_tried");
    int rows = 0;
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        ++rows;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 15);
        CHECK(fields[8] == "1");
        CHECK(fields[6] == fields[7]);
    }
    CHECK(rows == 4);

    CHECK(run_cmd("bench --seeds 1 --sizes 30").code == 2);
}

TEST_CASE("instance json round trips in process") {
    GraphBuilder gb;
    gb.add_vertices(4);
    gb.add_edge(0, 1, Weight(1));
    gb.add_edge(1, 2, Weight(2));
    gb.add_edge(2, 3, Weight(3));
    gb.add_edge(3, 0, Weight(4));
    PlanarGraph g = gb.build();
    GraphInstance inst = make_instance(g, {0, 2}, {0});
    inst.meta = json{{"note", "square"}};

    json j = instance_to_json(inst);
    GraphInstance back = instance_from_json(j);
    CHECK(back.g.n == 4);
    CHECK(back.g.edges.size() == 4);
    CHECK(back.g.edges[3].w == Weight(4));
    CHECK(back.terminals == inst.terminals);
    CHECK(back.terminal_faces == inst.terminal_faces);
    CHECK(back.meta.at("note") == "square");

    std::string path = tmp_path("roundtrip.json");
    save_instance(inst, path);
    GraphInstance loaded = load_instance(path);
    CHECK(loaded.g.total_weight() == g.total_weight());
    CHECK(loaded.terminals == inst.terminals);
}

TEST_CASE("rotation is optional and defaults to insertion order") {
    json j{{"vertices", 4},
           {"edges", json::array({json::array({0, 1, "1"}),
                                  json::array({1, 2, "1"}),
                                  json::array({2, 3, "1"}),
                                  json::array({3, 0, "1"})})},
           {"terminals", json::array({0})},
           {"terminal_faces", json::array({json::array({0, 1, 2, 3})})}};
    GraphInstance inst = instance_from_json(j);
    CHECK(inst.g.faces().size() == 2);
    CHECK(inst.g.rotation[0] == std::vector<int>{0, 7});
    CHECK(inst.g.rotation[1] == std::vector<int>{1, 2});
}

TEST_CASE("dot output marks terminals and portals") {
    GraphBuilder gb;
    gb.add_vertices(3);
    gb.add_edge(0, 1, Weight(1));
    gb.add_edge(1, 2, Weight(1));
    gb.add_edge(2, 0, Weight(1));
    GraphInstance inst = make_instance(gb.build(), {0}, {0});
    inst.meta = json{{"portals", json::array({1})}};
    std::string d = to_dot(inst);
    CHECK(d.find("doublecircle") != std::string::npos);
    CHECK(d.find("diamond") != std::string::npos);
    CHECK(d.find("palegreen") != std::string::npos);
}
