#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sheafdp/bench.hpp"
#include "sheafdp/cli.hpp"
#include "sheafdp/engine.hpp"
#include "sheafdp/generator.hpp"
#include "sheafdp/instances.hpp"
#include "sheafdp/json_io.hpp"
#include "test_util.hpp"

using namespace sheafdp;

namespace {

Instance two_path_instance(int colors) {
    Instance inst;
    inst.problem = ProblemFunctor{ProblemKind::HColoring, complete_sym(colors)};
    inst.decomposition = two_path_cycle_decomposition();
    return inst;
}

std::string temp_file(const std::string& name, const std::string& contents) {
    std::string path = "/tmp/sheafdp_test_" + name;
    std::ofstream f(path, std::ios::binary);
    f << contents;
    return path;
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("instances round-trip canonically") {
    GenParams p;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        p.kind = seed % 3 == 0   ? GenParams::Kind::Tree
                 : seed % 3 == 1 ? GenParams::Kind::Cyclic
                                 : GenParams::Kind::Random;
        p.bags = 3 + static_cast<int>(seed % 4);
        p.width = 2 + static_cast<int>(seed % 3);
        p.fvs = static_cast<int>(seed % 3);
        p.seed = seed;
        p.problem = seed % 2 ? ProblemKind::ReflHColoring : ProblemKind::HColoring;
        p.target = seed % 2 ? "random" : "k3";
        Instance inst = generate_instance(p);
        std::string text = serialize_instance(inst);
        Instance back = parse_instance(text);
        CHECK(back == inst);
        CHECK(serialize_instance(back) == text);
    }
}

TEST_CASE("parse diagnostics carry json paths") {
    Instance inst = two_path_instance(2);
    std::string text = serialize_instance(inst);

    auto expect_error = [](const std::string& body, const std::string& needle) {
        try {
            parse_instance(body);
            FAIL_CHECK("expected a parse failure containing '" << needle << "'");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    expect_error("{", "json syntax");
    expect_error(R"({"problem": {"kind": "hcoloring"}})", "instance.problem");
    expect_error(R"({"problem": {"kind": "colorings", "target": {"nv":1,"src":[],"tgt":[]}},
                     "decomposition": {}})",
                 "instance.problem.kind");

    nlohmann::json doc = nlohmann::json::parse(text);
    doc["decomposition"]["adhesions"][0]["edge"] = {1, 0};
    expect_error(doc.dump(), "no shape arc");

    doc = nlohmann::json::parse(text);
    doc["decomposition"]["shape"]["src"] = {0, 1};
    doc["decomposition"]["shape"]["tgt"] = {1, 0};
    expect_error(doc.dump(), "antiparallel");

    doc = nlohmann::json::parse(text);
    doc["fvs"] = {3};
    expect_error(doc.dump(), "instance.fvs");
}

TEST_CASE("a declared non-fvs is rejected") {
    Instance ring;
    ring.problem = ProblemFunctor{ProblemKind::HColoring, complete_sym(2)};
    ring.decomposition = cycle_of_edges(4);
    ring.fvs = std::vector<int>{};
    nlohmann::json doc = nlohmann::json::parse(serialize_instance(ring));
    try {
        parse_instance(doc.dump());
        FAIL_CHECK("expected rejection of the empty fvs on a cycle");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("feedback vertex set") != std::string::npos);
    }
}

TEST_CASE("generation is deterministic and respects the fvs budget") {
    GenParams p;
    p.kind = GenParams::Kind::Random;
    p.bags = 7;
    p.width = 4;
    p.fvs = 2;
    p.seed = 7;
    Instance a = generate_instance(p);
    Instance b = generate_instance(p);
    CHECK(serialize_instance(a) == serialize_instance(b));
    CHECK(find_fvs(a.decomposition.shape).size() <= 2);
    REQUIRE(a.fvs.has_value());
    CHECK(is_fvs(a.decomposition.shape, *a.fvs));
}

TEST_CASE("generated single-bag and ring families have the promised shape") {
    GenParams p;
    p.kind = GenParams::Kind::Tree;
    p.bags = 1;
    p.width = 3;
    p.seed = 3;
    Instance single = generate_instance(p);
    CHECK(single.decomposition.shape.nv == 1);
    CHECK(single.decomposition.shape.ne() == 0);

    GenParams ring;
    ring.kind = GenParams::Kind::Cyclic;
    ring.bags = 5;
    ring.width = 2;
    ring.target = "k2";
    Instance inst = generate_instance(ring);
    ColimitResult glued = colim(inst.decomposition);
    CHECK(glued.total.nv == 5);
    CHECK(glued.total.ne() == 10);
    SolCoDecomp c = apply_sd(inst.problem, inst.decomposition);
    for (int v = 0; v < 5; ++v) CHECK(c.bag_sets[v].size() == 2);
    for (int e = 0; e < 5; ++e) CHECK(c.adhesion_sets[e].size() == 2);
}

TEST_CASE("cli decide exit codes cover sat, unsat, error and divergence") {
    std::string sat_path = temp_file("sat.json", serialize_instance(two_path_instance(3)));
    std::string unsat_path = temp_file("unsat.json", serialize_instance(two_path_instance(2)));

    CHECK(run({"decide", sat_path}) == 0);
    CHECK(run({"decide", unsat_path}) == 1);
    CHECK(run({"decide", unsat_path, "--oracle"}) == 1);

    std::string err_text;
    CHECK(run({"decide", "/tmp/sheafdp_does_not_exist.json"}, nullptr, &err_text) == 2);
    CHECK(!err_text.empty());

    std::string garbled = temp_file("garbled.json", "{ not json");
    CHECK(run({"decide", garbled}) == 2);

    // Antiparallel shape arcs violate the shape restrictions: exit 2.
    nlohmann::json doc = nlohmann::json::parse(serialize_instance(two_path_instance(2)));
    doc["decomposition"]["shape"]["src"] = {0, 1};
    doc["decomposition"]["shape"]["tgt"] = {1, 0};
    std::string anti = temp_file("antiparallel.json", doc.dump());
    CHECK(run({"decide", anti}, nullptr, &err_text) == 2);
    CHECK(err_text.find("antiparallel") != std::string::npos);

    // The two-looped-points instance where the fast path and the oracle
    // disagree: exit 3 under --oracle.
    Instance diverging;
    diverging.problem = ProblemFunctor{ProblemKind::ReflHColoring, Graph{1, {0}, {0}}};
    diverging.decomposition.shape = edgeless(2);
    diverging.decomposition.bags = {Graph{1, {0}, {0}}, Graph{1, {0}, {0}}};
    std::string div_path = temp_file("diverging.json", serialize_instance(diverging));
    CHECK(run({"decide", div_path}) == 0);
    CHECK(run({"decide", div_path, "--oracle"}) == 3);
}

TEST_CASE("cli decide reports the run in json") {
    std::string path = temp_file("report.json", serialize_instance(two_path_instance(3)));
    std::string out_text;
    REQUIRE(run({"decide", path, "--witness", "--oracle"}, &out_text) == 0);
    nlohmann::json report = nlohmann::json::parse(out_text);
    CHECK(report["verdict"] == "sat");
    CHECK(report["kappa"] == 24);
    CHECK(report["kappa_per_bag"] == nlohmann::json({12, 24}));
    CHECK(report["fvs_size"] == 0);
    CHECK(report["oracle_agrees"] == true);
    CHECK(report["witness"]["is_section"] == true);
    CHECK(report["witness"]["assignment"].size() == 5);
}

TEST_CASE("cli colim prints the canonical total graph") {
    std::string path = temp_file("colim.json", serialize_instance(two_path_instance(2)));
    std::string out_text;
    REQUIRE(run({"colim", path}, &out_text) == 0);
    nlohmann::json g = nlohmann::json::parse(out_text);
    CHECK(g["nv"] == 5);
    CHECK(g["src"].size() == 10);
}

TEST_CASE("cli filter reports live subsets per order") {
    Instance ring;
    ring.problem = ProblemFunctor{ProblemKind::HColoring, complete_sym(2)};
    ring.decomposition = cycle_of_edges(5);
    ring.fvs = std::vector<int>{0};
    std::string path = temp_file("ring.json", serialize_instance(ring));

    std::string out_text;
    REQUIRE(run({"filter", path, "--order", "fixpoint"}, &out_text) == 0);
    nlohmann::json report = nlohmann::json::parse(out_text);
    for (const auto& live : report["live"]) CHECK(live.size() == 2);

    std::string two_paths_path = temp_file("twopaths_filter.json", serialize_instance(two_path_instance(2)));
    REQUIRE(run({"filter", two_paths_path, "--order", "as-given", "--edges", "0"}, &out_text) == 0);
    report = nlohmann::json::parse(out_text);
    CHECK(report["live"][0].empty());
    CHECK(report["live"][1].empty());

    // The forest schedule applies to the single-arc shape either way.
    REQUIRE(run({"filter", two_paths_path, "--order", "leaf-to-root"}, &out_text) == 0);
    report = nlohmann::json::parse(out_text);
    CHECK(report["live"][0].empty());

    // No-arc shapes accept the empty as-given order and change nothing.
    GenParams p;
    p.kind = GenParams::Kind::Tree;
    p.bags = 1;
    p.width = 2;
    std::string single_path = temp_file("single.json", serialize_instance(generate_instance(p)));
    REQUIRE(run({"filter", single_path, "--order", "as-given"}, &out_text) == 0);
}

TEST_CASE("cli decide surfaces engine caps as errors") {
    Instance ring;
    ring.problem = ProblemFunctor{ProblemKind::HColoring, complete_sym(3)};
    ring.decomposition = cycle_of_edges(5);
    ring.fvs = std::vector<int>{0};
    std::string path = temp_file("capped.json", serialize_instance(ring));
    std::string err_text;
    CHECK(run({"decide", path, "--sigma-cap", "2"}, nullptr, &err_text) == 2);
    CHECK(err_text.find("cap") != std::string::npos);
    CHECK(run({"decide", path}) == 0);
}

TEST_CASE("cli gen writes canonical deterministic bytes") {
    std::string a, b;
    REQUIRE(run({"gen", "--kind", "random", "--bags", "6", "--width", "3", "--fvs", "1", "--seed",
                 "11"},
                &a) == 0);
    REQUIRE(run({"gen", "--kind", "random", "--bags", "6", "--width", "3", "--fvs", "1", "--seed",
                 "11"},
                &b) == 0);
    CHECK(a == b);
    Instance inst = parse_instance(a);
    CHECK(serialize_instance(inst) == a);

    std::string path = "/tmp/sheafdp_test_gen_out.json";
    REQUIRE(run({"gen", "--kind", "random", "--bags", "6", "--width", "3", "--fvs", "1", "--seed",
                 "11", "--out", path}) == 0);
    std::ifstream f(path, std::ios::binary);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == a);
}

TEST_CASE("cli bench emits the documented columns") {
    std::string out_text;
    REQUIRE(run({"bench", "--series", "fvs", "--repeats", "1"}, &out_text) == 0);
    std::istringstream lines(out_text);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "param,edges,kappa,fvs,time_ms,verdict");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) rows += !line.empty();
    CHECK(rows == 3);
}

TEST_CASE("bench series sweep the documented parameters") {
    std::vector<BenchRow> edges = run_bench_series("edges", 1);
    REQUIRE(edges.size() == 5);
    for (size_t i = 0; i < edges.size(); ++i) {
        CHECK(edges[i].kappa == 2);
        CHECK(edges[i].fvs_size == 0);
        if (i > 0) CHECK(edges[i].shape_edges > edges[i - 1].shape_edges);
    }
    CHECK(edges.front().shape_edges == 50);
    CHECK(edges.back().shape_edges == 800);

    std::vector<BenchRow> kappa = run_bench_series("kappa", 1);
    REQUIRE(kappa.size() >= 3);
    for (size_t i = 1; i < kappa.size(); ++i) {
        CHECK(kappa[i].kappa > kappa[i - 1].kappa);
        CHECK(kappa[i].shape_edges == kappa[0].shape_edges);
        CHECK(kappa[i].fvs_size == 1);
    }

    std::vector<BenchRow> fvs = run_bench_series("fvs", 1);
    REQUIRE(fvs.size() == 3);
    for (size_t i = 0; i < fvs.size(); ++i) {
        CHECK(fvs[i].fvs_size == static_cast<int>(i));
        CHECK(fvs[i].kappa == 2);
    }
}

TEST_CASE("cli selftest passes") {
    std::string out_text;
    CHECK(run({"selftest"}, &out_text) == 0);
    CHECK(out_text.find("selftest passed") != std::string::npos);
}

TEST_CASE("SHEAFDP_ORACLE_CAP overrides the oracle node cap") {
    setenv("SHEAFDP_ORACLE_CAP", "5", 1);
    std::string err_text;
    CHECK(run({"selftest"}, nullptr, &err_text) == 2);  // the golden oracle runs trip the cap
    CHECK(err_text.find("cap") != std::string::npos);
    unsetenv("SHEAFDP_ORACLE_CAP");
    CHECK(run({"selftest"}) == 0);
}
