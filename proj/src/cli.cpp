#include "sheafdp/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sheafdp/bench.hpp"
#include "sheafdp/engine.hpp"
#include "sheafdp/generator.hpp"
#include "sheafdp/instances.hpp"
#include "sheafdp/json_io.hpp"

namespace sheafdp {

namespace {

using nlohmann::ordered_json;

EngineLimits limits_from_env() {
    EngineLimits limits;
    if (const char* cap = std::getenv("SHEAFDP_ORACLE_CAP")) {
        limits.oracle_node_cap = std::atoll(cap);
    }
    return limits;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

int cmd_decide(const std::string& path, bool want_witness, bool cross_check,
               const EngineLimits& limits, std::ostream& out) {
    Instance inst = load_instance(path);
    DecideStats stats;
    auto t0 = std::chrono::steady_clock::now();
    SolCoDecomp c = apply_sd(inst.problem, inst.decomposition);
    std::vector<int> fvs = inst.fvs ? *inst.fvs : find_fvs(inst.decomposition.shape);
    Verdict verdict = fvs_decide(c, fvs, limits, &stats);
    auto t1 = std::chrono::steady_clock::now();

    ordered_json report;
    report["verdict"] = verdict.satisfiable ? "sat" : "unsat";
    std::vector<int> kappa_per_bag;
    for (const SolutionSet& s : c.bag_sets) kappa_per_bag.push_back(s.size());
    report["kappa"] = c.max_bag_set_size();
    report["kappa_per_bag"] = kappa_per_bag;
    report["fvs"] = fvs;
    report["fvs_size"] = fvs.size();
    report["time_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    report["sigma_count"] = stats.sigma_count;
    report["edge_filters"] = stats.edge_filters;
    report["live_counts"] = verdict.live_counts;

    if (want_witness && verdict.witness) {
        ColimitResult glued = colim(inst.decomposition);
        std::vector<int> assignment = glue_family(inst.decomposition, glued, c, *verdict.witness);
        report["witness"] =
            ordered_json{{"family", *verdict.witness},
                         {"assignment", assignment},
                         {"is_section", is_section(inst.problem, glued.total, assignment)}};
    }

    int exit_code = verdict.satisfiable ? 0 : 1;
    if (cross_check) {
        Verdict oracle = oracle_decide(inst.problem, inst.decomposition);
        bool agrees = (oracle.satisfiable == verdict.satisfiable);
        report["oracle_agrees"] = agrees;
        if (!agrees) exit_code = 3;
    }
    out << report.dump(2) << "\n";
    return exit_code;
}

int cmd_colim(const std::string& path, std::ostream& out) {
    Instance inst = load_instance(path);
    out << serialize_graph(colim(inst.decomposition).total);
    return 0;
}

int cmd_filter(const std::string& path, const std::string& order, const std::string& edges_csv,
               std::ostream& out) {
    Instance inst = load_instance(path);
    SolCoDecomp c = apply_sd(inst.problem, inst.decomposition);

    SolCoDecomp filtered;
    if (order == "fixpoint") {
        filtered = filter_all(c, FilterOrder::Fixpoint);
    } else if (order == "leaf-to-root") {
        filtered = filter_all(c, FilterOrder::LeafToRoot);
    } else if (order == "as-given") {
        std::vector<int> edges;
        if (edges_csv.empty()) {
            edges.resize(c.shape.ne());
            for (int a = 0; a < c.shape.ne(); ++a) edges[a] = a;
        } else {
            std::stringstream ss(edges_csv);
            std::string item;
            while (std::getline(ss, item, ',')) edges.push_back(std::stoi(item));
        }
        filtered = filter_all(c, FilterOrder::AsGiven, edges);
    } else {
        throw std::runtime_error("unknown filter order '" + order + "'");
    }

    ordered_json live = ordered_json::array();
    for (int v = 0; v < filtered.shape.nv; ++v) {
        ordered_json indices = ordered_json::array();
        for (size_t j = 0; j < filtered.live[v].size(); ++j) {
            if (filtered.live[v][j]) indices.push_back(j);
        }
        live.push_back(std::move(indices));
    }
    std::vector<int> bag_sizes, adhesion_sizes;
    for (const SolutionSet& s : filtered.bag_sets) bag_sizes.push_back(s.size());
    for (const SolutionSet& s : filtered.adhesion_sets) adhesion_sizes.push_back(s.size());
    ordered_json report{{"live", live}, {"bag_sizes", bag_sizes}, {"adhesion_sizes", adhesion_sizes}};
    out << report.dump(2) << "\n";
    return 0;
}

int cmd_gen(const GenParams& params, const std::string& out_path, std::ostream& out) {
    Instance inst = generate_instance(params);
    write_text(out_path, serialize_instance(inst), out);
    return 0;
}

int cmd_bench(const std::string& series, int repeats, const std::string& out_path, std::ostream& out) {
    std::vector<BenchRow> rows = run_bench_series(series, repeats);
    std::ostringstream csv;
    write_bench_csv(rows, csv);
    write_text(out_path, csv.str(), out);
    return 0;
}

struct SelfTest {
    std::ostream& out;
    int failures = 0;

    void check(bool ok, const std::string& name) {
        out << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    }
};

int cmd_selftest(const EngineLimits& limits, std::ostream& out) {
    SelfTest t{out};

    StructuredDecomposition two_paths = two_path_cycle_decomposition();
    ProblemFunctor two{ProblemKind::HColoring, complete_sym(2)};
    ProblemFunctor three{ProblemKind::HColoring, complete_sym(3)};

    ColimitResult glued = colim(two_paths);
    t.check(glued.total.nv == 5 && glued.total.ne() == 10, "two glued paths form a 5-cycle");

    SolCoDecomp c2 = apply_sd(two, two_paths);
    Verdict v2 = decide(two, two_paths);
    t.check(!v2.satisfiable, "5-cycle is not 2-colorable (decide unsat)");
    t.check(naive_bag_conjunction(c2), "bag-wise conjunction stays sat on the same instance");
    t.check(oracle_decide(two, two_paths).satisfiable == v2.satisfiable, "oracle agrees on 2-coloring");

    Verdict v3 = decide(three, two_paths);
    SolCoDecomp c3 = apply_sd(three, two_paths);
    bool witness_ok = false;
    if (v3.satisfiable && v3.witness) {
        std::vector<int> assignment = glue_family(two_paths, glued, c3, *v3.witness);
        witness_ok = is_section(three, glued.total, assignment);
    }
    t.check(v3.satisfiable && witness_ok, "3-coloring is sat with a valid glued witness");
    t.check(limit_sections(c3, limits).size() == 30 &&
                static_cast<int>(eval(three, glued.total).size()) == 30,
            "matching families match global sections (30 for the 3-colored 5-cycle)");

    StructuredDecomposition ring = cycle_of_edges(5);
    SolCoDecomp rc = apply_sd(two, ring);
    SolCoDecomp stable = filter_all(rc, FilterOrder::Fixpoint);
    bool all_two = true;
    for (int v = 0; v < stable.shape.nv; ++v) all_two = all_two && stable.live_count(v) == 2;
    t.check(all_two, "cyclic filtering reaches a non-empty fixpoint on the odd ring");
    t.check(!fvs_decide(rc, std::vector<int>{0}).satisfiable,
            "pinning one ring bag still decides unsat");

    SolCoDecomp chain = equality_chain();
    std::vector<int> funny_order{1, 0, 2};
    SolCoDecomp once = filter_all(chain, FilterOrder::AsGiven, funny_order);
    bool none_empty = true;
    for (int v = 0; v < once.shape.nv; ++v) none_empty = none_empty && once.live_count(v) > 0;
    t.check(none_empty, "single middle-first pass leaves every chain bag non-empty");
    t.check(!tree_solve(chain).verdict.satisfiable && limit_sections(chain, limits).empty(),
            "two-pass solve and the exhaustive oracle agree the chain is unsat");

    GenParams params;
    params.kind = GenParams::Kind::Random;
    params.bags = 6;
    params.width = 4;
    params.fvs = 1;
    params.seed = 7;
    Instance inst = generate_instance(params);
    t.check(parse_instance(serialize_instance(inst)) == inst, "generated instance round-trips");
    t.check(decide(inst.problem, inst.decomposition, inst.fvs).satisfiable ==
                oracle_decide(inst.problem, inst.decomposition).satisfiable,
            "decide matches the oracle on a generated instance");

    out << (t.failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return t.failures == 0 ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sheafdp: decide coloring problems presented as structured decompositions"};
    app.require_subcommand(1);

    EngineLimits limits = limits_from_env();

    std::string path;
    bool want_witness = false;
    bool cross_check = false;
    CLI::App* decide_cmd = app.add_subcommand("decide", "decide an instance file");
    decide_cmd->add_option("file", path, "instance file")->required();
    decide_cmd->add_flag("--witness", want_witness, "include the glued witness in the report");
    decide_cmd->add_flag("--oracle", cross_check, "cross-check against the glue-then-solve oracle");
    decide_cmd->add_option("--sigma-cap", limits.sigma_product_cap, "assignment product cap");

    CLI::App* colim_cmd = app.add_subcommand("colim", "print the glued total graph");
    colim_cmd->add_option("file", path, "instance file")->required();

    std::string order = "fixpoint";
    std::string edges_csv;
    CLI::App* filter_cmd = app.add_subcommand("filter", "run edge filtering, print live subsets");
    filter_cmd->add_option("file", path, "instance file")->required();
    filter_cmd->add_option("--order", order, "fixpoint | leaf-to-root | as-given")
        ->check(CLI::IsMember({"fixpoint", "leaf-to-root", "as-given"}));
    filter_cmd->add_option("--edges", edges_csv, "comma-separated arc order for as-given");

    GenParams params;
    std::string kind = "tree";
    std::string problem = "hcoloring";
    std::string out_path;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a deterministic instance");
    gen_cmd->add_option("--kind", kind, "tree | cyclic | random")
        ->check(CLI::IsMember({"tree", "cyclic", "random"}));
    gen_cmd->add_option("--bags", params.bags, "number of bags");
    gen_cmd->add_option("--width", params.width, "max bag vertex count");
    gen_cmd->add_option("--fvs", params.fvs, "extra shape arcs (random kind)");
    gen_cmd->add_option("--seed", params.seed, "rng seed");
    gen_cmd->add_option("--density", params.density, "arc probability inside bags");
    gen_cmd->add_option("--problem", problem, "hcoloring | refl_hcoloring")
        ->check(CLI::IsMember({"hcoloring", "refl_hcoloring"}));
    gen_cmd->add_option("--target", params.target, "k<n> | c<n> | p<n> | loop | random");
    gen_cmd->add_option("--out", out_path, "output path (default stdout)");

    std::string series = "edges";
    int repeats = 9;
    CLI::App* bench_cmd = app.add_subcommand("bench", "time decide over a parameter sweep");
    bench_cmd->add_option("--series", series, "edges | kappa | fvs")
        ->check(CLI::IsMember({"edges", "kappa", "fvs"}));
    bench_cmd->add_option("--repeats", repeats, "timed repetitions per row");
    bench_cmd->add_option("--out", out_path, "output path (default stdout)");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the built-in golden checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (decide_cmd->parsed()) return cmd_decide(path, want_witness, cross_check, limits, out);
        if (colim_cmd->parsed()) return cmd_colim(path, out);
        if (filter_cmd->parsed()) return cmd_filter(path, order, edges_csv, out);
        if (gen_cmd->parsed()) {
            params.kind = kind == "tree"    ? GenParams::Kind::Tree
                          : kind == "cyclic" ? GenParams::Kind::Cyclic
                                             : GenParams::Kind::Random;
            params.problem =
                problem == "hcoloring" ? ProblemKind::HColoring : ProblemKind::ReflHColoring;
            return cmd_gen(params, out_path, out);
        }
        if (bench_cmd->parsed()) return cmd_bench(series, repeats, out_path, out);
        if (selftest_cmd->parsed()) return cmd_selftest(limits, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace sheafdp
