#include "sheafdp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "sheafdp/instances.hpp"

namespace sheafdp {

namespace {

struct BenchCase {
    long long param;
    ProblemFunctor problem;
    StructuredDecomposition decomposition;
    std::vector<int> fvs;
};

double time_decide_ms(const BenchCase& b) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    Verdict v = decide(b.problem, b.decomposition, b.fvs);
    auto t1 = clock::now();
    (void)v;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

// One timed repetition of every case per round, so a noisy stretch of wall
// time lands on all rows instead of distorting a single one. Row time is the
// median over rounds.
std::vector<BenchRow> run_cases(const std::vector<BenchCase>& cases, int repeats) {
    for (const BenchCase& b : cases) time_decide_ms(b);  // warmup round
    std::vector<std::vector<double>> samples(cases.size());
    for (int r = 0; r < repeats; ++r) {
        for (size_t i = 0; i < cases.size(); ++i) samples[i].push_back(time_decide_ms(cases[i]));
    }
    std::vector<BenchRow> rows;
    rows.reserve(cases.size());
    for (size_t i = 0; i < cases.size(); ++i) {
        const BenchCase& b = cases[i];
        BenchRow row;
        row.param = b.param;
        row.shape_edges = b.decomposition.shape.ne();
        SolCoDecomp c = apply_sd(b.problem, b.decomposition);
        row.kappa = c.max_bag_set_size();
        row.fvs_size = static_cast<int>(b.fvs.size());
        row.satisfiable = fvs_decide(c, b.fvs).satisfiable;
        std::sort(samples[i].begin(), samples[i].end());
        row.time_ms = samples[i][samples[i].size() / 2];
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::vector<BenchRow> run_bench_series(const std::string& series, int repeats) {
    ProblemFunctor two_coloring{ProblemKind::HColoring, complete_sym(2)};
    std::vector<BenchCase> cases;

    if (series == "edges") {
        // kappa = 2 and an empty fvs throughout; only the arc count moves.
        // path_of_edges(n) has n bags and n - 1 shape arcs.
        for (int edges : {50, 100, 200, 400, 800}) {
            cases.push_back({edges, two_coloring, path_of_edges(edges + 1), {}});
        }
    } else if (series == "kappa") {
        // Fixed odd cycle of edge bags, growing complete targets.
        StructuredDecomposition d = cycle_of_edges(51);
        for (int h : {2, 3, 4, 5}) {
            cases.push_back({h, ProblemFunctor{ProblemKind::HColoring, complete_sym(h)}, d, {0}});
        }
    } else if (series == "fvs") {
        // Comparable sizes and kappa = 2; the feedback vertex number sweeps
        // 0, 1, 2. Odd cycles keep the assignment loop from short-circuiting.
        cases.push_back({0, two_coloring, path_of_edges(202), {}});
        cases.push_back({1, two_coloring, cycle_of_edges(201), {0}});
        cases.push_back(
            {2, two_coloring, disjoint_union(cycle_of_edges(101), cycle_of_edges(101)), {0, 101}});
    } else {
        throw std::invalid_argument("unknown bench series '" + series + "'");
    }
    return run_cases(cases, repeats);
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "param,edges,kappa,fvs,time_ms,verdict\n";
    for (const BenchRow& r : rows) {
        out << r.param << ',' << r.shape_edges << ',' << r.kappa << ',' << r.fvs_size << ','
            << r.time_ms << ',' << (r.satisfiable ? "sat" : "unsat") << '\n';
    }
}

}  // namespace sheafdp
