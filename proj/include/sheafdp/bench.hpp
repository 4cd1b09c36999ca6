#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sheafdp/engine.hpp"

namespace sheafdp {

struct BenchRow {
    long long param = 0;      // the swept value
    long long shape_edges = 0;
    int kappa = 0;
    int fvs_size = 0;
    double time_ms = 0.0;     // median decide wall time
    bool satisfiable = false;
};

// series is one of "edges" (shape arc count sweep at fixed kappa and fvs),
// "kappa" (target sweep at fixed shape), "fvs" (feedback vertex number 0/1/2
// at fixed kappa and comparable size). Medians over `repeats` timed runs.
std::vector<BenchRow> run_bench_series(const std::string& series, int repeats);

// Columns: param, edges, kappa, fvs, time_ms, verdict.
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace sheafdp
