#pragma once

// Shared helpers for the test suites: independent brute-force oracles (never
// routed through the code paths they check) and small random generators.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "sheafdp/decomposition.hpp"
#include "sheafdp/graph.hpp"
#include "sheafdp/problems.hpp"

namespace sheafdp::testutil {

using Rng = std::mt19937_64;

// Counts homomorphisms by scanning every one of |VH|^|VG| vertex maps and
// checking every arc by table lookup. Independent of the backtracking search.
inline long long brute_force_hom_count(const Graph& g, const Graph& h) {
    if (g.nv == 0) return 1;
    if (h.nv == 0) return 0;
    long long count = 0;
    std::vector<int> map(g.nv, 0);
    while (true) {
        bool ok = true;
        for (int e = 0; e < g.ne() && ok; ++e) {
            ok = has_arc(h, map[g.src[e]], map[g.tgt[e]]);
        }
        count += ok;
        int i = g.nv - 1;
        while (i >= 0 && map[i] == h.nv - 1) map[i--] = 0;
        if (i < 0) break;
        ++map[i];
    }
    return count;
}

inline long long brute_force_refl_count(const Graph& g, const Graph& h) {
    if (g.nv == 0) return 1;
    if (h.nv == 0) return 0;
    long long count = 0;
    std::vector<int> map(g.nv, 0);
    while (true) {
        bool ok = true;
        for (int x = 0; x < g.nv && ok; ++x) {
            for (int y = 0; y < g.nv && ok; ++y) {
                if (has_arc(h, map[x], map[y]) && !has_arc(g, x, y)) ok = false;
            }
        }
        count += ok;
        int i = g.nv - 1;
        while (i >= 0 && map[i] == h.nv - 1) map[i--] = 0;
        if (i < 0) break;
        ++map[i];
    }
    return count;
}

inline Graph random_graph(Rng& rng, int nv, double density, bool loops = false) {
    Graph g{nv, {}, {}};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < nv; ++i) {
        for (int j = 0; j < nv; ++j) {
            if (i == j && !loops) continue;
            if (unit(rng) < density) {
                g.src.push_back(i);
                g.tgt.push_back(j);
            }
        }
    }
    return g;
}

inline FinFn random_fn(Rng& rng, int dom, int cod) {
    FinFn f;
    f.cod = cod;
    for (int i = 0; i < dom; ++i) f.table.push_back(static_cast<int>(rng() % cod));
    return f;
}

// A random subgraph of g (vertex subset plus a subset of the induced arcs)
// together with its inclusion. Always returns at least the empty subgraph.
inline std::pair<Graph, GraphHom> random_subgraph(Rng& rng, const Graph& g, double keep = 0.6) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<int> verts;
    for (int v = 0; v < g.nv; ++v) {
        if (unit(rng) < keep) verts.push_back(v);
    }
    std::vector<int> vpos(g.nv, -1);
    for (size_t i = 0; i < verts.size(); ++i) vpos[verts[i]] = static_cast<int>(i);

    Graph sub{static_cast<int>(verts.size()), {}, {}};
    GraphHom incl;
    incl.vmap = FinFn{verts, g.nv};
    incl.emap.cod = g.ne();
    for (int e = 0; e < g.ne(); ++e) {
        if (vpos[g.src[e]] >= 0 && vpos[g.tgt[e]] >= 0 && unit(rng) < keep) {
            sub.src.push_back(vpos[g.src[e]]);
            sub.tgt.push_back(vpos[g.tgt[e]]);
            incl.emap.table.push_back(e);
        }
    }
    return {sub, incl};
}

// Brute-force multigraph isomorphism: tries every vertex bijection and
// compares arc multiplicities per ordered pair. Fine for n <= 8.
inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.nv != b.nv || a.ne() != b.ne()) return false;
    auto pair_counts = [](const Graph& g, const std::vector<int>& relabel) {
        std::vector<int> counts(static_cast<size_t>(g.nv) * std::max(g.nv, 1), 0);
        for (int e = 0; e < g.ne(); ++e) {
            ++counts[static_cast<size_t>(relabel[g.src[e]]) * g.nv + relabel[g.tgt[e]]];
        }
        return counts;
    };
    std::vector<int> id(a.nv);
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> target = pair_counts(b, id);
    std::vector<int> perm = id;
    do {
        if (pair_counts(a, perm) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return a.nv == 0;
}

// Sections {[0], ..., [n-1]} over a one-vertex domain: synthetic solution
// sets whose only role is to carry restriction maps.
inline SolutionSet opaque_set(int n) {
    SolutionSet s;
    s.domain_vertices = 1;
    for (int i = 0; i < n; ++i) s.sections.push_back({i});
    return s;
}

// A random solution co-decomposition with arbitrary restriction maps. When
// forest_only is false a few extra legal shape arcs may close cycles. Bag
// sizes stay in [min_set, max_set].
inline SolCoDecomp random_codecomp(Rng& rng, int max_vertices, int max_set, bool forest_only,
                                   int min_set = 0) {
    int n = 1 + static_cast<int>(rng() % max_vertices);
    SolCoDecomp c;
    c.shape.nv = n;
    auto add_arc = [&](int u, int v) {
        if (rng() % 2) std::swap(u, v);
        c.shape.src.push_back(u);
        c.shape.tgt.push_back(v);
    };
    for (int v = 1; v < n; ++v) {
        if (rng() % 10 < 8) add_arc(static_cast<int>(rng() % v), v);
    }
    if (!forest_only) {
        for (int tries = 0; tries < 3; ++tries) {
            int u = static_cast<int>(rng() % n);
            int v = static_cast<int>(rng() % n);
            if (u == v) continue;
            bool clash = false;
            for (int a = 0; a < c.shape.ne() && !clash; ++a) {
                clash = (c.shape.src[a] == u && c.shape.tgt[a] == v) ||
                        (c.shape.src[a] == v && c.shape.tgt[a] == u);
            }
            if (!clash) add_arc(u, v);
        }
    }
    for (int v = 0; v < n; ++v) {
        int k = min_set + static_cast<int>(rng() % (max_set - min_set + 1));
        c.bag_sets.push_back(opaque_set(k));
        c.live.emplace_back(k, 1);
    }
    for (int a = 0; a < c.shape.ne(); ++a) {
        int m = 1 + static_cast<int>(rng() % std::max(2, max_set / 2));
        c.adhesion_sets.push_back(opaque_set(m));
        c.rho_x.push_back(random_fn(rng, c.bag_sets[c.shape.src[a]].size(), m));
        c.rho_y.push_back(random_fn(rng, c.bag_sets[c.shape.tgt[a]].size(), m));
    }
    return c;
}

// All functions between small finite sets, for exhaustive checks.
inline std::vector<FinFn> all_fns(int dom, int cod) {
    std::vector<FinFn> out;
    if (dom == 0) {
        out.push_back(FinFn{{}, cod});
        return out;
    }
    if (cod == 0) return out;
    std::vector<int> table(dom, 0);
    while (true) {
        out.push_back(FinFn{table, cod});
        int i = dom - 1;
        while (i >= 0 && table[i] == cod - 1) table[i--] = 0;
        if (i < 0) break;
        ++table[i];
    }
    return out;
}

}  // namespace sheafdp::testutil
