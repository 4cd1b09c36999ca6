#include "sheafdp/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace sheafdp {

std::optional<std::string> check_graph(const Graph& g) {
    if (g.nv < 0) return std::string("negative vertex count");
    if (g.src.size() != g.tgt.size()) return std::string("src and tgt tables differ in length");
    for (int e = 0; e < g.ne(); ++e) {
        if (g.src[e] < 0 || g.src[e] >= g.nv || g.tgt[e] < 0 || g.tgt[e] >= g.nv) {
            return "arc " + std::to_string(e) + " has an endpoint outside 0.." + std::to_string(g.nv - 1);
        }
    }
    return std::nullopt;
}

bool is_simple(const Graph& g) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(g.ne());
    for (int e = 0; e < g.ne(); ++e) pairs.emplace_back(g.src[e], g.tgt[e]);
    std::sort(pairs.begin(), pairs.end());
    return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

bool has_arc(const Graph& g, int u, int v) {
    for (int e = 0; e < g.ne(); ++e) {
        if (g.src[e] == u && g.tgt[e] == v) return true;
    }
    return false;
}

int arc_between(const Graph& g, int u, int v) {
    for (int e = 0; e < g.ne(); ++e) {
        if (g.src[e] == u && g.tgt[e] == v) return e;
    }
    return -1;
}

Graph edgeless(int n) { return Graph{n, {}, {}}; }

Graph complete_sym(int n) {
    Graph g{n, {}, {}};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            g.src.push_back(i);
            g.tgt.push_back(j);
            g.src.push_back(j);
            g.tgt.push_back(i);
        }
    }
    return g;
}

Graph cycle_sym(int n) {
    Graph g{n, {}, {}};
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        g.src.push_back(i);
        g.tgt.push_back(j);
        g.src.push_back(j);
        g.tgt.push_back(i);
    }
    return g;
}

Graph path_sym(int n) {
    Graph g{n, {}, {}};
    for (int i = 0; i + 1 < n; ++i) {
        g.src.push_back(i);
        g.tgt.push_back(i + 1);
        g.src.push_back(i + 1);
        g.tgt.push_back(i);
    }
    return g;
}

Graph directed_cycle(int n) {
    Graph g{n, {}, {}};
    for (int i = 0; i < n; ++i) {
        g.src.push_back(i);
        g.tgt.push_back((i + 1) % n);
    }
    return g;
}

Graph directed_path(int n) {
    Graph g{n, {}, {}};
    for (int i = 0; i + 1 < n; ++i) {
        g.src.push_back(i);
        g.tgt.push_back(i + 1);
    }
    return g;
}

GraphHom identity_hom(const Graph& g) {
    return GraphHom{identity_fn(g.nv), identity_fn(g.ne())};
}

GraphHom compose(const GraphHom& f, const GraphHom& g) {
    return GraphHom{compose(f.vmap, g.vmap), compose(f.emap, g.emap)};
}

std::optional<std::string> check_hom(const GraphHom& h, const Graph& from, const Graph& to) {
    if (h.vmap.dom() != from.nv || h.vmap.cod != to.nv) {
        return std::string("vertex map sized ") + std::to_string(h.vmap.dom()) + "->" +
               std::to_string(h.vmap.cod) + ", expected " + std::to_string(from.nv) + "->" +
               std::to_string(to.nv);
    }
    if (h.emap.dom() != from.ne() || h.emap.cod != to.ne()) {
        return std::string("arc map sized ") + std::to_string(h.emap.dom()) + "->" +
               std::to_string(h.emap.cod) + ", expected " + std::to_string(from.ne()) + "->" +
               std::to_string(to.ne());
    }
    if (auto err = check_fn(h.vmap)) return "vertex map: " + *err;
    if (auto err = check_fn(h.emap)) return "arc map: " + *err;
    for (int e = 0; e < from.ne(); ++e) {
        int im = h.emap.table[e];
        if (to.src[im] != h.vmap.table[from.src[e]] || to.tgt[im] != h.vmap.table[from.tgt[e]]) {
            return "naturality fails at arc " + std::to_string(e);
        }
    }
    return std::nullopt;
}

void validate_hom(const GraphHom& h, const Graph& from, const Graph& to) {
    if (auto err = check_hom(h, from, to)) throw std::invalid_argument("invalid homomorphism: " + *err);
}

bool is_mono(const GraphHom& h) {
    return is_injective(h.vmap) && is_injective(h.emap);
}

int SolutionSet::index_of(std::span<const int> section) const {
    auto it = std::lower_bound(sections.begin(), sections.end(), section,
                               [](const std::vector<int>& a, std::span<const int> b) {
                                   return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                               });
    if (it == sections.end() || !std::equal(it->begin(), it->end(), section.begin(), section.end())) return -1;
    return static_cast<int>(it - sections.begin());
}

namespace {

// Arc-existence matrix for the target, plus per-vertex lists of source arcs
// that become checkable once that vertex is assigned.
struct HomSearch {
    const Graph& g;
    const Graph& h;
    std::vector<char> h_adj;                    // h.nv * h.nv
    std::vector<std::vector<int>> arcs_at;      // g-arc indices keyed by max endpoint
    std::vector<int> assign;

    HomSearch(const Graph& gg, const Graph& hh) : g(gg), h(hh) {
        h_adj.assign(static_cast<size_t>(h.nv) * h.nv, 0);
        for (int e = 0; e < h.ne(); ++e) h_adj[static_cast<size_t>(h.src[e]) * h.nv + h.tgt[e]] = 1;
        arcs_at.resize(g.nv);
        for (int e = 0; e < g.ne(); ++e) arcs_at[std::max(g.src[e], g.tgt[e])].push_back(e);
        assign.assign(g.nv, -1);
    }

    bool target_has(int u, int v) const { return h_adj[static_cast<size_t>(u) * h.nv + v] != 0; }

    bool consistent_at(int v) const {
        for (int e : arcs_at[v]) {
            if (!target_has(assign[g.src[e]], assign[g.tgt[e]])) return false;
        }
        return true;
    }

    // Visit every homomorphism in lexicographic vmap order. The visitor
    // returns false to stop the search.
    template <typename Visit>
    bool run(Visit&& visit, int v = 0) {
        if (v == g.nv) return visit(assign);
        for (int c = 0; c < h.nv; ++c) {
            assign[v] = c;
            if (consistent_at(v) && !run(visit, v + 1)) return false;
        }
        assign[v] = -1;
        return true;
    }
};

// Same shape of search for reflexive homomorphisms: assigning v checks every
// ordered pair over the assigned prefix that involves v.
struct ReflSearch {
    const Graph& g;
    const Graph& h;
    std::vector<char> g_adj;
    std::vector<char> h_adj;
    std::vector<int> assign;

    ReflSearch(const Graph& gg, const Graph& hh) : g(gg), h(hh) {
        g_adj.assign(static_cast<size_t>(g.nv) * g.nv, 0);
        for (int e = 0; e < g.ne(); ++e) g_adj[static_cast<size_t>(g.src[e]) * g.nv + g.tgt[e]] = 1;
        h_adj.assign(static_cast<size_t>(h.nv) * h.nv, 0);
        for (int e = 0; e < h.ne(); ++e) h_adj[static_cast<size_t>(h.src[e]) * h.nv + h.tgt[e]] = 1;
        assign.assign(g.nv, -1);
    }

    bool source_has(int u, int v) const { return g_adj[static_cast<size_t>(u) * g.nv + v] != 0; }
    bool target_has(int u, int v) const { return h_adj[static_cast<size_t>(u) * h.nv + v] != 0; }

    bool consistent_at(int v) const {
        for (int u = 0; u <= v; ++u) {
            if (target_has(assign[u], assign[v]) && !source_has(u, v)) return false;
            if (target_has(assign[v], assign[u]) && !source_has(v, u)) return false;
        }
        return true;
    }

    template <typename Visit>
    bool run(Visit&& visit, int v = 0) {
        if (v == g.nv) return visit(assign);
        for (int c = 0; c < h.nv; ++c) {
            assign[v] = c;
            if (consistent_at(v) && !run(visit, v + 1)) return false;
        }
        assign[v] = -1;
        return true;
    }
};

void require_simple_target(const Graph& h) {
    if (!is_simple(h)) {
        throw std::invalid_argument("coloring target must be simple (at most one arc per ordered vertex pair)");
    }
}

}  // namespace

SolutionSet enumerate_homs(const Graph& g, const Graph& h) {
    require_simple_target(h);
    SolutionSet out;
    out.domain_vertices = g.nv;
    HomSearch search(g, h);
    search.run([&](const std::vector<int>& a) {
        out.sections.push_back(a);
        return true;
    });
    return out;
}

SolutionSet enumerate_refl_homs(const Graph& g, const Graph& h) {
    SolutionSet out;
    out.domain_vertices = g.nv;
    ReflSearch search(g, h);
    search.run([&](const std::vector<int>& a) {
        out.sections.push_back(a);
        return true;
    });
    return out;
}

std::optional<long long> count_homs(const Graph& g, const Graph& h, long long cap) {
    require_simple_target(h);
    long long n = 0;
    HomSearch search(g, h);
    bool finished = search.run([&](const std::vector<int>&) { return ++n <= cap; });
    if (!finished) return std::nullopt;
    return n;
}

std::optional<long long> count_refl_homs(const Graph& g, const Graph& h, long long cap) {
    long long n = 0;
    ReflSearch search(g, h);
    bool finished = search.run([&](const std::vector<int>&) { return ++n <= cap; });
    if (!finished) return std::nullopt;
    return n;
}

bool exists_hom(const Graph& g, const Graph& h) {
    require_simple_target(h);
    HomSearch search(g, h);
    return !search.run([](const std::vector<int>&) { return false; });
}

bool exists_refl_hom(const Graph& g, const Graph& h) {
    ReflSearch search(g, h);
    return !search.run([](const std::vector<int>&) { return false; });
}

GraphPullback graph_pullback(const Graph& a, const Graph& b, const Graph& c,
                             const GraphHom& f, const GraphHom& g) {
    if (f.vmap.cod != c.nv || g.vmap.cod != c.nv || f.emap.cod != c.ne() || g.emap.cod != c.ne()) {
        throw std::invalid_argument("graph_pullback: cospan legs do not share the stated codomain");
    }
    PullbackResult vs = pullback(f.vmap, g.vmap);
    PullbackResult es = pullback(f.emap, g.emap);

    // Vertex pair (a-vertex, b-vertex) -> apex vertex index.
    std::vector<int> pair_index(static_cast<size_t>(a.nv) * std::max(b.nv, 1), -1);
    for (int i = 0; i < vs.apex.size; ++i) {
        pair_index[static_cast<size_t>(vs.to_a.table[i]) * std::max(b.nv, 1) + vs.to_b.table[i]] = i;
    }

    GraphPullback out;
    out.apex.nv = vs.apex.size;
    out.apex.src.reserve(es.apex.size);
    out.apex.tgt.reserve(es.apex.size);
    for (int i = 0; i < es.apex.size; ++i) {
        int ea = es.to_a.table[i];
        int eb = es.to_b.table[i];
        // Naturality of f and g makes both endpoint pairs agree in c, so the
        // lookups cannot miss.
        out.apex.src.push_back(pair_index[static_cast<size_t>(a.src[ea]) * std::max(b.nv, 1) + b.src[eb]]);
        out.apex.tgt.push_back(pair_index[static_cast<size_t>(a.tgt[ea]) * std::max(b.nv, 1) + b.tgt[eb]]);
    }
    out.to_a = GraphHom{vs.to_a, es.to_a};
    out.to_b = GraphHom{vs.to_b, es.to_b};
    return out;
}

}  // namespace sheafdp
