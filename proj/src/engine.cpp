#include "sheafdp/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sheafdp {

namespace {

using LiveMasks = std::vector<std::vector<char>>;

// Filters one arc in place. Both sides are pruned against the other side's
// incoming live subset, which matches replacing them by the images of the
// pullback projections.
bool filter_edge_masks(const SolCoDecomp& c, int arc, LiveMasks& live) {
    int x = c.shape.src[arc];
    int y = c.shape.tgt[arc];
    int m = c.adhesion_sets[arc].size();
    const std::vector<int>& rx = c.rho_x[arc].table;
    const std::vector<int>& ry = c.rho_y[arc].table;
    std::vector<int> seen_x(m, 0), seen_y(m, 0);
    for (size_t i = 0; i < live[x].size(); ++i) {
        if (live[x][i]) ++seen_x[rx[i]];
    }
    for (size_t j = 0; j < live[y].size(); ++j) {
        if (live[y][j]) ++seen_y[ry[j]];
    }
    bool changed = false;
    for (size_t i = 0; i < live[x].size(); ++i) {
        if (live[x][i] && seen_y[rx[i]] == 0) {
            live[x][i] = 0;
            changed = true;
        }
    }
    for (size_t j = 0; j < live[y].size(); ++j) {
        if (live[y][j] && seen_x[ry[j]] == 0) {
            live[y][j] = 0;
            changed = true;
        }
    }
    return changed;
}

void require_arc(const SolCoDecomp& c, int arc) {
    if (arc < 0 || arc >= c.shape.ne()) {
        throw std::invalid_argument("arc index " + std::to_string(arc) + " out of range");
    }
}

// Rooted traversal data for the forest induced by the enabled arcs. Roots are
// the smallest vertex of each component; neighbor order is ascending, so the
// schedule is deterministic.
struct ForestSchedule {
    std::vector<int> order;       // vertices in visit order, component by component
    std::vector<int> parent;      // -1 at roots
    std::vector<int> parent_arc;  // arc joining a vertex to its parent, -1 at roots
};

ForestSchedule forest_schedule(const Graph& shape, const std::vector<char>& arc_enabled) {
    std::vector<std::vector<std::pair<int, int>>> adj(shape.nv);  // (neighbor, arc)
    for (int a = 0; a < shape.ne(); ++a) {
        if (!arc_enabled[a]) continue;
        adj[shape.src[a]].emplace_back(shape.tgt[a], a);
        adj[shape.tgt[a]].emplace_back(shape.src[a], a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());

    ForestSchedule s;
    s.parent.assign(shape.nv, -1);
    s.parent_arc.assign(shape.nv, -1);
    std::vector<char> visited(shape.nv, 0);
    s.order.reserve(shape.nv);
    for (int root = 0; root < shape.nv; ++root) {
        if (visited[root]) continue;
        visited[root] = 1;
        size_t head = s.order.size();
        s.order.push_back(root);
        while (head < s.order.size()) {
            int v = s.order[head++];
            for (auto [w, a] : adj[v]) {
                if (a == s.parent_arc[v]) continue;
                if (visited[w]) throw std::invalid_argument("shape is not a forest");
                visited[w] = 1;
                s.parent[w] = v;
                s.parent_arc[w] = a;
                s.order.push_back(w);
            }
        }
    }
    return s;
}

// Leaf-to-root then root-to-leaf over one precomputed schedule.
void two_pass_filter(const SolCoDecomp& c, const ForestSchedule& s, LiveMasks& live,
                     long long* edge_filters) {
    for (auto it = s.order.rbegin(); it != s.order.rend(); ++it) {
        if (s.parent_arc[*it] >= 0) {
            filter_edge_masks(c, s.parent_arc[*it], live);
            if (edge_filters) ++*edge_filters;
        }
    }
    for (int v : s.order) {
        if (s.parent_arc[v] >= 0) {
            filter_edge_masks(c, s.parent_arc[v], live);
            if (edge_filters) ++*edge_filters;
        }
    }
}

int count_live(const std::vector<char>& mask) {
    int n = 0;
    for (char x : mask) n += (x != 0);
    return n;
}

bool any_empty(const LiveMasks& live) {
    for (const std::vector<char>& mask : live) {
        if (count_live(mask) == 0) return true;
    }
    return false;
}

// Root-anchored deterministic selection; valid whenever the masks are
// mutually supported along the enabled arcs (which the two passes establish).
MatchingFamily extract_family(const SolCoDecomp& c, const ForestSchedule& s, const LiveMasks& live) {
    MatchingFamily fam(c.shape.nv, -1);
    for (int v : s.order) {
        if (s.parent[v] < 0) {
            for (size_t j = 0; j < live[v].size(); ++j) {
                if (live[v][j]) {
                    fam[v] = static_cast<int>(j);
                    break;
                }
            }
        } else {
            int a = s.parent_arc[v];
            bool child_is_src = (c.shape.src[a] == v);
            const std::vector<int>& r_child = child_is_src ? c.rho_x[a].table : c.rho_y[a].table;
            const std::vector<int>& r_parent = child_is_src ? c.rho_y[a].table : c.rho_x[a].table;
            int want = r_parent[fam[s.parent[v]]];
            for (size_t j = 0; j < live[v].size(); ++j) {
                if (live[v][j] && r_child[j] == want) {
                    fam[v] = static_cast<int>(j);
                    break;
                }
            }
        }
    }
    return fam;
}

std::vector<int> counts_of(const LiveMasks& live) {
    std::vector<int> out(live.size());
    for (size_t v = 0; v < live.size(); ++v) out[v] = count_live(live[v]);
    return out;
}

// Shared backtracking over live section choices in shape vertex order,
// pruning on every arc whose endpoints are both assigned. Returns false when
// the node budget runs out.
template <typename Visit>
bool family_search(const SolCoDecomp& c, long long node_cap, long long& nodes, Visit&& visit) {
    int n = c.shape.nv;
    std::vector<std::vector<int>> arcs_at(n);  // keyed by the later endpoint
    for (int a = 0; a < c.shape.ne(); ++a) {
        arcs_at[std::max(c.shape.src[a], c.shape.tgt[a])].push_back(a);
    }
    MatchingFamily fam(n, -1);

    auto consistent_at = [&](int v) {
        for (int a : arcs_at[v]) {
            if (c.rho_x[a].table[fam[c.shape.src[a]]] != c.rho_y[a].table[fam[c.shape.tgt[a]]]) {
                return false;
            }
        }
        return true;
    };

    // Iterative enumeration is natural here, but the recursion depth equals
    // the shape order, which stays small.
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == n) return visit(fam);
        for (size_t j = 0; j < c.live[v].size(); ++j) {
            if (!c.live[v][j]) continue;
            if (++nodes > node_cap) return false;
            fam[v] = static_cast<int>(j);
            if (consistent_at(v) && !self(self, v + 1)) {
                fam[v] = -1;
                return false;
            }
        }
        fam[v] = -1;
        return true;
    };
    return rec(rec, 0);
}

std::string product_bound_message(const SolCoDecomp& c) {
    double product = 1;
    for (size_t v = 0; v < c.live.size(); ++v) product *= std::max(1, c.live_count(static_cast<int>(v)));
    return "live-subset product bound " + std::to_string(product);
}

}  // namespace

SolCoDecomp filter_edge(const SolCoDecomp& c, int arc) {
    require_arc(c, arc);
    SolCoDecomp out = c;
    filter_edge_masks(out, arc, out.live);
    return out;
}

SolCoDecomp filter_all(const SolCoDecomp& c, FilterOrder order, std::span<const int> edges) {
    SolCoDecomp out = c;
    switch (order) {
        case FilterOrder::AsGiven: {
            if (static_cast<int>(edges.size()) != c.shape.ne()) {
                throw std::invalid_argument("as-given edge list is not a permutation of the arcs");
            }
            std::vector<char> seen(c.shape.ne(), 0);
            for (int a : edges) {
                require_arc(c, a);
                if (seen[a]) throw std::invalid_argument("as-given edge list repeats arc " + std::to_string(a));
                seen[a] = 1;
            }
            for (int a : edges) filter_edge_masks(out, a, out.live);
            break;
        }
        case FilterOrder::LeafToRoot: {
            ForestSchedule s = forest_schedule(c.shape, std::vector<char>(c.shape.ne(), 1));
            for (auto it = s.order.rbegin(); it != s.order.rend(); ++it) {
                if (s.parent_arc[*it] >= 0) filter_edge_masks(out, s.parent_arc[*it], out.live);
            }
            break;
        }
        case FilterOrder::Fixpoint: {
            bool changed = true;
            while (changed) {
                changed = false;
                for (int a = 0; a < c.shape.ne(); ++a) {
                    changed |= filter_edge_masks(out, a, out.live);
                }
            }
            break;
        }
    }
    return out;
}

TreeSolveResult tree_solve(const SolCoDecomp& c) {
    ForestSchedule s = forest_schedule(c.shape, std::vector<char>(c.shape.ne(), 1));
    TreeSolveResult r;
    r.filtered = c;
    two_pass_filter(r.filtered, s, r.filtered.live, nullptr);
    if (any_empty(r.filtered.live)) {
        // No matching family exists, so no section anywhere extends globally.
        for (std::vector<char>& mask : r.filtered.live) std::fill(mask.begin(), mask.end(), 0);
        r.verdict.satisfiable = false;
    } else {
        r.verdict.satisfiable = true;
        r.verdict.witness = extract_family(r.filtered, s, r.filtered.live);
        if (!is_matching_family(r.filtered, *r.verdict.witness)) {
            throw std::logic_error("tree_solve extracted an inconsistent witness");
        }
    }
    r.verdict.live_counts = counts_of(r.filtered.live);
    return r;
}

std::vector<MatchingFamily> limit_sections(const SolCoDecomp& c, const EngineLimits& limits) {
    std::vector<MatchingFamily> out;
    long long nodes = 0;
    bool finished = family_search(c, limits.oracle_node_cap, nodes, [&](const MatchingFamily& fam) {
        out.push_back(fam);
        return true;
    });
    if (!finished) {
        throw CapExceeded("limit_sections: node cap " + std::to_string(limits.oracle_node_cap) +
                          " exceeded (" + product_bound_message(c) + ")");
    }
    return out;
}

std::optional<long long> count_matching_families(const SolCoDecomp& c, long long node_cap) {
    long long count = 0;
    long long nodes = 0;
    bool finished = family_search(c, node_cap, nodes, [&](const MatchingFamily&) {
        ++count;
        return true;
    });
    if (!finished) return std::nullopt;
    return count;
}

SolCoDecomp extendable_sections(const SolCoDecomp& c, const EngineLimits& limits) {
    std::vector<MatchingFamily> families = limit_sections(c, limits);
    SolCoDecomp out = c;
    for (std::vector<char>& mask : out.live) std::fill(mask.begin(), mask.end(), 0);
    for (const MatchingFamily& fam : families) {
        for (int v = 0; v < c.shape.nv; ++v) out.live[v][fam[v]] = 1;
    }
    return out;
}

Verdict fvs_decide(const SolCoDecomp& c, std::span<const int> fvs, const EngineLimits& limits,
                   DecideStats* stats) {
    std::vector<int> s(fvs.begin(), fvs.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int v : s) {
        if (v < 0 || v >= c.shape.nv) {
            throw std::invalid_argument("fvs vertex " + std::to_string(v) + " out of range");
        }
    }
    if (!is_fvs(c.shape, s)) {
        throw std::invalid_argument("supplied vertex set is not a feedback vertex set of the shape");
    }

    long long product = 1;
    for (int v : s) {
        product *= c.live_count(v);
        if (product > limits.sigma_product_cap) {
            throw CapExceeded("fvs_decide: assignment product exceeds cap " +
                              std::to_string(limits.sigma_product_cap));
        }
        if (product == 0) break;
    }

    std::vector<char> in_fvs(c.shape.nv, 0);
    for (int v : s) in_fvs[v] = 1;
    std::vector<int> incident;
    std::vector<char> enabled(c.shape.ne(), 1);
    for (int a = 0; a < c.shape.ne(); ++a) {
        if (in_fvs[c.shape.src[a]] || in_fvs[c.shape.tgt[a]]) {
            incident.push_back(a);
            enabled[a] = 0;
        }
    }
    ForestSchedule schedule = forest_schedule(c.shape, enabled);

    // Live section indices at each fvs vertex, in ascending order.
    std::vector<std::vector<int>> choices(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        for (size_t j = 0; j < c.live[s[i]].size(); ++j) {
            if (c.live[s[i]][j]) choices[i].push_back(static_cast<int>(j));
        }
    }

    Verdict verdict;
    LiveMasks work;
    std::vector<int> odometer(s.size(), 0);
    bool more = (product > 0);
    while (more) {
        if (stats) ++stats->sigma_count;
        work = c.live;
        for (size_t i = 0; i < s.size(); ++i) {
            std::fill(work[s[i]].begin(), work[s[i]].end(), 0);
            work[s[i]][choices[i][odometer[i]]] = 1;
        }
        for (int a : incident) {
            filter_edge_masks(c, a, work);
            if (stats) ++stats->edge_filters;
        }
        two_pass_filter(c, schedule, work, stats ? &stats->edge_filters : nullptr);
        if (!any_empty(work)) {
            verdict.satisfiable = true;
            // The selection satisfies the dropped arcs too: their fvs side is
            // pinned to a single section every survivor already agrees with.
            verdict.witness = extract_family(c, schedule, work);
            if (!is_matching_family(c, *verdict.witness)) {
                throw std::logic_error("fvs_decide extracted an inconsistent witness");
            }
            verdict.live_counts = counts_of(work);
            return verdict;
        }
        // Advance the odometer, last coordinate fastest.
        more = false;
        for (size_t i = s.size(); i-- > 0;) {
            if (++odometer[i] < static_cast<int>(choices[i].size())) {
                more = true;
                break;
            }
            odometer[i] = 0;
        }
    }
    // Either some fvs bag had no live section at all, or every assignment
    // propagated to a contradiction.
    verdict.satisfiable = false;
    verdict.live_counts = work.empty() ? counts_of(c.live) : counts_of(work);
    return verdict;
}

Verdict decide(const ProblemFunctor& f, const StructuredDecomposition& d,
               std::optional<std::vector<int>> fvs, const EngineLimits& limits, DecideStats* stats) {
    SolCoDecomp c = apply_sd(f, d);
    std::vector<int> s = fvs ? std::move(*fvs) : find_fvs(d.shape);
    return fvs_decide(c, s, limits, stats);
}

Verdict oracle_decide(const ProblemFunctor& f, const StructuredDecomposition& d) {
    ColimitResult glued = colim(d);
    Verdict v;
    v.satisfiable = exists_section(f, glued.total);
    return v;
}

bool naive_bag_conjunction(const SolCoDecomp& c) {
    for (const SolutionSet& s : c.bag_sets) {
        if (s.size() == 0) return false;
    }
    for (const SolutionSet& s : c.adhesion_sets) {
        if (s.size() == 0) return false;
    }
    return true;
}

bool is_matching_family(const SolCoDecomp& c, const MatchingFamily& family) {
    if (family.size() != static_cast<size_t>(c.shape.nv)) return false;
    for (int v = 0; v < c.shape.nv; ++v) {
        int j = family[v];
        if (j < 0 || j >= c.bag_sets[v].size() || !c.live[v][j]) return false;
    }
    for (int a = 0; a < c.shape.ne(); ++a) {
        if (c.rho_x[a].table[family[c.shape.src[a]]] != c.rho_y[a].table[family[c.shape.tgt[a]]]) {
            return false;
        }
    }
    return true;
}

std::vector<int> glue_family(const StructuredDecomposition& d, const ColimitResult& glued,
                             const SolCoDecomp& c, const MatchingFamily& family) {
    if (family.size() != static_cast<size_t>(d.shape.nv)) {
        throw std::invalid_argument("family has wrong length");
    }
    std::vector<int> assignment(glued.total.nv, -1);
    for (int v = 0; v < d.shape.nv; ++v) {
        const std::vector<int>& section = c.bag_sets[v].sections.at(family[v]);
        for (int u = 0; u < d.bags[v].nv; ++u) {
            assignment[glued.cocone[v].vmap.table[u]] = section[u];
        }
    }
    return assignment;
}

bool is_forest(const Graph& shape) {
    return is_fvs(shape, {});
}

}  // namespace sheafdp
