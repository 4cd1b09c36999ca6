#include "sheafdp/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sheafdp {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Canonical labels: classes numbered by their smallest member.
std::vector<int> canonical_labels(UnionFind& uf, int n, int& classes) {
    std::vector<int> label(n, -1);
    classes = 0;
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (label[r] < 0) label[r] = classes++;
        label[i] = label[r];
    }
    return label;
}

std::vector<std::vector<int>> undirected_adjacency(const Graph& g) {
    std::vector<std::vector<int>> adj(g.nv);
    for (int e = 0; e < g.ne(); ++e) {
        adj[g.src[e]].push_back(g.tgt[e]);
        adj[g.tgt[e]].push_back(g.src[e]);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

// One undirected cycle through the surviving vertices, or empty. The shape
// restrictions (no loops, no antiparallel pairs, no multi-arcs) make the
// underlying graph simple, so parent-skipping DFS is enough.
std::vector<int> find_cycle(const std::vector<std::vector<int>>& adj, const std::vector<char>& removed) {
    int n = static_cast<int>(adj.size());
    std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<int> parent(n, -1);
    for (int start = 0; start < n; ++start) {
        if (removed[start] || state[start] != 0) continue;
        std::vector<int> stack{start};
        state[start] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            bool advanced = false;
            for (int w : adj[v]) {
                if (removed[w] || w == parent[v]) continue;
                if (state[w] == 1) {
                    std::vector<int> cycle{w};
                    for (int u = v; u != w; u = parent[u]) cycle.push_back(u);
                    return cycle;
                }
                if (state[w] == 0) {
                    parent[w] = v;
                    state[w] = 1;
                    stack.push_back(w);
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

// Exact bounded branching: a feedback vertex set of size <= k using only
// vertices >= lo exists iff some cycle vertex >= lo can be deleted and the
// remainder solved with budget k - 1.
bool fvs_exists(const std::vector<std::vector<int>>& adj, std::vector<char>& removed, int k, int lo) {
    std::vector<int> cycle = find_cycle(adj, removed);
    if (cycle.empty()) return true;
    if (k == 0) return false;
    std::sort(cycle.begin(), cycle.end());
    for (int v : cycle) {
        if (v < lo) continue;
        removed[v] = 1;
        bool ok = fvs_exists(adj, removed, k - 1, lo);
        removed[v] = 0;
        if (ok) return true;
    }
    return false;
}

}  // namespace

std::optional<std::string> check_shape(const Graph& shape) {
    if (auto err = check_graph(shape)) return err;
    for (int e = 0; e < shape.ne(); ++e) {
        if (shape.src[e] == shape.tgt[e]) {
            return "shape arc " + std::to_string(e) + " is a loop";
        }
    }
    for (int e = 0; e < shape.ne(); ++e) {
        for (int f = e + 1; f < shape.ne(); ++f) {
            if (shape.src[e] == shape.src[f] && shape.tgt[e] == shape.tgt[f]) {
                return "shape arcs " + std::to_string(e) + " and " + std::to_string(f) +
                       " are parallel";
            }
            if (shape.src[e] == shape.tgt[f] && shape.tgt[e] == shape.src[f]) {
                return "shape arcs " + std::to_string(e) + " and " + std::to_string(f) +
                       " are antiparallel";
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> check_decomposition(const StructuredDecomposition& d) {
    if (auto err = check_shape(d.shape)) return err;
    if (static_cast<int>(d.bags.size()) != d.shape.nv) {
        return "expected " + std::to_string(d.shape.nv) + " bags, got " + std::to_string(d.bags.size());
    }
    if (static_cast<int>(d.adhesions.size()) != d.shape.ne()) {
        return "expected " + std::to_string(d.shape.ne()) + " adhesions, got " +
               std::to_string(d.adhesions.size());
    }
    for (int v = 0; v < d.shape.nv; ++v) {
        if (auto err = check_graph(d.bags[v])) return "bag " + std::to_string(v) + ": " + *err;
    }
    for (int e = 0; e < d.shape.ne(); ++e) {
        const AdhesionSpan& a = d.adhesions[e];
        if (auto err = check_graph(a.apex)) return "adhesion " + std::to_string(e) + ": " + *err;
        if (auto err = check_hom(a.leg_x, a.apex, d.bags[d.shape.src[e]])) {
            return "adhesion " + std::to_string(e) + " leg_x: " + *err;
        }
        if (auto err = check_hom(a.leg_y, a.apex, d.bags[d.shape.tgt[e]])) {
            return "adhesion " + std::to_string(e) + " leg_y: " + *err;
        }
        if (!is_mono(a.leg_x)) return "adhesion " + std::to_string(e) + ": non-monic leg_x";
        if (!is_mono(a.leg_y)) return "adhesion " + std::to_string(e) + ": non-monic leg_y";
    }
    return std::nullopt;
}

void validate_decomposition(const StructuredDecomposition& d) {
    if (auto err = check_decomposition(d)) {
        throw std::invalid_argument("invalid decomposition: " + *err);
    }
}

ColimitResult colim(const StructuredDecomposition& d) {
    validate_decomposition(d);
    int nvert = 0;
    int narc = 0;
    std::vector<int> off_v(d.bags.size() + 1, 0);
    std::vector<int> off_e(d.bags.size() + 1, 0);
    for (size_t i = 0; i < d.bags.size(); ++i) {
        off_v[i] = nvert;
        off_e[i] = narc;
        nvert += d.bags[i].nv;
        narc += d.bags[i].ne();
    }
    off_v[d.bags.size()] = nvert;
    off_e[d.bags.size()] = narc;

    UnionFind vf(nvert);
    UnionFind ef(narc);
    for (int e = 0; e < d.shape.ne(); ++e) {
        const AdhesionSpan& a = d.adhesions[e];
        int x = d.shape.src[e];
        int y = d.shape.tgt[e];
        for (int u = 0; u < a.apex.nv; ++u) {
            vf.unite(off_v[x] + a.leg_x.vmap.table[u], off_v[y] + a.leg_y.vmap.table[u]);
        }
        for (int q = 0; q < a.apex.ne(); ++q) {
            ef.unite(off_e[x] + a.leg_x.emap.table[q], off_e[y] + a.leg_y.emap.table[q]);
        }
    }

    ColimitResult r;
    std::vector<int> vlabel = canonical_labels(vf, nvert, r.total.nv);
    int total_arcs = 0;
    std::vector<int> elabel = canonical_labels(ef, narc, total_arcs);

    // Endpoints of merged arcs agree up to the vertex merging (naturality of
    // the legs), so any class member determines them.
    std::vector<int> global_src(narc), global_tgt(narc);
    for (size_t i = 0; i < d.bags.size(); ++i) {
        for (int e = 0; e < d.bags[i].ne(); ++e) {
            global_src[off_e[i] + e] = vlabel[off_v[i] + d.bags[i].src[e]];
            global_tgt[off_e[i] + e] = vlabel[off_v[i] + d.bags[i].tgt[e]];
        }
    }
    r.total.src.assign(total_arcs, -1);
    r.total.tgt.assign(total_arcs, -1);
    for (int e = 0; e < narc; ++e) {
        r.total.src[elabel[e]] = global_src[e];
        r.total.tgt[elabel[e]] = global_tgt[e];
    }

    r.cocone.reserve(d.bags.size());
    for (size_t i = 0; i < d.bags.size(); ++i) {
        GraphHom h;
        h.vmap.cod = r.total.nv;
        h.vmap.table.assign(vlabel.begin() + off_v[i], vlabel.begin() + off_v[i + 1]);
        h.emap.cod = r.total.ne();
        h.emap.table.assign(elabel.begin() + off_e[i], elabel.begin() + off_e[i + 1]);
        r.cocone.push_back(std::move(h));
    }
    return r;
}

StructuredDecomposition restrict_along_mono(const StructuredDecomposition& d, const Graph& x,
                                            const GraphHom& f) {
    ColimitResult glued = colim(d);
    validate_hom(f, x, glued.total);
    if (!is_mono(f)) throw std::invalid_argument("restrict_along_mono: f is not a monomorphism");

    StructuredDecomposition out;
    out.shape = d.shape;

    // Per-bag pullbacks plus reverse lookups from (x-element, bag-element)
    // pairs to the pullback's canonical indices.
    std::vector<GraphPullback> bag_pb(d.bags.size());
    std::vector<std::vector<int>> vpair_index(d.bags.size());
    std::vector<std::vector<int>> epair_index(d.bags.size());
    for (size_t v = 0; v < d.bags.size(); ++v) {
        bag_pb[v] = graph_pullback(x, d.bags[v], glued.total, f, glued.cocone[v]);
        const GraphPullback& pb = bag_pb[v];
        vpair_index[v].assign(static_cast<size_t>(x.nv) * std::max(d.bags[v].nv, 1), -1);
        for (int i = 0; i < pb.apex.nv; ++i) {
            vpair_index[v][static_cast<size_t>(pb.to_a.vmap.table[i]) * std::max(d.bags[v].nv, 1) +
                           pb.to_b.vmap.table[i]] = i;
        }
        epair_index[v].assign(static_cast<size_t>(x.ne()) * std::max(d.bags[v].ne(), 1), -1);
        for (int i = 0; i < pb.apex.ne(); ++i) {
            epair_index[v][static_cast<size_t>(pb.to_a.emap.table[i]) * std::max(d.bags[v].ne(), 1) +
                           pb.to_b.emap.table[i]] = i;
        }
        out.bags.push_back(pb.apex);
    }

    for (int e = 0; e < d.shape.ne(); ++e) {
        const AdhesionSpan& a = d.adhesions[e];
        int sv = d.shape.src[e];
        int tv = d.shape.tgt[e];
        GraphHom lambda_e = compose(a.leg_x, glued.cocone[sv]);
        GraphPullback pb = graph_pullback(x, a.apex, glued.total, f, lambda_e);

        // The new legs are the unique maps into the bag pullbacks induced by
        // (x-component, old leg . apex-component).
        auto make_leg = [&](const GraphHom& old_leg, int bag) {
            GraphHom leg;
            leg.vmap.cod = bag_pb[bag].apex.nv;
            for (int i = 0; i < pb.apex.nv; ++i) {
                int xv = pb.to_a.vmap.table[i];
                int bv = old_leg.vmap.table[pb.to_b.vmap.table[i]];
                leg.vmap.table.push_back(
                    vpair_index[bag][static_cast<size_t>(xv) * std::max(d.bags[bag].nv, 1) + bv]);
            }
            leg.emap.cod = bag_pb[bag].apex.ne();
            for (int i = 0; i < pb.apex.ne(); ++i) {
                int xe = pb.to_a.emap.table[i];
                int be = old_leg.emap.table[pb.to_b.emap.table[i]];
                leg.emap.table.push_back(
                    epair_index[bag][static_cast<size_t>(xe) * std::max(d.bags[bag].ne(), 1) + be]);
            }
            return leg;
        };

        AdhesionSpan na;
        na.apex = pb.apex;
        na.leg_x = make_leg(a.leg_x, sv);
        na.leg_y = make_leg(a.leg_y, tv);
        out.adhesions.push_back(std::move(na));
    }
    return out;
}

int width(const StructuredDecomposition& d) {
    int w = 0;
    for (const Graph& b : d.bags) w = std::max(w, b.nv);
    return w;
}

bool is_fvs(const Graph& shape, std::span<const int> s) {
    std::vector<char> removed(shape.nv, 0);
    for (int v : s) {
        if (v < 0 || v >= shape.nv) return false;
        removed[v] = 1;
    }
    return find_cycle(undirected_adjacency(shape), removed).empty();
}

std::vector<int> find_fvs(const Graph& shape) {
    if (auto err = check_shape(shape)) throw std::invalid_argument("invalid shape: " + *err);
    std::vector<std::vector<int>> adj = undirected_adjacency(shape);
    std::vector<char> removed(shape.nv, 0);

    int k = 0;
    while (!fvs_exists(adj, removed, k, 0)) ++k;

    // Lexicographically smallest set of that size: grow the set by the
    // smallest vertex that still admits a completion among larger vertices.
    std::vector<int> s;
    int lo = 0;
    while (!find_cycle(adj, removed).empty()) {
        for (int v = lo; v < shape.nv; ++v) {
            removed[v] = 1;
            if (fvs_exists(adj, removed, k - static_cast<int>(s.size()) - 1, v + 1)) {
                s.push_back(v);
                lo = v + 1;
                break;
            }
            removed[v] = 0;
        }
    }
    return s;
}

}  // namespace sheafdp
