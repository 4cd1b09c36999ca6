#include "sheafdp/generator.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace sheafdp {

namespace {

using Rng = std::mt19937_64;

int draw(Rng& rng, int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool chance(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Graph cyclic_window_bag(const Graph& total, int start, int w) {
    // Vertices start..start+w-1 (mod n) of a symmetric cycle, induced.
    std::vector<int> globals(w);
    for (int i = 0; i < w; ++i) globals[i] = (start + i) % total.nv;
    std::sort(globals.begin(), globals.end());
    Graph bag;
    bag.nv = w;
    std::vector<int> local(total.nv, -1);
    for (int i = 0; i < w; ++i) local[globals[i]] = i;
    for (int e = 0; e < total.ne(); ++e) {
        if (local[total.src[e]] >= 0 && local[total.tgt[e]] >= 0) {
            bag.src.push_back(local[total.src[e]]);
            bag.tgt.push_back(local[total.tgt[e]]);
        }
    }
    return bag;
}

struct Carver {
    Rng& rng;
    double density;
    bool allow_loops;
    // One decision per ordered global pair, shared by every bag that sees it.
    std::map<std::pair<int, int>, bool> pair_decision;
    std::vector<std::pair<int, int>> arcs;  // global arc list, in decision order

    bool arc_exists(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = pair_decision.find(key);
        if (it != pair_decision.end()) return it->second;
        bool keep = (a == b) ? (allow_loops && chance(rng, 0.1)) : chance(rng, density);
        pair_decision.emplace(key, keep);
        if (keep) arcs.push_back(key);
        return keep;
    }
};

// Bag induced on a sorted set of scaffold vertices; arcs in local
// lexicographic order so the encoding is canonical.
Graph induced_bag(Carver& carver, const std::vector<int>& globals) {
    Graph bag;
    bag.nv = static_cast<int>(globals.size());
    for (int i = 0; i < bag.nv; ++i) {
        for (int j = 0; j < bag.nv; ++j) {
            if (carver.arc_exists(globals[i], globals[j])) {
                bag.src.push_back(i);
                bag.tgt.push_back(j);
            }
        }
    }
    return bag;
}

GraphHom inclusion_leg(const std::vector<int>& apex_globals, const Graph& apex,
                       const std::vector<int>& bag_globals, const Graph& bag) {
    GraphHom leg;
    leg.vmap.cod = bag.nv;
    std::vector<int> bag_local;
    for (int g : apex_globals) {
        int pos = static_cast<int>(std::lower_bound(bag_globals.begin(), bag_globals.end(), g) -
                                   bag_globals.begin());
        leg.vmap.table.push_back(pos);
        bag_local.push_back(pos);
    }
    leg.emap.cod = bag.ne();
    for (int e = 0; e < apex.ne(); ++e) {
        int u = bag_local[apex.src[e]];
        int v = bag_local[apex.tgt[e]];
        leg.emap.table.push_back(arc_between(bag, u, v));
    }
    return leg;
}

}  // namespace

Graph make_target(const std::string& name, std::uint64_t seed) {
    if (name == "loop") return Graph{1, {0}, {0}};
    if (name == "random") {
        Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
        int n = draw(rng, 2, 4);
        Graph h{n, {}, {}};
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (chance(rng, i == j ? 0.2 : 0.45)) {
                    h.src.push_back(i);
                    h.tgt.push_back(j);
                }
            }
        }
        return h;
    }
    if (name.size() >= 2 && (name[0] == 'k' || name[0] == 'c' || name[0] == 'p')) {
        int n = std::stoi(name.substr(1));
        if (name[0] == 'k') return complete_sym(n);
        if (name[0] == 'c') return cycle_sym(n);
        return path_sym(n);
    }
    throw std::invalid_argument("unknown target '" + name + "'");
}

Instance generate_instance(const GenParams& p) {
    if (p.bags < 1) throw std::invalid_argument("need at least one bag");
    if (p.width < 1) throw std::invalid_argument("need width at least 1");
    if (p.kind == GenParams::Kind::Cyclic && p.bags < 3) {
        throw std::invalid_argument("cyclic shapes need at least 3 bags");
    }
    Rng rng(p.seed);

    Instance inst;
    inst.problem.kind = p.problem;
    inst.problem.target = make_target(p.target, p.seed);
    if (auto err = check_problem(inst.problem)) {
        throw std::invalid_argument("generated problem invalid: " + *err);
    }

    StructuredDecomposition& d = inst.decomposition;

    if (p.kind == GenParams::Kind::Cyclic) {
        int w = std::min(p.width, p.bags - 1);
        d.shape = directed_cycle(p.bags);
        Graph total = cycle_sym(p.bags);
        std::vector<std::vector<int>> globals(p.bags);
        for (int i = 0; i < p.bags; ++i) {
            for (int k = 0; k < w; ++k) globals[i].push_back((i + k) % p.bags);
            std::sort(globals[i].begin(), globals[i].end());
            d.bags.push_back(cyclic_window_bag(total, i, w));
        }
        auto bag_arc = [&](int bag, int gu, int gv) {
            const std::vector<int>& gs = globals[bag];
            int lu = static_cast<int>(std::lower_bound(gs.begin(), gs.end(), gu) - gs.begin());
            int lv = static_cast<int>(std::lower_bound(gs.begin(), gs.end(), gv) - gs.begin());
            return arc_between(d.bags[bag], lu, lv);
        };
        for (int e = 0; e < p.bags; ++e) {
            int x = e;
            int y = (e + 1) % p.bags;
            std::vector<int> shared;
            std::set_intersection(globals[x].begin(), globals[x].end(), globals[y].begin(),
                                  globals[y].end(), std::back_inserter(shared));
            AdhesionSpan span;
            std::vector<int> local_in_shared(total.nv, -1);
            for (size_t i = 0; i < shared.size(); ++i) local_in_shared[shared[i]] = static_cast<int>(i);
            span.apex.nv = static_cast<int>(shared.size());
            for (int a = 0; a < total.ne(); ++a) {
                int su = total.src[a];
                int sv = total.tgt[a];
                if (local_in_shared[su] >= 0 && local_in_shared[sv] >= 0) {
                    span.apex.src.push_back(local_in_shared[su]);
                    span.apex.tgt.push_back(local_in_shared[sv]);
                    span.leg_x.emap.table.push_back(bag_arc(x, su, sv));
                    span.leg_y.emap.table.push_back(bag_arc(y, su, sv));
                }
            }
            for (int g : shared) {
                span.leg_x.vmap.table.push_back(
                    static_cast<int>(std::lower_bound(globals[x].begin(), globals[x].end(), g) -
                                     globals[x].begin()));
                span.leg_y.vmap.table.push_back(
                    static_cast<int>(std::lower_bound(globals[y].begin(), globals[y].end(), g) -
                                     globals[y].begin()));
            }
            span.leg_x.vmap.cod = d.bags[x].nv;
            span.leg_x.emap.cod = d.bags[x].ne();
            span.leg_y.vmap.cod = d.bags[y].nv;
            span.leg_y.emap.cod = d.bags[y].ne();
            d.adhesions.push_back(std::move(span));
        }
        inst.fvs = std::vector<int>{0};
        validate_decomposition(d);
        return inst;
    }

    // Tree and Random: spanning tree shape, then extra arcs for Random.
    d.shape.nv = p.bags;
    std::vector<std::pair<int, int>> tree_edges;  // (parent, child)
    for (int v = 1; v < p.bags; ++v) {
        int parent = draw(rng, 0, v - 1);
        tree_edges.emplace_back(parent, v);
        if (chance(rng, 0.5)) {
            d.shape.src.push_back(parent);
            d.shape.tgt.push_back(v);
        } else {
            d.shape.src.push_back(v);
            d.shape.tgt.push_back(parent);
        }
    }

    // Vertex sets: the root gets fresh vertices; every child shares a
    // non-empty sample of its parent's vertices and adds fresh ones.
    std::vector<std::vector<int>> globals(p.bags);
    int next_global = 0;
    std::vector<int> sizes(p.bags);
    for (int v = 0; v < p.bags; ++v) sizes[v] = draw(rng, 1, p.width);
    for (int k = 0; k < sizes[0]; ++k) globals[0].push_back(next_global++);
    for (auto [parent, child] : tree_edges) {
        int overlap = draw(rng, 1, std::min(sizes[parent], sizes[child]));
        std::vector<int> pool = globals[parent];
        std::shuffle(pool.begin(), pool.end(), rng);
        globals[child].assign(pool.begin(), pool.begin() + overlap);
        for (int k = overlap; k < sizes[child]; ++k) globals[child].push_back(next_global++);
        std::sort(globals[child].begin(), globals[child].end());
    }

    // Extra shape arcs, one fvs vertex per added arc. Bias toward bag pairs
    // that already intersect so the cycles carry real constraints.
    std::vector<int> declared;
    if (p.kind == GenParams::Kind::Random) {
        auto arc_ok = [&](int u, int v) {
            if (u == v) return false;
            for (int a = 0; a < d.shape.ne(); ++a) {
                if ((d.shape.src[a] == u && d.shape.tgt[a] == v) ||
                    (d.shape.src[a] == v && d.shape.tgt[a] == u)) {
                    return false;
                }
            }
            return true;
        };
        auto intersects = [&](int u, int v) {
            std::vector<int> shared;
            std::set_intersection(globals[u].begin(), globals[u].end(), globals[v].begin(),
                                  globals[v].end(), std::back_inserter(shared));
            return !shared.empty();
        };
        for (int extra = 0; extra < p.fvs && p.bags >= 2; ++extra) {
            int best_u = -1, best_v = -1;
            for (int attempt = 0; attempt < 64; ++attempt) {
                int u = draw(rng, 0, p.bags - 1);
                int v = draw(rng, 0, p.bags - 1);
                if (!arc_ok(u, v)) continue;
                if (best_u < 0) {
                    best_u = u;
                    best_v = v;
                }
                if (intersects(u, v)) {
                    best_u = u;
                    best_v = v;
                    break;
                }
            }
            if (best_u < 0) break;
            d.shape.src.push_back(best_u);
            d.shape.tgt.push_back(best_v);
            declared.push_back(std::min(best_u, best_v));
        }
    }
    std::sort(declared.begin(), declared.end());
    declared.erase(std::unique(declared.begin(), declared.end()), declared.end());

    Carver carver{rng, p.density, /*allow_loops=*/p.problem == ProblemKind::ReflHColoring, {}, {}};
    for (int v = 0; v < p.bags; ++v) d.bags.push_back(induced_bag(carver, globals[v]));

    for (int a = 0; a < d.shape.ne(); ++a) {
        int x = d.shape.src[a];
        int y = d.shape.tgt[a];
        std::vector<int> shared;
        std::set_intersection(globals[x].begin(), globals[x].end(), globals[y].begin(),
                              globals[y].end(), std::back_inserter(shared));
        AdhesionSpan span;
        span.apex.nv = static_cast<int>(shared.size());
        for (size_t i = 0; i < shared.size(); ++i) {
            for (size_t j = 0; j < shared.size(); ++j) {
                auto it = carver.pair_decision.find({shared[i], shared[j]});
                if (it != carver.pair_decision.end() && it->second) {
                    span.apex.src.push_back(static_cast<int>(i));
                    span.apex.tgt.push_back(static_cast<int>(j));
                }
            }
        }
        span.leg_x = inclusion_leg(shared, span.apex, globals[x], d.bags[x]);
        span.leg_y = inclusion_leg(shared, span.apex, globals[y], d.bags[y]);
        d.adhesions.push_back(std::move(span));
    }

    inst.fvs = declared;
    validate_decomposition(d);
    if (!is_fvs(d.shape, *inst.fvs)) {
        throw std::logic_error("generator produced a declared set that is not an fvs");
    }
    return inst;
}

}  // namespace sheafdp
