#include "sheafdp/instances.hpp"

#include <stdexcept>

namespace sheafdp {

namespace {

// Sections {[0], [1], ..., [n-1]} over a one-vertex domain; handy for
// synthetic co-decompositions whose sections carry no graph meaning.
SolutionSet opaque_set(int n) {
    SolutionSet s;
    s.domain_vertices = 1;
    for (int i = 0; i < n; ++i) s.sections.push_back({i});
    return s;
}

}  // namespace

StructuredDecomposition two_path_cycle_decomposition() {
    StructuredDecomposition d;
    d.shape = Graph{2, {0}, {1}};
    d.bags = {path_sym(3), path_sym(4)};

    AdhesionSpan span;
    span.apex = edgeless(2);
    span.leg_x.vmap = FinFn{{0, 2}, 3};  // the two endpoints of the short path
    span.leg_x.emap = FinFn{{}, d.bags[0].ne()};
    span.leg_y.vmap = FinFn{{0, 3}, 4};  // the two endpoints of the long path
    span.leg_y.emap = FinFn{{}, d.bags[1].ne()};
    d.adhesions.push_back(std::move(span));
    validate_decomposition(d);
    return d;
}

StructuredDecomposition cycle_of_edges(int n) {
    if (n < 3) throw std::invalid_argument("cycle_of_edges: need n >= 3");
    StructuredDecomposition d;
    d.shape = directed_cycle(n);

    // Bag i holds cycle vertices i and (i+1) mod n in ascending order, with
    // both arc orientations between them.
    auto local_of = [n](int bag, int global) {
        int a = bag;
        int b = (bag + 1) % n;
        int lo = std::min(a, b);
        return global == lo ? 0 : 1;
    };
    for (int i = 0; i < n; ++i) {
        Graph bag;
        bag.nv = 2;
        int u = local_of(i, i);
        int v = local_of(i, (i + 1) % n);
        bag.src = {u, v};
        bag.tgt = {v, u};
        d.bags.push_back(bag);
    }
    for (int i = 0; i < n; ++i) {
        int shared = (i + 1) % n;  // the cycle vertex both bags contain
        AdhesionSpan span;
        span.apex = edgeless(1);
        span.leg_x.vmap = FinFn{{local_of(i, shared)}, 2};
        span.leg_x.emap = FinFn{{}, d.bags[i].ne()};
        span.leg_y.vmap = FinFn{{local_of(shared, shared)}, 2};
        span.leg_y.emap = FinFn{{}, d.bags[shared].ne()};
        d.adhesions.push_back(std::move(span));
    }
    validate_decomposition(d);
    return d;
}

StructuredDecomposition path_of_edges(int edges) {
    if (edges < 1) throw std::invalid_argument("path_of_edges: need edges >= 1");
    StructuredDecomposition d;
    d.shape = directed_path(edges);
    for (int i = 0; i < edges; ++i) {
        // Bag i holds path vertices i, i+1; local 0 is the smaller one.
        Graph bag;
        bag.nv = 2;
        bag.src = {0, 1};
        bag.tgt = {1, 0};
        d.bags.push_back(bag);
    }
    for (int i = 0; i + 1 < edges; ++i) {
        AdhesionSpan span;
        span.apex = edgeless(1);
        span.leg_x.vmap = FinFn{{1}, 2};  // vertex i+1 inside bag i
        span.leg_x.emap = FinFn{{}, 2};
        span.leg_y.vmap = FinFn{{0}, 2};  // vertex i+1 inside bag i+1
        span.leg_y.emap = FinFn{{}, 2};
        d.adhesions.push_back(std::move(span));
    }
    validate_decomposition(d);
    return d;
}

SolCoDecomp equality_chain() {
    SolCoDecomp c;
    c.shape = directed_path(4);  // arcs 0: a->b, 1: b->c, 2: c->d
    c.bag_sets = {opaque_set(1), opaque_set(2), opaque_set(2), opaque_set(1)};
    for (const SolutionSet& s : c.bag_sets) c.live.emplace_back(s.size(), 1);
    c.adhesion_sets = {opaque_set(2), opaque_set(2), opaque_set(2)};
    c.rho_x = {FinFn{{0}, 2}, FinFn{{0, 1}, 2}, FinFn{{0, 1}, 2}};
    c.rho_y = {FinFn{{0, 1}, 2}, FinFn{{0, 1}, 2}, FinFn{{1}, 2}};
    return c;
}

StructuredDecomposition disjoint_union(const StructuredDecomposition& a,
                                       const StructuredDecomposition& b) {
    StructuredDecomposition d = a;
    d.shape.nv += b.shape.nv;
    for (int e = 0; e < b.shape.ne(); ++e) {
        d.shape.src.push_back(b.shape.src[e] + a.shape.nv);
        d.shape.tgt.push_back(b.shape.tgt[e] + a.shape.nv);
    }
    d.bags.insert(d.bags.end(), b.bags.begin(), b.bags.end());
    d.adhesions.insert(d.adhesions.end(), b.adhesions.begin(), b.adhesions.end());
    return d;
}

}  // namespace sheafdp
