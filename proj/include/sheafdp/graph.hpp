#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sheafdp/finset.hpp"

namespace sheafdp {

// Finite directed multigraph: arc i runs src[i] -> tgt[i]. Parallel arcs and
// loops are allowed in general; shape graphs and coloring targets carry extra
// restrictions checked where they are needed. Symmetric simple graphs (K_n,
// C_n, paths) are encoded with both orientations of every edge, so that a
// homomorphism of encodings coincides with an undirected homomorphism.
struct Graph {
    int nv = 0;
    std::vector<int> src;
    std::vector<int> tgt;

    int ne() const { return static_cast<int>(src.size()); }

    friend bool operator==(const Graph&, const Graph&) = default;
};

std::optional<std::string> check_graph(const Graph& g);

// At most one arc per ordered vertex pair (loops count as the pair (v, v)).
bool is_simple(const Graph& g);
bool has_arc(const Graph& g, int u, int v);
// Index of the unique arc u -> v, or -1. Meaningful for simple graphs.
int arc_between(const Graph& g, int u, int v);

Graph edgeless(int n);
Graph complete_sym(int n);   // irreflexive K_n, both orientations per pair
Graph cycle_sym(int n);      // C_n, both orientations per edge
Graph path_sym(int n);       // path on n vertices, both orientations per edge
Graph directed_cycle(int n); // arcs i -> i+1 (mod n)
Graph directed_path(int n);  // arcs i -> i+1

// A homomorphism of directed multigraphs: a vertex map and an arc map that
// commute with sources and targets.
struct GraphHom {
    FinFn vmap;
    FinFn emap;

    friend bool operator==(const GraphHom&, const GraphHom&) = default;
};

GraphHom identity_hom(const Graph& g);
GraphHom compose(const GraphHom& f, const GraphHom& g);

// Confirms the naturality squares of h: from -> to; reports the first
// violating arc otherwise. nullopt means valid.
std::optional<std::string> check_hom(const GraphHom& h, const Graph& from, const Graph& to);
void validate_hom(const GraphHom& h, const Graph& from, const Graph& to);

// True iff both the vertex and the arc map are injective. Assumes h validates.
bool is_mono(const GraphHom& h);

// A canonically ordered finite set of sections over a fixed source graph.
// Sections are vertex-map tuples (targets are simple, so arc maps are
// determined); kept sorted lexicographically with no duplicates.
struct SolutionSet {
    int domain_vertices = 0;
    std::vector<std::vector<int>> sections;

    int size() const { return static_cast<int>(sections.size()); }
    // Index of a section, or -1 when absent.
    int index_of(std::span<const int> section) const;
};

// All homomorphisms g -> h as vertex maps, in lexicographic order. Requires h
// simple so the arc map is determined by the vertex map; rejects other
// targets. Backtracks over vertices of g in index order, pruning on every arc
// both of whose endpoints are assigned.
SolutionSet enumerate_homs(const Graph& g, const Graph& h);

// All vertex maps f with: for every ordered pair (x, y), if the arc
// f(x) -> f(y) exists in h then the arc x -> y exists in g. Lexicographic.
SolutionSet enumerate_refl_homs(const Graph& g, const Graph& h);

// Counting / existence variants sharing the same search. count_* return
// nullopt once the count would exceed `cap`.
std::optional<long long> count_homs(const Graph& g, const Graph& h, long long cap);
std::optional<long long> count_refl_homs(const Graph& g, const Graph& h, long long cap);
bool exists_hom(const Graph& g, const Graph& h);
bool exists_refl_hom(const Graph& g, const Graph& h);

struct GraphPullback {
    Graph apex;
    GraphHom to_a;
    GraphHom to_b;
};

// Pullback of the cospan f: A -> C <- B :g, computed separately on vertices
// and on arcs. Apex vertices are the agreeing vertex pairs in lexicographic
// order, apex arcs the agreeing arc pairs.
GraphPullback graph_pullback(const Graph& a, const Graph& b, const Graph& c,
                             const GraphHom& f, const GraphHom& g);

}  // namespace sheafdp
