#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sheafdp/graph.hpp"

namespace sheafdp {

// The span of monomorphisms sitting over one shape arc: both legs embed the
// apex into the bags at the arc's endpoints.
struct AdhesionSpan {
    Graph apex;
    GraphHom leg_x;  // apex -> bag at the arc's source
    GraphHom leg_y;  // apex -> bag at the arc's target

    friend bool operator==(const AdhesionSpan&, const AdhesionSpan&) = default;
};

// A structured decomposition of a graph: a shape graph, one bag per shape
// vertex, and one monic adhesion span per shape arc. Immutable after
// validation; all operations below are pure.
struct StructuredDecomposition {
    Graph shape;
    std::vector<Graph> bags;
    std::vector<AdhesionSpan> adhesions;

    friend bool operator==(const StructuredDecomposition&, const StructuredDecomposition&) = default;
};

// Shape graphs must be finite, irreflexive, without antiparallel arc pairs,
// and with at most one arc per ordered vertex pair.
std::optional<std::string> check_shape(const Graph& shape);

// All decomposition invariants: shape restrictions, bag/adhesion counts, leg
// validity and monicity. Reports the first violation with its shape index.
std::optional<std::string> check_decomposition(const StructuredDecomposition& d);
void validate_decomposition(const StructuredDecomposition& d);

struct ColimitResult {
    Graph total;
    std::vector<GraphHom> cocone;  // bag(v) -> total, one per shape vertex
};

// Glues the bags along the adhesion spans: union-find on the disjoint union
// of bag vertices and bag arcs, merging leg_x(a) with leg_y(a) for every apex
// element. The emitted labeling is canonical: classes are numbered by their
// smallest global index.
ColimitResult colim(const StructuredDecomposition& d);

// Restriction of d along a monomorphism f: X -> colim(d).total, by pointwise
// pullback of f against the colimit cocone. The result has the same shape;
// its colimit is isomorphic to X.
StructuredDecomposition restrict_along_mono(const StructuredDecomposition& d, const Graph& x,
                                            const GraphHom& f);

// Max bag vertex count (0 when there are no bags).
int width(const StructuredDecomposition& d);

// True iff removing the vertices in s leaves the underlying undirected graph
// acyclic. Arc directions are bookkeeping only here.
bool is_fvs(const Graph& shape, std::span<const int> s);

// Minimum-cardinality feedback vertex set of the underlying undirected shape,
// lexicographically smallest among the minimum sets. Exact bounded search:
// branches on the vertices of a found cycle.
std::vector<int> find_fvs(const Graph& shape);

}  // namespace sheafdp
