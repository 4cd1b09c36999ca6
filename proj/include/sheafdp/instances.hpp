#pragma once

#include "sheafdp/problems.hpp"

namespace sheafdp {

// Two overlapping paths glued into a 5-cycle: a 3-vertex path and a 4-vertex
// path sharing their two endpoints through an edgeless two-vertex apex. The
// shape is a single directed arc.
StructuredDecomposition two_path_cycle_decomposition();

// One bag per edge of a symmetric n-cycle, consecutive bags sharing a single
// vertex; the shape is the directed n-cycle. Requires n >= 3.
StructuredDecomposition cycle_of_edges(int n);

// Path analogue: one bag per edge of a symmetric path on `edges` edges, the
// shape is the directed path on `edges` vertices. Requires edges >= 1.
StructuredDecomposition path_of_edges(int edges);

// A synthetic 4-bag chain co-decomposition with identity-style restriction
// maps (equality constraints along the chain) whose two end bags are pinned
// to different values, so no matching family exists even though every bag is
// non-empty. Shape arcs in index order: a->b, b->c, c->d.
SolCoDecomp equality_chain();

// Disjoint union: shapes, bags and adhesions side by side with no new arcs.
StructuredDecomposition disjoint_union(const StructuredDecomposition& a,
                                       const StructuredDecomposition& b);

}  // namespace sheafdp
