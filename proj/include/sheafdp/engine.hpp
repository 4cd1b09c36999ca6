#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sheafdp/problems.hpp"

namespace sheafdp {

// One section index per shape vertex. A matching family agrees across both
// restriction maps of every shape arc; it is the concrete form of an element
// of the limit of the solution co-decomposition.
using MatchingFamily = std::vector<int>;

struct Verdict {
    bool satisfiable = false;
    std::optional<MatchingFamily> witness;
    std::vector<int> live_counts;
};

struct EngineLimits {
    // Backtracking prefix nodes allowed in limit_sections and the counting
    // variant. Overridable through SHEAFDP_ORACLE_CAP in the CLI.
    long long oracle_node_cap = 10'000'000;
    // Bound on the assignment product enumerated by fvs_decide.
    long long sigma_product_cap = 10'000'000;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecideStats {
    long long sigma_count = 0;   // assignments tried by fvs_decide
    long long edge_filters = 0;  // single-edge filter applications
};

// Single-edge filtering: pull back the two live restriction maps over one
// shape arc and keep only the sections in the images of the projections.
// Live subsets only ever shrink; nothing else changes.
SolCoDecomp filter_edge(const SolCoDecomp& c, int arc);

enum class FilterOrder {
    AsGiven,     // one pass over a supplied permutation of the arcs
    LeafToRoot,  // one pass, every arc after all arcs strictly below it
    Fixpoint,    // repeat index-order passes until no live subset shrinks
};

// edges is consulted only for AsGiven and must then be a permutation of the
// arc indices. LeafToRoot requires a forest shape.
SolCoDecomp filter_all(const SolCoDecomp& c, FilterOrder order, std::span<const int> edges = {});

struct TreeSolveResult {
    SolCoDecomp filtered;
    Verdict verdict;
};

// Decision on forest shapes: a leaf-to-root pass followed by a root-to-leaf
// pass per component. The resulting live subsets are exactly the sections
// extendable to a matching family over the whole shape (all bags are cleared
// when any component comes up empty). On success the witness is the
// root-anchored deterministic selection: smallest live index at each root,
// smallest consistent index downward.
TreeSolveResult tree_solve(const SolCoDecomp& c);

// Exhaustive oracle: all matching families over the live subsets, ordered
// lexicographically by shape vertex index. Backtracking with pruning on every
// arc whose endpoints are both assigned; throws CapExceeded beyond the node
// cap.
std::vector<MatchingFamily> limit_sections(const SolCoDecomp& c, const EngineLimits& limits = {});

// Family count under the same search; nullopt once node_cap is exceeded.
std::optional<long long> count_matching_families(const SolCoDecomp& c, long long node_cap);

// Reference restriction of every bag to its globally extendable sections:
// the live subset at v becomes the set of coordinate-v values over all
// matching families. Agrees with tree_solve on forest shapes.
SolCoDecomp extendable_sections(const SolCoDecomp& c, const EngineLimits& limits = {});

// Decision on arbitrary shapes given a feedback vertex set of the shape: for
// every assignment of one live section per fvs vertex (lexicographic order,
// streamed), pin those bags to singletons, filter every arc incident to the
// fvs, drop those arcs, and solve the remaining forest. Disjunction over
// assignments, short-circuiting on the first success.
Verdict fvs_decide(const SolCoDecomp& c, std::span<const int> fvs, const EngineLimits& limits = {},
                   DecideStats* stats = nullptr);

// Full pipeline: apply_sd then fvs_decide; the fvs defaults to
// find_fvs(d.shape) and is verified when supplied.
Verdict decide(const ProblemFunctor& f, const StructuredDecomposition& d,
               std::optional<std::vector<int>> fvs = std::nullopt, const EngineLimits& limits = {},
               DecideStats* stats = nullptr);

// Ground truth: glue the decomposition and test for a section on the total.
Verdict oracle_decide(const ProblemFunctor& f, const StructuredDecomposition& d);

// The bag-wise conjunction that is *not* a decision procedure: every bag and
// adhesion solution set non-empty.
bool naive_bag_conjunction(const SolCoDecomp& c);

// Whether the family's entries are live and agree across both restriction
// maps of every shape arc.
bool is_matching_family(const SolCoDecomp& c, const MatchingFamily& family);

// Glue a matching family into a vertex assignment on colim(d).total. Well
// defined because the family agrees on every adhesion.
std::vector<int> glue_family(const StructuredDecomposition& d, const ColimitResult& glued,
                             const SolCoDecomp& c, const MatchingFamily& family);

bool is_forest(const Graph& shape);

}  // namespace sheafdp
