#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sheafdp/decomposition.hpp"
#include "sheafdp/graph.hpp"

namespace sheafdp {

enum class ProblemKind {
    HColoring,      // homomorphisms into a fixed simple target
    ReflHColoring,  // reflexive homomorphisms into a fixed target
};

struct ProblemFunctor {
    ProblemKind kind = ProblemKind::HColoring;
    Graph target;

    friend bool operator==(const ProblemFunctor&, const ProblemFunctor&) = default;
};

std::optional<std::string> check_problem(const ProblemFunctor& f);

// The solution set of g under f, canonically ordered.
SolutionSet eval(const ProblemFunctor& f, const Graph& g);

// Count of sections up to cap (nullopt once exceeded), and bare existence.
std::optional<long long> count_sections(const ProblemFunctor& f, const Graph& g, long long cap);
bool exists_section(const ProblemFunctor& f, const Graph& g);

// Whether a vertex tuple is a section of f on g. `assignment` has g.nv
// entries into the target's vertices.
bool is_section(const ProblemFunctor& f, const Graph& g, std::span<const int> assignment);

// Contravariant action of f on a monomorphism m: sub -> sup, as a total
// function between the canonical section indices: section s of sup maps to
// s . m. The precomposed tuple is verified to be a genuine section of sub
// rather than trusted; a failure signals a non-functorial configuration and
// is reported by throwing.
FinFn restriction_map(const ProblemFunctor& f, const GraphHom& m, const Graph& sub, const Graph& sup,
                      const SolutionSet& sub_sections, const SolutionSet& sup_sections);
FinFn restriction_map(const ProblemFunctor& f, const GraphHom& m, const Graph& sub, const Graph& sup);

// The solution-space co-decomposition of a structured decomposition under a
// problem functor: full solution sets on bags and adhesions, restriction maps
// along the legs, and a live mask over each bag set that filtering shrinks.
struct SolCoDecomp {
    Graph shape;
    std::vector<SolutionSet> bag_sets;       // per shape vertex
    std::vector<std::vector<char>> live;     // mask over bag_sets[v].sections
    std::vector<SolutionSet> adhesion_sets;  // per shape arc
    std::vector<FinFn> rho_x;                // bag set at arc source -> adhesion set
    std::vector<FinFn> rho_y;                // bag set at arc target -> adhesion set

    int live_count(int v) const;
    std::vector<int> live_counts() const;
    // kappa: the largest bag solution set.
    int max_bag_set_size() const;
};

SolCoDecomp apply_sd(const ProblemFunctor& f, const StructuredDecomposition& d);

}  // namespace sheafdp
