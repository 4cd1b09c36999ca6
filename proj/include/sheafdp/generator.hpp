#pragma once

#include <cstdint>
#include <string>

#include "sheafdp/json_io.hpp"

namespace sheafdp {

// Deterministic instance generation: the same parameters and seed always give
// byte-identical instance files. Decompositions are carved from a scaffold
// total graph (vertex sets first, arcs drawn once per ordered pair, bags
// induced, adhesions the full intersections), so the legs are monic inclusions
// by construction and never need rejection sampling.
struct GenParams {
    enum class Kind { Tree, Cyclic, Random };

    Kind kind = Kind::Tree;
    int bags = 3;
    int width = 3;   // max bag vertex count
    int fvs = 0;     // Random kind: extra shape arcs beyond a spanning tree
    std::uint64_t seed = 0;
    double density = 0.5;  // arc probability per ordered vertex pair in a bag
    ProblemKind problem = ProblemKind::HColoring;
    std::string target = "k3";  // k<n>, c<n>, p<n>, loop, random
};

Graph make_target(const std::string& name, std::uint64_t seed);

// The generated decomposition always validates, the declared fvs is a genuine
// feedback vertex set of the shape, and for Kind::Random its size is at most
// GenParams::fvs.
Instance generate_instance(const GenParams& p);

}  // namespace sheafdp
