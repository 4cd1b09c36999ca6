#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sheafdp {

// A finite set is identified by its cardinality; its elements are the dense
// indices 0..size-1. All values in this module are immutable after
// construction and the operations are pure, so they can be shared freely
// across threads.
struct FinSet {
    int size = 0;

    friend bool operator==(const FinSet&, const FinSet&) = default;
};

// A function between finite sets, stored as a lookup table over the domain.
// The domain size is the table length.
struct FinFn {
    std::vector<int> table;
    int cod = 0;

    int dom() const { return static_cast<int>(table.size()); }
    int operator()(int i) const { return table[i]; }

    friend bool operator==(const FinFn&, const FinFn&) = default;
};

FinFn identity_fn(int n);

bool is_injective(const FinFn& f);
bool is_surjective(const FinFn& f);

// Diagnoses out-of-range table entries. nullopt means well formed.
std::optional<std::string> check_fn(const FinFn& f);

// g after f. Requires f.cod == g.dom().
FinFn compose(const FinFn& f, const FinFn& g);

struct PullbackResult {
    FinSet apex;  // pairs (a, b) with f(a) == g(b), in lexicographic (a, b) order
    FinFn to_a;   // first coordinate projection
    FinFn to_b;   // second coordinate projection
};

// Pullback of the cospan f: A -> C <- B :g. Requires f.cod == g.cod.
PullbackResult pullback(const FinFn& f, const FinFn& g);

struct ImageFactorization {
    FinSet image;        // image elements ordered by first occurrence in f.table
    FinFn inclusion;     // image -> cod(f), injective
    FinFn corestriction; // dom(f) -> image, surjective
};

// Factors f as inclusion . corestriction.
ImageFactorization image(const FinFn& f);

}  // namespace sheafdp
