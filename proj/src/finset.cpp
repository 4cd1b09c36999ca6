#include "sheafdp/finset.hpp"

#include <numeric>
#include <stdexcept>

namespace sheafdp {

FinFn identity_fn(int n) {
    FinFn f;
    f.table.resize(n);
    std::iota(f.table.begin(), f.table.end(), 0);
    f.cod = n;
    return f;
}

bool is_injective(const FinFn& f) {
    std::vector<char> seen(f.cod, 0);
    for (int v : f.table) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool is_surjective(const FinFn& f) {
    std::vector<char> seen(f.cod, 0);
    int hit = 0;
    for (int v : f.table) {
        if (!seen[v]) {
            seen[v] = 1;
            ++hit;
        }
    }
    return hit == f.cod;
}

std::optional<std::string> check_fn(const FinFn& f) {
    for (int i = 0; i < f.dom(); ++i) {
        if (f.table[i] < 0 || f.table[i] >= f.cod) {
            return "table entry " + std::to_string(i) + " = " + std::to_string(f.table[i]) +
                   " outside codomain of size " + std::to_string(f.cod);
        }
    }
    return std::nullopt;
}

FinFn compose(const FinFn& f, const FinFn& g) {
    if (f.cod != g.dom()) {
        throw std::invalid_argument("compose: codomain of first function (" + std::to_string(f.cod) +
                                    ") does not match domain of second (" + std::to_string(g.dom()) + ")");
    }
    FinFn r;
    r.cod = g.cod;
    r.table.reserve(f.dom());
    for (int v : f.table) r.table.push_back(g.table[v]);
    return r;
}

PullbackResult pullback(const FinFn& f, const FinFn& g) {
    if (f.cod != g.cod) {
        throw std::invalid_argument("pullback: cospan legs have different codomains (" +
                                    std::to_string(f.cod) + " vs " + std::to_string(g.cod) + ")");
    }
    // Bucket B-elements by their image so the scan over A stays linear in the
    // output plus |B|.
    std::vector<std::vector<int>> by_value(f.cod);
    for (int b = 0; b < g.dom(); ++b) by_value[g.table[b]].push_back(b);

    PullbackResult r;
    r.to_a.cod = f.dom();
    r.to_b.cod = g.dom();
    for (int a = 0; a < f.dom(); ++a) {
        for (int b : by_value[f.table[a]]) {
            r.to_a.table.push_back(a);
            r.to_b.table.push_back(b);
        }
    }
    r.apex.size = static_cast<int>(r.to_a.table.size());
    return r;
}

ImageFactorization image(const FinFn& f) {
    ImageFactorization r;
    std::vector<int> slot(f.cod, -1);  // codomain element -> image index
    r.corestriction.table.reserve(f.dom());
    for (int v : f.table) {
        if (slot[v] < 0) {
            slot[v] = r.image.size++;
            r.inclusion.table.push_back(v);
        }
        r.corestriction.table.push_back(slot[v]);
    }
    r.inclusion.cod = f.cod;
    r.corestriction.cod = r.image.size;
    return r;
}

}  // namespace sheafdp
