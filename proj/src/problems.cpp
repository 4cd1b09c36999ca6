#include "sheafdp/problems.hpp"

#include <stdexcept>

namespace sheafdp {

std::optional<std::string> check_problem(const ProblemFunctor& f) {
    if (auto err = check_graph(f.target)) return "target: " + *err;
    if (f.kind == ProblemKind::HColoring && !is_simple(f.target)) {
        return std::string("hcoloring target must be simple");
    }
    return std::nullopt;
}

SolutionSet eval(const ProblemFunctor& f, const Graph& g) {
    if (auto err = check_problem(f)) throw std::invalid_argument("invalid problem: " + *err);
    return f.kind == ProblemKind::HColoring ? enumerate_homs(g, f.target)
                                            : enumerate_refl_homs(g, f.target);
}

std::optional<long long> count_sections(const ProblemFunctor& f, const Graph& g, long long cap) {
    if (auto err = check_problem(f)) throw std::invalid_argument("invalid problem: " + *err);
    return f.kind == ProblemKind::HColoring ? count_homs(g, f.target, cap)
                                            : count_refl_homs(g, f.target, cap);
}

bool exists_section(const ProblemFunctor& f, const Graph& g) {
    if (auto err = check_problem(f)) throw std::invalid_argument("invalid problem: " + *err);
    return f.kind == ProblemKind::HColoring ? exists_hom(g, f.target) : exists_refl_hom(g, f.target);
}

bool is_section(const ProblemFunctor& f, const Graph& g, std::span<const int> assignment) {
    if (static_cast<int>(assignment.size()) != g.nv) return false;
    for (int v : assignment) {
        if (v < 0 || v >= f.target.nv) return false;
    }
    if (f.kind == ProblemKind::HColoring) {
        for (int e = 0; e < g.ne(); ++e) {
            if (!has_arc(f.target, assignment[g.src[e]], assignment[g.tgt[e]])) return false;
        }
        return true;
    }
    for (int x = 0; x < g.nv; ++x) {
        for (int y = 0; y < g.nv; ++y) {
            if (has_arc(f.target, assignment[x], assignment[y]) && !has_arc(g, x, y)) return false;
        }
    }
    return true;
}

FinFn restriction_map([[maybe_unused]] const ProblemFunctor& f, const GraphHom& m, const Graph& sub,
                      const Graph& sup, const SolutionSet& sub_sections,
                      const SolutionSet& sup_sections) {
    validate_hom(m, sub, sup);
    if (!is_mono(m)) throw std::invalid_argument("restriction_map: m is not a monomorphism");

    FinFn r;
    r.cod = sub_sections.size();
    r.table.reserve(sup_sections.size());
    std::vector<int> restricted(sub.nv);
    for (int i = 0; i < sup_sections.size(); ++i) {
        const std::vector<int>& s = sup_sections.sections[i];
        for (int v = 0; v < sub.nv; ++v) restricted[v] = s[m.vmap.table[v]];
        // Membership in the enumerated set is the section check; absence
        // signals a non-functorial configuration and fails loudly.
        int idx = sub_sections.index_of(restricted);
        if (idx < 0) {
            throw std::runtime_error(
                "restriction_map: section " + std::to_string(i) +
                " does not restrict to a section (non-functorial configuration)");
        }
        r.table.push_back(idx);
    }
    return r;
}

FinFn restriction_map(const ProblemFunctor& f, const GraphHom& m, const Graph& sub, const Graph& sup) {
    return restriction_map(f, m, sub, sup, eval(f, sub), eval(f, sup));
}

int SolCoDecomp::live_count(int v) const {
    int n = 0;
    for (char c : live[v]) n += (c != 0);
    return n;
}

std::vector<int> SolCoDecomp::live_counts() const {
    std::vector<int> out(live.size());
    for (size_t v = 0; v < live.size(); ++v) out[v] = live_count(static_cast<int>(v));
    return out;
}

int SolCoDecomp::max_bag_set_size() const {
    int k = 0;
    for (const SolutionSet& s : bag_sets) k = std::max(k, s.size());
    return k;
}

SolCoDecomp apply_sd(const ProblemFunctor& f, const StructuredDecomposition& d) {
    validate_decomposition(d);
    SolCoDecomp c;
    c.shape = d.shape;
    // Bag evaluations are independent of one another; assembled in shape
    // index order so the result is canonical.
    c.bag_sets.reserve(d.bags.size());
    for (const Graph& b : d.bags) c.bag_sets.push_back(eval(f, b));
    c.live.reserve(d.bags.size());
    for (const SolutionSet& s : c.bag_sets) c.live.emplace_back(s.size(), 1);

    c.adhesion_sets.reserve(d.adhesions.size());
    c.rho_x.reserve(d.adhesions.size());
    c.rho_y.reserve(d.adhesions.size());
    for (int e = 0; e < d.shape.ne(); ++e) {
        const AdhesionSpan& a = d.adhesions[e];
        SolutionSet apex_set = eval(f, a.apex);
        c.rho_x.push_back(restriction_map(f, a.leg_x, a.apex, d.bags[d.shape.src[e]], apex_set,
                                          c.bag_sets[d.shape.src[e]]));
        c.rho_y.push_back(restriction_map(f, a.leg_y, a.apex, d.bags[d.shape.tgt[e]], apex_set,
                                          c.bag_sets[d.shape.tgt[e]]));
        c.adhesion_sets.push_back(std::move(apex_set));
    }
    return c;
}

}  // namespace sheafdp
