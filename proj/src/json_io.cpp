#include "sheafdp/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sheafdp {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& ctx, const std::string& what) {
    throw std::runtime_error(ctx + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object()) fail(ctx, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(ctx, std::string("missing key '") + key + "'");
    return *it;
}

int int_at(const json& j, const std::string& ctx) {
    if (!j.is_number_integer()) fail(ctx, "expected an integer");
    return j.get<int>();
}

std::vector<int> int_array(const json& j, const std::string& ctx) {
    if (!j.is_array()) fail(ctx, "expected an array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (size_t i = 0; i < j.size(); ++i) out.push_back(int_at(j[i], ctx + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

ordered_json graph_to_json(const Graph& g) {
    return ordered_json{{"nv", g.nv}, {"src", g.src}, {"tgt", g.tgt}};
}

ordered_json hom_to_json(const GraphHom& h) {
    return ordered_json{{"vmap", h.vmap.table}, {"emap", h.emap.table}};
}

ordered_json decomposition_to_json(const StructuredDecomposition& d) {
    ordered_json bags = ordered_json::array();
    for (const Graph& b : d.bags) bags.push_back(graph_to_json(b));
    ordered_json adhesions = ordered_json::array();
    for (int e = 0; e < d.shape.ne(); ++e) {
        adhesions.push_back(ordered_json{{"edge", {d.shape.src[e], d.shape.tgt[e]}},
                                         {"apex", graph_to_json(d.adhesions[e].apex)},
                                         {"leg_x", hom_to_json(d.adhesions[e].leg_x)},
                                         {"leg_y", hom_to_json(d.adhesions[e].leg_y)}});
    }
    return ordered_json{{"shape", graph_to_json(d.shape)}, {"bags", bags}, {"adhesions", adhesions}};
}

ordered_json instance_to_json(const Instance& inst) {
    ordered_json problem{
        {"kind", inst.problem.kind == ProblemKind::HColoring ? "hcoloring" : "refl_hcoloring"},
        {"target", graph_to_json(inst.problem.target)}};
    ordered_json out{{"problem", std::move(problem)},
                     {"decomposition", decomposition_to_json(inst.decomposition)}};
    if (inst.fvs) out["fvs"] = *inst.fvs;
    return out;
}

std::string serialize_graph(const Graph& g) {
    return graph_to_json(g).dump(2) + "\n";
}

std::string serialize_instance(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

Graph graph_from_json(const json& j, const std::string& ctx) {
    Graph g;
    g.nv = int_at(member(j, "nv", ctx), ctx + ".nv");
    g.src = int_array(member(j, "src", ctx), ctx + ".src");
    g.tgt = int_array(member(j, "tgt", ctx), ctx + ".tgt");
    if (auto err = check_graph(g)) fail(ctx, *err);
    return g;
}

GraphHom hom_from_json(const json& j, const std::string& ctx) {
    GraphHom h;
    h.vmap.table = int_array(member(j, "vmap", ctx), ctx + ".vmap");
    h.emap.table = int_array(member(j, "emap", ctx), ctx + ".emap");
    // Codomain sizes are filled in by the caller, which knows the bags.
    return h;
}

StructuredDecomposition decomposition_from_json(const json& j, const std::string& ctx) {
    StructuredDecomposition d;
    d.shape = graph_from_json(member(j, "shape", ctx), ctx + ".shape");
    if (auto err = check_shape(d.shape)) fail(ctx + ".shape", *err);

    const json& bags = member(j, "bags", ctx);
    if (!bags.is_array()) fail(ctx + ".bags", "expected an array");
    for (size_t i = 0; i < bags.size(); ++i) {
        d.bags.push_back(graph_from_json(bags[i], ctx + ".bags[" + std::to_string(i) + "]"));
    }
    if (static_cast<int>(d.bags.size()) != d.shape.nv) {
        fail(ctx + ".bags", "expected " + std::to_string(d.shape.nv) + " bags, got " +
                                std::to_string(d.bags.size()));
    }

    const json& adhesions = member(j, "adhesions", ctx);
    if (!adhesions.is_array()) fail(ctx + ".adhesions", "expected an array");
    if (adhesions.size() != static_cast<size_t>(d.shape.ne())) {
        fail(ctx + ".adhesions", "expected " + std::to_string(d.shape.ne()) + " adhesions, got " +
                                     std::to_string(adhesions.size()));
    }
    d.adhesions.resize(d.shape.ne());
    std::vector<char> covered(d.shape.ne(), 0);
    for (size_t i = 0; i < adhesions.size(); ++i) {
        std::string actx = ctx + ".adhesions[" + std::to_string(i) + "]";
        std::vector<int> edge = int_array(member(adhesions[i], "edge", actx), actx + ".edge");
        if (edge.size() != 2) fail(actx + ".edge", "expected a pair [x, y]");
        int arc = arc_between(d.shape, edge[0], edge[1]);
        if (arc < 0) {
            fail(actx + ".edge", "no shape arc " + std::to_string(edge[0]) + " -> " +
                                     std::to_string(edge[1]));
        }
        if (covered[arc]) fail(actx + ".edge", "shape arc listed twice");
        covered[arc] = 1;

        AdhesionSpan span;
        span.apex = graph_from_json(member(adhesions[i], "apex", actx), actx + ".apex");
        span.leg_x = hom_from_json(member(adhesions[i], "leg_x", actx), actx + ".leg_x");
        span.leg_y = hom_from_json(member(adhesions[i], "leg_y", actx), actx + ".leg_y");
        const Graph& bag_x = d.bags[d.shape.src[arc]];
        const Graph& bag_y = d.bags[d.shape.tgt[arc]];
        span.leg_x.vmap.cod = bag_x.nv;
        span.leg_x.emap.cod = bag_x.ne();
        span.leg_y.vmap.cod = bag_y.nv;
        span.leg_y.emap.cod = bag_y.ne();
        if (auto err = check_hom(span.leg_x, span.apex, bag_x)) fail(actx + ".leg_x", *err);
        if (auto err = check_hom(span.leg_y, span.apex, bag_y)) fail(actx + ".leg_y", *err);
        d.adhesions[arc] = std::move(span);
    }
    if (auto err = check_decomposition(d)) fail(ctx, *err);
    return d;
}

Instance instance_from_json(const json& j) {
    Instance inst;
    const json& problem = member(j, "problem", "instance");
    const json& kind = member(problem, "kind", "instance.problem");
    if (!kind.is_string()) fail("instance.problem.kind", "expected a string");
    std::string k = kind.get<std::string>();
    if (k == "hcoloring") {
        inst.problem.kind = ProblemKind::HColoring;
    } else if (k == "refl_hcoloring") {
        inst.problem.kind = ProblemKind::ReflHColoring;
    } else {
        fail("instance.problem.kind", "expected \"hcoloring\" or \"refl_hcoloring\", got \"" + k + "\"");
    }
    inst.problem.target = graph_from_json(member(problem, "target", "instance.problem"),
                                          "instance.problem.target");
    if (auto err = check_problem(inst.problem)) fail("instance.problem", *err);

    inst.decomposition = decomposition_from_json(member(j, "decomposition", "instance"),
                                                 "instance.decomposition");

    if (j.contains("fvs")) {
        inst.fvs = int_array(j["fvs"], "instance.fvs");
        for (int v : *inst.fvs) {
            if (v < 0 || v >= inst.decomposition.shape.nv) {
                fail("instance.fvs", "vertex " + std::to_string(v) + " out of range");
            }
        }
        if (!is_fvs(inst.decomposition.shape, *inst.fvs)) {
            fail("instance.fvs", "declared set is not a feedback vertex set of the shape");
        }
    }
    return inst;
}

Instance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("json syntax: ") + e.what());
    }
    return instance_from_json(j);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

}  // namespace sheafdp
