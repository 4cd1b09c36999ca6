#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sheafdp/problems.hpp"

namespace sheafdp {

// An instance file: the problem functor, the structured decomposition, and an
// optional declared feedback vertex set of the shape. Parsing validates the
// decomposition and verifies the declared set.
struct Instance {
    ProblemFunctor problem;
    StructuredDecomposition decomposition;
    std::optional<std::vector<int>> fvs;

    friend bool operator==(const Instance&, const Instance&) = default;
};

// Serialization is canonical: fixed key order, two-space indentation, one
// trailing newline. parse(serialize(x)) == x, and serialize(parse(text))
// reproduces canonical text byte for byte.
nlohmann::ordered_json graph_to_json(const Graph& g);
nlohmann::ordered_json hom_to_json(const GraphHom& h);
nlohmann::ordered_json decomposition_to_json(const StructuredDecomposition& d);
nlohmann::ordered_json instance_to_json(const Instance& inst);

std::string serialize_graph(const Graph& g);
std::string serialize_instance(const Instance& inst);

// Parsers throw std::runtime_error carrying a positional diagnostic (a JSON
// path for schema problems, a byte offset for syntax problems).
Graph graph_from_json(const nlohmann::json& j, const std::string& ctx);
GraphHom hom_from_json(const nlohmann::json& j, const std::string& ctx);
StructuredDecomposition decomposition_from_json(const nlohmann::json& j, const std::string& ctx);
Instance instance_from_json(const nlohmann::json& j);

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

}  // namespace sheafdp
