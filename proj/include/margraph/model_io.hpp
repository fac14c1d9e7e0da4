#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "margraph/gaussian.hpp"
#include "margraph/potential.hpp"

namespace margraph::io {

inline constexpr int kFormatVersion = 1;

enum class ModelKind { graph, potential, potential_family, gaussian };

[[nodiscard]] std::string_view to_string(ModelKind k);

/// In-memory form of a model file. Exactly one of graph/family/gaussian is
/// set, according to kind; a single potential is stored as a one-member family.
struct ModelFile {
    int format_version = kFormatVersion;
    ModelKind kind = ModelKind::graph;
    VariablesPtr variables;
    std::optional<Graph> graph;
    std::optional<PotentialFamily> family;
    std::optional<GaussianModel> gaussian;
};

/// Throws InvalidInput with the offending field path in the message.
[[nodiscard]] ModelFile parse_model(const nlohmann::json& doc);
/// Throws InvalidInput with line/column for JSON syntax errors.
[[nodiscard]] ModelFile parse_model_text(std::string_view text);
[[nodiscard]] ModelFile load_model(const std::filesystem::path& path);

[[nodiscard]] nlohmann::ordered_json to_json(const ModelFile& model);
[[nodiscard]] nlohmann::ordered_json potential_to_json(const Potential& u);

[[nodiscard]] nlohmann::ordered_json labels_json(const VariableTable& vars, const VarSet& s);
[[nodiscard]] nlohmann::ordered_json hypergraph_json(const VariableTable& vars, const Hypergraph& h);
[[nodiscard]] nlohmann::ordered_json edges_json(const VariableTable& vars, const EdgeSet& e);
[[nodiscard]] nlohmann::ordered_json graph_json(const VariableTable& vars, const Graph& g);

/// Graphviz rendering of an undirected graph using variable labels.
[[nodiscard]] std::string to_dot(const Graph& g, const VariableTable& vars, std::string_view name = "G");

}  // namespace margraph::io
