#pragma once

#include "margraph/graph.hpp"

namespace margraph {

/// Marginal graph over `keep`: the induced edges E|keep plus, for every
/// connectivity component of the eliminated vertices, the completed edge set
/// of its boundary (boundary taken in g). Never pruned.
[[nodiscard]] Graph marginalize_graph(const Graph& g, const VarSet& keep);

/// Connect the neighbours of v pairwise, then remove v.
[[nodiscard]] Graph eliminate_vertex(const Graph& g, VarId v);

/// Components of the eliminated set V \ keep with their boundaries in g.
struct EliminatedComponent {
    VarSet members;
    VarSet boundary;
};
[[nodiscard]] std::vector<EliminatedComponent> eliminated_components(const Graph& g,
                                                                     const VarSet& keep);

}  // namespace margraph
