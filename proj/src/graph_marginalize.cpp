#include "margraph/graph_marginalize.hpp"

#include "margraph/errors.hpp"

namespace margraph {

std::vector<EliminatedComponent> eliminated_components(const Graph& g, const VarSet& keep) {
    require_subset(g, keep, "eliminated_components");
    const VarSet dropped = g.vertices().minus(keep);
    std::vector<EliminatedComponent> out;
    if (dropped.empty()) return out;
    for (VarSet& tau : connectivity_components(subgraph(g, dropped))) {
        VarSet bd = boundary(g, tau);
        out.push_back({std::move(tau), std::move(bd)});
    }
    return out;
}

Graph marginalize_graph(const Graph& g, const VarSet& keep) {
    require_subset(g, keep, "marginalize_graph");
    Graph restricted = subgraph(g, keep);
    if (keep.size() == g.vertices().size()) return restricted;

    EdgeSet edges = restricted.edges();
    for (const auto& comp : eliminated_components(g, keep)) {
        EdgeSet fill = completed_edge_set(comp.boundary);
        edges.insert(fill.begin(), fill.end());
    }
    return Graph(keep, edges);
}

Graph eliminate_vertex(const Graph& g, VarId v) {
    if (!g.has_vertex(v)) throw InvalidInput("eliminate_vertex: unknown vertex " + std::to_string(v));
    const VarSet rest = g.vertices().minus(VarSet{v});
    EdgeSet edges = subgraph(g, rest).edges();
    EdgeSet fill = completed_edge_set(g.neighbors(v));
    edges.insert(fill.begin(), fill.end());
    return Graph(rest, edges);
}

}  // namespace margraph
