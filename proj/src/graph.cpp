#include "margraph/graph.hpp"

#include <algorithm>
#include <iterator>

#include "margraph/errors.hpp"

namespace margraph {

VarSet::VarSet(std::initializer_list<VarId> ids) : VarSet(std::vector<VarId>(ids)) {}

VarSet::VarSet(std::vector<VarId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VarSet::contains(VarId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

bool VarSet::contains_all(const VarSet& other) const {
    return std::includes(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end());
}

bool VarSet::intersects(const VarSet& other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a;
        else ++b;
    }
    return false;
}

std::size_t VarSet::position(VarId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    return static_cast<std::size_t>(it - ids_.begin());
}

VarSet VarSet::unite(const VarSet& other) const {
    std::vector<VarId> out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out));
    VarSet r;
    r.ids_ = std::move(out);
    return r;
}

VarSet VarSet::intersect(const VarSet& other) const {
    std::vector<VarId> out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out));
    VarSet r;
    r.ids_ = std::move(out);
    return r;
}

VarSet VarSet::minus(const VarSet& other) const {
    std::vector<VarId> out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out));
    VarSet r;
    r.ids_ = std::move(out);
    return r;
}

std::vector<VarSet> VarSet::subsets() const {
    const std::size_t n = ids_.size();
    std::vector<VarSet> out;
    out.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        VarSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) s.ids_.push_back(ids_[i]);
        out.push_back(std::move(s));
    }
    return out;
}

Edge::Edge(VarId a, VarId b) : first(std::min(a, b)), second(std::max(a, b)) {}

Graph::Graph(VarSet vertices, const EdgeSet& edges) : vertices_(std::move(vertices)), edges_(edges) {
    for (VarId v : vertices_) adjacency_[v];
    for (const Edge& e : edges_) {
        if (e.first == e.second)
            throw InvalidInput("self-loop on vertex " + std::to_string(e.first));
        if (!vertices_.contains(e.first) || !vertices_.contains(e.second))
            throw InvalidInput("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                               ") references an unknown vertex");
    }
    std::map<VarId, std::vector<VarId>> adj;
    for (const Edge& e : edges_) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (auto& [v, ns] : adj) adjacency_[v] = VarSet(std::move(ns));
}

Graph Graph::with_vertex_count(std::size_t n, const EdgeSet& edges) {
    std::vector<VarId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    return Graph(VarSet(std::move(ids)), edges);
}

bool Graph::adjacent(VarId a, VarId b) const { return edges_.contains(Edge(a, b)); }

const VarSet& Graph::neighbors(VarId v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end()) throw InvalidInput("unknown vertex " + std::to_string(v));
    return it->second;
}

void require_subset(const Graph& g, const VarSet& a, const char* what) {
    for (VarId v : a)
        if (!g.has_vertex(v))
            throw InvalidInput(std::string(what) + ": unknown vertex " + std::to_string(v));
}

VarSet boundary(const Graph& g, const VarSet& a) {
    require_subset(g, a, "boundary");
    std::vector<VarId> out;
    for (VarId v : a)
        for (VarId w : g.neighbors(v))
            if (!a.contains(w)) out.push_back(w);
    return VarSet(std::move(out));
}

std::vector<VarSet> connectivity_components(const Graph& g) {
    std::vector<VarSet> parts;
    std::set<VarId> seen;
    // vertices() is ascending, so each new root is the smallest id of its part
    for (VarId root : g.vertices()) {
        if (seen.contains(root)) continue;
        std::vector<VarId> part{root};
        std::vector<VarId> stack{root};
        seen.insert(root);
        while (!stack.empty()) {
            VarId v = stack.back();
            stack.pop_back();
            for (VarId w : g.neighbors(v)) {
                if (seen.insert(w).second) {
                    part.push_back(w);
                    stack.push_back(w);
                }
            }
        }
        parts.emplace_back(std::move(part));
    }
    return parts;
}

Graph subgraph(const Graph& g, const VarSet& a) {
    require_subset(g, a, "subgraph");
    EdgeSet kept;
    for (const Edge& e : g.edges())
        if (a.contains(e.first) && a.contains(e.second)) kept.insert(e);
    return Graph(a, kept);
}

EdgeSet completed_edge_set(const VarSet& a) {
    EdgeSet out;
    const auto& m = a.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) out.emplace(m[i], m[j]);
    return out;
}

bool is_complete(const Graph& g, const VarSet& a) {
    const auto& m = a.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (!g.adjacent(m[i], m[j])) return false;
    return true;
}

namespace {

void bron_kerbosch(const Graph& g, std::vector<VarId>& r, VarSet p, VarSet x,
                   std::vector<VarSet>& out) {
    if (p.empty()) {
        if (x.empty()) out.emplace_back(r);
        return;
    }
    // pivot: vertex of P ∪ X with most neighbours in P
    VarId pivot = *p.begin();
    std::size_t best = 0;
    for (const VarSet* pool : {&p, &x}) {
        for (VarId u : *pool) {
            std::size_t k = g.neighbors(u).intersect(p).size();
            if (k > best || (k == best && u < pivot)) {
                best = k;
                pivot = u;
            }
        }
    }
    const VarSet candidates = p.minus(g.neighbors(pivot));
    for (VarId v : candidates) {
        const VarSet& nv = g.neighbors(v);
        r.push_back(v);
        bron_kerbosch(g, r, p.intersect(nv), x.intersect(nv), out);
        r.pop_back();
        p = p.minus(VarSet{v});
        x = x.unite(VarSet{v});
    }
}

}  // namespace

std::vector<VarSet> cliques(const Graph& g) {
    std::vector<VarSet> out;
    if (g.vertices().empty()) return out;
    std::vector<VarId> r;
    bron_kerbosch(g, r, g.vertices(), VarSet{}, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace margraph
