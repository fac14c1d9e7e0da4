#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace margraph {

using VarId = std::size_t;

/// Sorted, duplicate-free set of variable ids. Ordering between sets is
/// lexicographic on the sorted members, which makes {1} < {1,3} < {3}.
class VarSet {
public:
    VarSet() = default;
    VarSet(std::initializer_list<VarId> ids);
    explicit VarSet(std::vector<VarId> ids);

    [[nodiscard]] const std::vector<VarId>& members() const noexcept { return ids_; }
    [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
    [[nodiscard]] bool empty() const noexcept { return ids_.empty(); }
    [[nodiscard]] bool contains(VarId v) const;
    [[nodiscard]] bool contains_all(const VarSet& other) const;  // other ⊆ *this
    [[nodiscard]] bool intersects(const VarSet& other) const;
    // Position of v within members(); v must be a member.
    [[nodiscard]] std::size_t position(VarId v) const;

    [[nodiscard]] auto begin() const noexcept { return ids_.begin(); }
    [[nodiscard]] auto end() const noexcept { return ids_.end(); }
    [[nodiscard]] VarId operator[](std::size_t i) const { return ids_[i]; }

    [[nodiscard]] VarSet unite(const VarSet& other) const;
    [[nodiscard]] VarSet intersect(const VarSet& other) const;
    [[nodiscard]] VarSet minus(const VarSet& other) const;

    /// All subsets, including the empty set and the set itself, in
    /// bitmask order over members(). Only meant for small sets.
    [[nodiscard]] std::vector<VarSet> subsets() const;

    friend bool operator==(const VarSet&, const VarSet&) = default;
    friend auto operator<=>(const VarSet&, const VarSet&) = default;

private:
    std::vector<VarId> ids_;
};

/// Undirected edge stored as (min, max).
struct Edge {
    VarId first;
    VarId second;

    Edge(VarId a, VarId b);

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeSet = std::set<Edge>;

/// Immutable undirected simple graph. Vertices are an arbitrary set of ids;
/// every edge endpoint must be a vertex and self-loops are rejected.
class Graph {
public:
    Graph() = default;
    Graph(VarSet vertices, const EdgeSet& edges);

    // Graph on ids 0..n-1.
    static Graph with_vertex_count(std::size_t n, const EdgeSet& edges);

    [[nodiscard]] const VarSet& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const EdgeSet& edges() const noexcept { return edges_; }
    [[nodiscard]] bool has_vertex(VarId v) const { return vertices_.contains(v); }
    [[nodiscard]] bool adjacent(VarId a, VarId b) const;
    [[nodiscard]] const VarSet& neighbors(VarId v) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    VarSet vertices_;
    EdgeSet edges_;
    std::map<VarId, VarSet> adjacency_;
};

// Throws InvalidInput naming the first member of `a` that is not a vertex of g.
void require_subset(const Graph& g, const VarSet& a, const char* what);

/// Vertices outside `a` adjacent to at least one vertex of `a`.
[[nodiscard]] VarSet boundary(const Graph& g, const VarSet& a);

/// Connectivity components, each sorted, emitted by smallest member.
[[nodiscard]] std::vector<VarSet> connectivity_components(const Graph& g);

/// Induced subgraph (a, E|a).
[[nodiscard]] Graph subgraph(const Graph& g, const VarSet& a);

/// All |a|(|a|-1)/2 pairs over `a`.
[[nodiscard]] EdgeSet completed_edge_set(const VarSet& a);

/// True iff every pair in `a` is an edge. Empty sets and singletons are complete.
[[nodiscard]] bool is_complete(const Graph& g, const VarSet& a);

/// Maximal cliques (Bron–Kerbosch with pivoting), sorted lexicographically.
[[nodiscard]] std::vector<VarSet> cliques(const Graph& g);

}  // namespace margraph
