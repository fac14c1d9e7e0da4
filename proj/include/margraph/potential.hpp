#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "margraph/graph.hpp"

namespace margraph {

/// A table is null when its largest |entry| is below this.
inline constexpr double kNullTolerance = 1e-9;
/// Entries at zero-containing assignments must vanish to this precision for
/// a potential to count as normalized.
inline constexpr double kNormalizedTolerance = 1e-12;

/// Finite value range of a variable. Always contains 0 and has at least two
/// distinct values. The default is {0, 1}.
class Domain {
public:
    Domain() : Domain(std::vector<double>{0.0, 1.0}) {}
    explicit Domain(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] double value(std::size_t i) const { return values_.at(i); }
    [[nodiscard]] std::size_t zero_index() const noexcept { return zero_; }
    [[nodiscard]] std::optional<std::size_t> index_of(double v) const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    std::vector<double> values_;
    std::size_t zero_ = 0;
};

struct Variable {
    std::string label;
    Domain domain;

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Registry of the variables of a model; ids are dense 0..n-1 and labels unique.
class VariableTable {
public:
    VariableTable() = default;

    // Binary variables labelled prefix+first, prefix+(first+1), ...
    static VariableTable binary(std::size_t n, std::string_view prefix = "V", std::size_t first = 1);

    VarId add(std::string label, Domain domain = {});

    [[nodiscard]] std::size_t size() const noexcept { return vars_.size(); }
    [[nodiscard]] const Variable& operator[](VarId id) const { return vars_.at(id); }
    [[nodiscard]] const std::string& label(VarId id) const { return vars_.at(id).label; }
    [[nodiscard]] const Domain& domain(VarId id) const { return vars_.at(id).domain; }
    [[nodiscard]] std::optional<VarId> find(std::string_view label) const;
    [[nodiscard]] VarId id_of(std::string_view label) const;  // throws InvalidInput
    [[nodiscard]] VarSet resolve(const std::vector<std::string>& labels) const;
    [[nodiscard]] VarSet all() const;
    [[nodiscard]] std::vector<std::string> labels(const VarSet& s) const;
    // Total number of joint assignments of s, or nullopt past `limit`.
    [[nodiscard]] std::optional<std::size_t> state_count(const VarSet& s, std::size_t limit) const;

    friend bool operator==(const VariableTable& a, const VariableTable& b) { return a.vars_ == b.vars_; }

private:
    std::vector<Variable> vars_;
    std::map<std::string, VarId, std::less<>> by_label_;
};

using VariablesPtr = std::shared_ptr<const VariableTable>;

/// Dense interaction function over a scope. Entries are stored
/// assignment-major with the last scope variable varying fastest; digits are
/// indices into each variable's Domain.
class InteractionTable {
public:
    InteractionTable(VarSet scope, const VariableTable& vars);
    InteractionTable(VarSet scope, const VariableTable& vars, std::vector<double> values);

    // Fill from f(domain values of the scope, in scope order).
    static InteractionTable from_function(VarSet scope, const VariableTable& vars,
                                          const std::function<double(std::span<const double>)>& f);

    [[nodiscard]] const VarSet& scope() const noexcept { return scope_; }
    [[nodiscard]] const std::vector<std::size_t>& radix() const noexcept { return radix_; }
    [[nodiscard]] const std::vector<std::size_t>& zero_digits() const noexcept { return zero_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] std::vector<double>& mutable_values() noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] std::size_t index_of(std::span<const std::size_t> digits) const;
    void decode(std::size_t index, std::span<std::size_t> digits) const;
    [[nodiscard]] double at(std::span<const std::size_t> digits) const { return values_[index_of(digits)]; }
    [[nodiscard]] double& at(std::span<const std::size_t> digits) { return values_[index_of(digits)]; }
    [[nodiscard]] double at(std::initializer_list<std::size_t> digits) const;

    [[nodiscard]] double max_abs() const;
    [[nodiscard]] bool is_null(double tol = kNullTolerance) const { return max_abs() < tol; }

    InteractionTable& operator+=(const InteractionTable& other);

private:
    VarSet scope_;
    std::vector<std::size_t> radix_;
    std::vector<std::size_t> zero_;
    std::vector<double> values_;
};

/// Gibbs potential: at most one interaction table per non-empty scope.
class Potential {
public:
    explicit Potential(VariablesPtr vars);
    explicit Potential(VariableTable vars);

    [[nodiscard]] const VariableTable& variables() const noexcept { return *vars_; }
    [[nodiscard]] const VariablesPtr& variables_ptr() const noexcept { return vars_; }
    [[nodiscard]] const std::map<VarSet, InteractionTable>& tables() const noexcept { return tables_; }
    [[nodiscard]] const InteractionTable* find(const VarSet& scope) const;
    [[nodiscard]] bool empty() const noexcept { return tables_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return tables_.size(); }

    // Adds onto an existing table with the same scope.
    void add(InteractionTable table);
    // Convenience: table built from f over the scope's domain values.
    void add(const VarSet& scope, const std::function<double(std::span<const double>)>& f);

private:
    VariablesPtr vars_;
    std::map<VarSet, InteractionTable> tables_;
};

/// Set of variable subsets, ordered lexicographically.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::initializer_list<VarSet> edges);
    explicit Hypergraph(std::set<VarSet> edges);

    void insert(VarSet e);  // rejects the empty set
    [[nodiscard]] bool contains(const VarSet& e) const { return edges_.contains(e); }
    [[nodiscard]] std::size_t size() const noexcept { return edges_.size(); }
    [[nodiscard]] bool empty() const noexcept { return edges_.empty(); }
    [[nodiscard]] auto begin() const noexcept { return edges_.begin(); }
    [[nodiscard]] auto end() const noexcept { return edges_.end(); }
    [[nodiscard]] const std::set<VarSet>& edges() const noexcept { return edges_; }

    [[nodiscard]] Hypergraph restricted_to(const VarSet& a) const;  // edges ⊆ a
    [[nodiscard]] Hypergraph unite(const Hypergraph& other) const;
    [[nodiscard]] Hypergraph minus(const Hypergraph& other) const;
    [[nodiscard]] VarSet vertices() const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::set<VarSet> edges_;
};

/// Finite list of numeric instantiations of a parametric potential. All
/// members share one variable registry.
class PotentialFamily {
public:
    explicit PotentialFamily(std::vector<Potential> members);
    PotentialFamily(std::initializer_list<Potential> members)
        : PotentialFamily(std::vector<Potential>(members)) {}

    [[nodiscard]] const std::vector<Potential>& members() const noexcept { return members_; }
    [[nodiscard]] const VariableTable& variables() const { return members_.front().variables(); }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }

private:
    std::vector<Potential> members_;
};

/// Sum of all interaction terms at a full assignment given as domain values
/// (one per registered variable, in id order).
[[nodiscard]] double energy(const Potential& u, std::span<const double> values);
/// Same, with the assignment given as domain indices.
[[nodiscard]] double energy_at(const Potential& u, std::span<const std::size_t> digits);

/// The unique normalized potential with the same density up to a constant.
/// Tables that come out null at `null_tol` are dropped.
[[nodiscard]] Potential normalize_potential(const Potential& u0, double null_tol = kNullTolerance);

[[nodiscard]] bool is_normalized(const Potential& u, double tol = kNormalizedTolerance);

/// Tables whose scope is contained in `a`.
[[nodiscard]] Potential restrict(const Potential& u, const VarSet& a);

/// Scopes that are non-null in at least one member.
[[nodiscard]] Hypergraph hypergraph_of(const PotentialFamily& fam, double null_tol = kNullTolerance);
[[nodiscard]] Hypergraph hypergraph_of(const Potential& u, double null_tol = kNullTolerance);
/// Every stored scope, null or not.
[[nodiscard]] Hypergraph scope_hypergraph(const Potential& u);

/// Graph on `vars` joining every pair that shares a hyperedge.
[[nodiscard]] Graph induced_graph(const Hypergraph& h, const VarSet& vars);

/// h1 ⪯ h2: every hyperedge of h1 lies inside some hyperedge of h2.
[[nodiscard]] bool precedes(const Hypergraph& h1, const Hypergraph& h2);

struct BoundaryHypergraph {
    Hypergraph boundaries;
    // Eliminated components with no neighbour in the kept set. They only
    // contribute a constant factor.
    std::size_t empty_boundaries = 0;
};

/// Boundaries (in the graph induced by h on vars) of the connectivity
/// components of vars \ a.
[[nodiscard]] BoundaryHypergraph boundary_hypergraph(const Hypergraph& h, const VarSet& vars,
                                                     const VarSet& a);

}  // namespace margraph
