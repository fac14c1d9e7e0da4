#include "margraph/potential.hpp"

#include <algorithm>
#include <cmath>

#include "margraph/errors.hpp"
#include "margraph/kernels.hpp"

namespace margraph {

// ---------------------------------------------------------------- Domain

Domain::Domain(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw InvalidInput("domain needs at least two values");
    bool has_zero = false;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) throw InvalidInput("domain value is not finite");
        for (std::size_t j = 0; j < i; ++j)
            if (values_[j] == values_[i]) throw InvalidInput("domain values must be distinct");
        if (values_[i] == 0.0) {
            zero_ = i;
            has_zero = true;
        }
    }
    if (!has_zero) throw InvalidInput("domain must contain 0");
}

std::optional<std::size_t> Domain::index_of(double v) const {
    auto it = std::find(values_.begin(), values_.end(), v);
    if (it == values_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
}

// --------------------------------------------------------- VariableTable

VariableTable VariableTable::binary(std::size_t n, std::string_view prefix, std::size_t first) {
    VariableTable t;
    for (std::size_t i = 0; i < n; ++i) t.add(std::string(prefix) + std::to_string(first + i));
    return t;
}

VarId VariableTable::add(std::string label, Domain domain) {
    if (label.empty()) throw InvalidInput("variable label must be non-empty");
    if (by_label_.contains(label)) throw InvalidInput("duplicate variable label '" + label + "'");
    const VarId id = vars_.size();
    by_label_.emplace(label, id);
    vars_.push_back({std::move(label), std::move(domain)});
    return id;
}

std::optional<VarId> VariableTable::find(std::string_view label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

VarId VariableTable::id_of(std::string_view label) const {
    if (auto id = find(label)) return *id;
    throw InvalidInput("unknown variable label '" + std::string(label) + "'");
}

VarSet VariableTable::resolve(const std::vector<std::string>& labels) const {
    std::vector<VarId> ids;
    ids.reserve(labels.size());
    for (const auto& l : labels) ids.push_back(id_of(l));
    return VarSet(std::move(ids));
}

VarSet VariableTable::all() const {
    std::vector<VarId> ids(vars_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    return VarSet(std::move(ids));
}

std::vector<std::string> VariableTable::labels(const VarSet& s) const {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (VarId v : s) out.push_back(label(v));
    return out;
}

std::optional<std::size_t> VariableTable::state_count(const VarSet& s, std::size_t limit) const {
    std::size_t n = 1;
    for (VarId v : s) {
        n *= domain(v).size();
        if (n > limit) return std::nullopt;
    }
    return n;
}

// ------------------------------------------------------ InteractionTable

InteractionTable::InteractionTable(VarSet scope, const VariableTable& vars) : scope_(std::move(scope)) {
    std::size_t n = 1;
    for (VarId v : scope_) {
        if (v >= vars.size()) throw InvalidInput("table scope references unknown variable " + std::to_string(v));
        radix_.push_back(vars.domain(v).size());
        zero_.push_back(vars.domain(v).zero_index());
        n *= radix_.back();
    }
    values_.assign(n, 0.0);
}

InteractionTable::InteractionTable(VarSet scope, const VariableTable& vars, std::vector<double> values)
    : InteractionTable(std::move(scope), vars) {
    if (values.size() != values_.size())
        throw InvalidInput("table has " + std::to_string(values.size()) + " entries, scope needs " +
                           std::to_string(values_.size()));
    for (double x : values)
        if (!std::isfinite(x)) throw InvalidInput("table entry is not finite");
    values_ = std::move(values);
}

InteractionTable InteractionTable::from_function(VarSet scope, const VariableTable& vars,
                                                 const std::function<double(std::span<const double>)>& f) {
    InteractionTable t(std::move(scope), vars);
    std::vector<std::size_t> digits(t.scope_.size());
    std::vector<double> point(t.scope_.size());
    for (std::size_t i = 0; i < t.values_.size(); ++i) {
        t.decode(i, digits);
        for (std::size_t k = 0; k < digits.size(); ++k) point[k] = vars.domain(t.scope_[k]).value(digits[k]);
        const double x = f(point);
        if (!std::isfinite(x)) throw InvalidInput("table entry is not finite");
        t.values_[i] = x;
    }
    return t;
}

std::size_t InteractionTable::index_of(std::span<const std::size_t> digits) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < radix_.size(); ++k) idx = idx * radix_[k] + digits[k];
    return idx;
}

void InteractionTable::decode(std::size_t index, std::span<std::size_t> digits) const {
    for (std::size_t k = radix_.size(); k-- > 0;) {
        digits[k] = index % radix_[k];
        index /= radix_[k];
    }
}

double InteractionTable::at(std::initializer_list<std::size_t> digits) const {
    return at(std::span<const std::size_t>(digits.begin(), digits.size()));
}

double InteractionTable::max_abs() const {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

InteractionTable& InteractionTable::operator+=(const InteractionTable& other) {
    if (other.scope_ != scope_ || other.radix_ != radix_)
        throw InvalidInput("cannot add tables over different scopes");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

// ------------------------------------------------------------- Potential

Potential::Potential(VariablesPtr vars) : vars_(std::move(vars)) {
    if (!vars_) throw InvalidInput("potential needs a variable table");
}

Potential::Potential(VariableTable vars) : vars_(std::make_shared<const VariableTable>(std::move(vars))) {}

const InteractionTable* Potential::find(const VarSet& scope) const {
    auto it = tables_.find(scope);
    return it == tables_.end() ? nullptr : &it->second;
}

void Potential::add(InteractionTable table) {
    if (table.scope().empty()) throw InvalidInput("interaction tables need a non-empty scope");
    for (VarId v : table.scope())
        if (v >= vars_->size()) throw InvalidInput("table scope references unknown variable " + std::to_string(v));
    if (table.radix() != InteractionTable(table.scope(), *vars_).radix())
        throw InvalidInput("table shape does not match the variable domains");
    auto it = tables_.find(table.scope());
    if (it == tables_.end()) {
        VarSet key = table.scope();
        tables_.emplace(std::move(key), std::move(table));
    } else {
        it->second += table;
    }
}

void Potential::add(const VarSet& scope, const std::function<double(std::span<const double>)>& f) {
    add(InteractionTable::from_function(scope, *vars_, f));
}

// ------------------------------------------------------------ Hypergraph

Hypergraph::Hypergraph(std::initializer_list<VarSet> edges) {
    for (const auto& e : edges) insert(e);
}

Hypergraph::Hypergraph(std::set<VarSet> edges) {
    for (const auto& e : edges) insert(e);
}

void Hypergraph::insert(VarSet e) {
    if (e.empty()) throw InvalidInput("hyperedges must be non-empty");
    edges_.insert(std::move(e));
}

Hypergraph Hypergraph::restricted_to(const VarSet& a) const {
    Hypergraph h;
    for (const auto& e : edges_)
        if (a.contains_all(e)) h.edges_.insert(e);
    return h;
}

Hypergraph Hypergraph::unite(const Hypergraph& other) const {
    Hypergraph h = *this;
    h.edges_.insert(other.edges_.begin(), other.edges_.end());
    return h;
}

Hypergraph Hypergraph::minus(const Hypergraph& other) const {
    Hypergraph h;
    for (const auto& e : edges_)
        if (!other.contains(e)) h.edges_.insert(e);
    return h;
}

VarSet Hypergraph::vertices() const {
    VarSet out;
    for (const auto& e : edges_) out = out.unite(e);
    return out;
}

// ------------------------------------------------------- PotentialFamily

PotentialFamily::PotentialFamily(std::vector<Potential> members) : members_(std::move(members)) {
    if (members_.empty()) throw InvalidInput("potential family must have at least one member");
    for (const auto& m : members_)
        if (m.variables_ptr() != members_.front().variables_ptr() && !(m.variables() == members_.front().variables()))
            throw InvalidInput("family members must share one variable table");
}

// ------------------------------------------------------------ operations

double energy_at(const Potential& u, std::span<const std::size_t> digits) {
    if (digits.size() != u.variables().size())
        throw InvalidInput("assignment covers " + std::to_string(digits.size()) + " of " +
                           std::to_string(u.variables().size()) + " variables");
    double e = 0.0;
    std::vector<std::size_t> local;
    for (const auto& [scope, table] : u.tables()) {
        local.resize(scope.size());
        for (std::size_t k = 0; k < scope.size(); ++k) local[k] = digits[scope[k]];
        e += table.at(local);
    }
    return e;
}

double energy(const Potential& u, std::span<const double> values) {
    const auto& vars = u.variables();
    if (values.size() != vars.size())
        throw InvalidInput("assignment covers " + std::to_string(values.size()) + " of " +
                           std::to_string(vars.size()) + " variables");
    std::vector<std::size_t> digits(values.size());
    for (VarId v = 0; v < values.size(); ++v) {
        auto d = vars.domain(v).index_of(values[v]);
        if (!d) throw InvalidInput("value outside the domain of " + vars.label(v));
        digits[v] = *d;
    }
    return energy_at(u, digits);
}

Potential normalize_potential(const Potential& u0, double null_tol) {
    const auto& vars = u0.variables();
    std::map<VarSet, InteractionTable> acc;
    std::vector<std::size_t> digits;
    std::vector<std::size_t> sub;
    for (const auto& [scope, table] : u0.tables()) {
        for (double x : table.values())
            if (!std::isfinite(x)) throw InvalidInput("non-finite entry in table to normalize");
        std::vector<double> diff = table.values();
        kernels::zero_anchored_difference(diff, table.radix(), table.zero_digits());

        // entry x of the differenced table belongs to the scope of its non-zero axes
        digits.resize(scope.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            if (diff[i] == 0.0) continue;
            table.decode(i, digits);
            std::vector<VarId> support;
            sub.clear();
            for (std::size_t k = 0; k < scope.size(); ++k) {
                if (digits[k] != table.zero_digits()[k]) {
                    support.push_back(scope[k]);
                    sub.push_back(digits[k]);
                }
            }
            if (support.empty()) continue;  // constant term, absorbed by K
            VarSet c(std::move(support));
            auto it = acc.find(c);
            if (it == acc.end()) it = acc.emplace(c, InteractionTable(c, vars)).first;
            it->second.at(sub) += diff[i];
        }
    }
    Potential out(u0.variables_ptr());
    for (auto& [scope, table] : acc)
        if (!table.is_null(null_tol)) out.add(std::move(table));
    return out;
}

bool is_normalized(const Potential& u, double tol) {
    std::vector<std::size_t> digits;
    for (const auto& [scope, table] : u.tables()) {
        digits.resize(scope.size());
        for (std::size_t i = 0; i < table.size(); ++i) {
            table.decode(i, digits);
            bool has_zero = false;
            for (std::size_t k = 0; k < digits.size(); ++k)
                has_zero = has_zero || digits[k] == table.zero_digits()[k];
            if (has_zero && std::abs(table.values()[i]) > tol) return false;
        }
    }
    return true;
}

Potential restrict(const Potential& u, const VarSet& a) {
    Potential out(u.variables_ptr());
    for (const auto& [scope, table] : u.tables())
        if (a.contains_all(scope)) out.add(table);
    return out;
}

Hypergraph hypergraph_of(const PotentialFamily& fam, double null_tol) {
    Hypergraph h;
    for (const auto& m : fam.members())
        for (const auto& [scope, table] : m.tables())
            if (!table.is_null(null_tol)) h.insert(scope);
    return h;
}

Hypergraph hypergraph_of(const Potential& u, double null_tol) {
    return hypergraph_of(PotentialFamily{u}, null_tol);
}

Hypergraph scope_hypergraph(const Potential& u) {
    Hypergraph h;
    for (const auto& [scope, table] : u.tables()) h.insert(scope);
    return h;
}

Graph induced_graph(const Hypergraph& h, const VarSet& vars) {
    EdgeSet edges;
    for (const auto& e : h) {
        if (!vars.contains_all(e)) throw InvalidInput("hyperedge lies outside the vertex set");
        EdgeSet c = completed_edge_set(e);
        edges.insert(c.begin(), c.end());
    }
    return Graph(vars, edges);
}

bool precedes(const Hypergraph& h1, const Hypergraph& h2) {
    return std::all_of(h1.begin(), h1.end(), [&](const VarSet& e1) {
        return std::any_of(h2.begin(), h2.end(), [&](const VarSet& e2) { return e2.contains_all(e1); });
    });
}

BoundaryHypergraph boundary_hypergraph(const Hypergraph& h, const VarSet& vars, const VarSet& a) {
    const Graph g = induced_graph(h, vars);
    require_subset(g, a, "boundary_hypergraph");
    BoundaryHypergraph out;
    const VarSet dropped = vars.minus(a);
    if (dropped.empty()) return out;
    for (const auto& tau : connectivity_components(subgraph(g, dropped))) {
        VarSet bd = boundary(g, tau);
        if (bd.empty()) ++out.empty_boundaries;
        else out.boundaries.insert(std::move(bd));
    }
    return out;
}

}  // namespace margraph
