#include "margraph/hypergraph_marginalize.hpp"

#include <cassert>
#include <map>

#include "margraph/errors.hpp"
#include "margraph/graph_marginalize.hpp"
#include "margraph/kernels.hpp"

namespace margraph {

namespace {

// Row-major strides of a table scope.
std::vector<std::size_t> strides_of(const InteractionTable& t) {
    std::vector<std::size_t> s(t.radix().size());
    std::size_t acc = 1;
    for (std::size_t k = s.size(); k-- > 0;) {
        s[k] = acc;
        acc *= t.radix()[k];
    }
    return s;
}

// Offsets contributed by the variables of `over` to a table, one per joint
// assignment of `over` (last variable fastest).
std::vector<std::size_t> offsets_over(const VariableTable& vars, const VarSet& over, std::size_t count,
                                      const InteractionTable& t, const std::vector<std::size_t>& strides) {
    std::vector<std::size_t> radix(over.size());
    std::vector<std::size_t> weight(over.size(), 0);
    for (std::size_t k = 0; k < over.size(); ++k) {
        radix[k] = vars.domain(over[k]).size();
        if (t.scope().contains(over[k])) weight[k] = strides[t.scope().position(over[k])];
    }
    std::vector<std::size_t> out(count);
    std::vector<std::size_t> digit(over.size(), 0);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = offset;
        // odometer increment, last position fastest
        for (std::size_t k = over.size(); k-- > 0;) {
            offset += weight[k];
            if (++digit[k] < radix[k]) break;
            offset -= weight[k] * radix[k];
            digit[k] = 0;
        }
    }
    return out;
}

struct BoundaryPotentials {
    std::map<VarSet, InteractionTable> by_boundary;  // U*_D, non-empty D only
};

BoundaryPotentials aggregate_boundaries(const Potential& u, const std::vector<EliminatedComponent>& comps) {
    BoundaryPotentials out;
    for (const auto& c : comps) {
        if (c.boundary.empty()) continue;  // constant factor
        InteractionTable t = component_potential(u, c.members, c.boundary);
        auto it = out.by_boundary.find(c.boundary);
        if (it == out.by_boundary.end()) out.by_boundary.emplace(c.boundary, std::move(t));
        else it->second += t;
    }
    return out;
}

// Signed subset sums of the boundary potentials, grouped by subset scope.
// Null results are kept so callers can test cancellation against U|_A.
std::map<VarSet, InteractionTable> innovation_tables(const Potential& u, const BoundaryPotentials& bp) {
    Potential star(u.variables_ptr());
    for (const auto& [d, t] : bp.by_boundary) star.add(t);
    // null_tol = 0 keeps every scope that received a contribution
    Potential v = normalize_potential(star, 0.0);
    assert(is_normalized(v));
    return v.tables();
}

void require_normalized(const Potential& u) {
    if (!is_normalized(u)) throw PreconditionError("potential must be normalized");
}

}  // namespace

InteractionTable component_potential(const Potential& u, const VarSet& tau, const VarSet& bd) {
    const auto& vars = u.variables();
    if (tau.empty()) throw InvalidInput("component_potential: empty component");
    for (VarId v : tau.unite(bd))
        if (v >= vars.size()) throw InvalidInput("component_potential: unknown variable " + std::to_string(v));
    if (tau.intersects(bd)) throw InvalidInput("component_potential: boundary overlaps the component");

    std::vector<const InteractionTable*> touching;
    for (const auto& [scope, table] : u.tables()) {
        if (!scope.intersects(tau)) continue;
        if (!tau.unite(bd).contains_all(scope))
            throw InvalidInput("component_potential: a table reaches past the supplied boundary");
        touching.push_back(&table);
    }

    const auto outer = vars.state_count(bd, kMaxComponentStates);
    const auto inner = vars.state_count(tau, kMaxComponentStates);
    if (!outer || !inner || *outer * *inner > kMaxComponentStates)
        throw ResourceLimit("component state space exceeds " + std::to_string(kMaxComponentStates));

    std::vector<kernels::FactorSlice> slices;
    slices.reserve(touching.size());
    for (const InteractionTable* t : touching) {
        const auto strides = strides_of(*t);
        slices.push_back({t->values(), offsets_over(vars, bd, *outer, *t, strides),
                          offsets_over(vars, tau, *inner, *t, strides)});
    }

    InteractionTable result(bd, vars);
    kernels::neg_log_sum_exp(slices, *outer, *inner, result.mutable_values());
    return result;
}

InteractionTable component_potential(const Potential& u, const VarSet& tau) {
    const Graph g = induced_graph(scope_hypergraph(u), u.variables().all());
    require_subset(g, tau, "component_potential");
    return component_potential(u, tau, boundary(g, tau));
}

InteractionTable boundary_aggregate(const Potential& u, const std::vector<VarSet>& components, const VarSet& d) {
    const Graph g = induced_graph(scope_hypergraph(u), u.variables().all());
    std::optional<InteractionTable> sum;
    for (const auto& tau : components) {
        require_subset(g, tau, "boundary_aggregate");
        if (boundary(g, tau) != d) continue;
        InteractionTable t = component_potential(u, tau, d);
        if (sum) *sum += t;
        else sum = std::move(t);
    }
    if (!sum) throw InvalidInput("boundary_aggregate: no component has the requested boundary");
    return std::move(*sum);
}

std::vector<Innovation> innovations(const Potential& u, const VarSet& a, double null_tol) {
    require_normalized(u);
    const Graph g = induced_graph(hypergraph_of(u, null_tol), u.variables().all());
    const auto comps = eliminated_components(g, a);
    std::vector<Innovation> out;
    for (auto& [scope, table] : innovation_tables(u, aggregate_boundaries(u, comps)))
        if (!table.is_null(null_tol)) out.push_back({scope, table});
    return out;
}

MarginalReport marginalize_hypergraph(const PotentialFamily& fam, const VarSet& a, double null_tol) {
    const auto& vars = fam.variables();
    const VarSet all = vars.all();
    for (VarId v : a)
        if (v >= vars.size()) throw InvalidInput("marginalize_hypergraph: unknown variable " + std::to_string(v));
    for (const auto& m : fam.members()) require_normalized(m);

    MarginalReport r;
    r.keep = a;
    r.hypergraph = hypergraph_of(fam, null_tol);
    const Graph g = induced_graph(r.hypergraph, all);
    const auto comps = eliminated_components(g, a);
    for (const auto& c : comps)
        if (!c.boundary.empty()) r.boundary_hypergraph.insert(c.boundary);
    r.restricted = r.hypergraph.restricted_to(a);

    // scope -> "non-null for some member" of U_B + V_B
    std::map<VarSet, bool> combined_non_null;
    for (const auto& member : fam.members()) {
        const auto innov = innovation_tables(member, aggregate_boundaries(member, comps));

        Potential marginal = restrict(member, a);
        std::vector<Innovation> kept_innov;
        for (const auto& [scope, table] : innov) {
            if (!table.is_null(null_tol)) {
                kept_innov.push_back({scope, table});
                if (!r.restricted.contains(scope)) r.added.insert(scope);
            }
            marginal.add(table);
        }
        Potential cleaned(marginal.variables_ptr());
        for (const auto& [scope, table] : marginal.tables()) {
            const bool non_null = !table.is_null(null_tol);
            combined_non_null[scope] = combined_non_null[scope] || non_null;
            if (non_null) cleaned.add(table);
        }
        r.marginal_potentials.push_back(std::move(cleaned));
        r.member_innovations.push_back(std::move(kept_innov));
    }

    for (const auto& b : r.restricted) {
        auto it = combined_non_null.find(b);
        if (it == combined_non_null.end() || !it->second) r.removed.insert(b);
    }
    r.kept = r.restricted.minus(r.removed);
    r.marginal_hypergraph = r.kept.unite(r.added);

    r.marginal_graph = induced_graph(r.marginal_hypergraph, a);
    r.restricted_graph = subgraph(g, a);
    r.graphically_collapsible = r.marginal_graph == r.restricted_graph;
    r.parametrically_collapsible = true;
    for (const auto& list : r.member_innovations)
        if (!list.empty()) r.parametrically_collapsible = false;
    r.ordering_condition = precedes(r.added, r.restricted) &&
                           (r.removed.empty() || precedes(r.removed, r.kept));
    return r;
}

}  // namespace margraph
