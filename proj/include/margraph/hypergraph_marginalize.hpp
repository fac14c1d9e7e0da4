#pragma once

#include <vector>

#include "margraph/potential.hpp"

namespace margraph {

/// Interaction created on a subset of the kept variables by summing out the
/// eliminated ones.
struct Innovation {
    VarSet scope;
    InteractionTable table;
};

/// Largest joint state space (boundary × component) a single component sum
/// may enumerate.
inline constexpr std::size_t kMaxComponentStates = std::size_t{1} << 24;

/// -ln Σ_{assignments of tau} exp(-Σ_{C ∩ tau ≠ ∅} U_C), as a table over the
/// boundary of tau in the graph induced by u's scopes.
[[nodiscard]] InteractionTable component_potential(const Potential& u, const VarSet& tau);

/// Same, over an explicitly supplied boundary. `boundary` must contain every
/// variable outside tau that shares a table with tau; extra variables are allowed
/// and the result is constant along them.
[[nodiscard]] InteractionTable component_potential(const Potential& u, const VarSet& tau,
                                                   const VarSet& boundary);

/// Sum of component_potential over the components whose boundary is d.
[[nodiscard]] InteractionTable boundary_aggregate(const Potential& u, const std::vector<VarSet>& components,
                                                  const VarSet& d);

/// Innovations of a normalized potential for the kept set a. Null tables
/// (at null_tol) are omitted. Throws PreconditionError when u is not normalized.
[[nodiscard]] std::vector<Innovation> innovations(const Potential& u, const VarSet& a,
                                                  double null_tol = kNullTolerance);

struct MarginalReport {
    VarSet keep;
    Hypergraph hypergraph;            // ℋ of the input family
    Hypergraph boundary_hypergraph;   // ℋ^A
    std::vector<Potential> marginal_potentials;           // one per family member
    std::vector<std::vector<Innovation>> member_innovations;  // one list per member
    Hypergraph marginal_hypergraph;   // ℋ_A = kept ∪ added
    Hypergraph restricted;            // ℋ|_A
    Hypergraph added;                 // ℋ_A^+
    Hypergraph removed;               // ℋ_A^-
    Hypergraph kept;                  // ℋ|_A \ ℋ_A^-
    Graph marginal_graph;             // 𝒢(ℋ_A)
    Graph restricted_graph;           // 𝒢(ℋ)_A
    bool graphically_collapsible = false;
    bool parametrically_collapsible = false;
    // Hypergraph-ordering form of the graphical condition:
    // ℋ_A^+ ⪯ ℋ|_A and (ℋ_A^- = ∅ or ℋ_A^- ⪯ ℋ|_A \ ℋ_A^-).
    bool ordering_condition = false;
};

/// Marginal potential(s), marginal hypergraph and collapsibility verdicts for
/// a family of normalized potentials.
[[nodiscard]] MarginalReport marginalize_hypergraph(const PotentialFamily& fam, const VarSet& a,
                                                    double null_tol = kNullTolerance);

}  // namespace margraph
