#pragma once

// Brute-force ground truth on small finite models: full enumeration, no
// factorization shortcuts, no shared code paths with the marginalization
// routines.

#include <vector>

#include "margraph/potential.hpp"

namespace margraph::oracle {

inline constexpr std::size_t kMaxJointStates = std::size_t{1} << 20;

/// Probabilities over every joint assignment of `scope` (last variable
/// fastest, digits index each variable's Domain).
struct DensityTable {
    VariablesPtr variables;
    VarSet scope;
    std::vector<double> probabilities;

    [[nodiscard]] std::size_t index_of(std::span<const std::size_t> digits) const;
    [[nodiscard]] std::vector<std::size_t> digits_of(std::size_t index) const;
};

/// exp(-energy)/K over all assignments of all registered variables.
[[nodiscard]] DensityTable joint_table(const Potential& u);

/// Exact summation over scope \ a.
[[nodiscard]] DensityTable marginal_table(const DensityTable& t, const VarSet& a);

/// The normalized potential whose Gibbs density equals t, by Möbius
/// inversion of -ln t anchored at the all-zero assignment.
[[nodiscard]] Potential normalized_potential_from_table(const DensityTable& t, double null_tol = kNullTolerance);

/// max over assignments of |ratio(x)/ratio(0) - 1| where
/// ratio = t(x) / exp(-energy of u at x). Zero iff t ∝ exp(-energy).
/// u may only have tables inside t.scope.
[[nodiscard]] double proportionality_error(const DensityTable& t, const Potential& u);

}  // namespace margraph::oracle
