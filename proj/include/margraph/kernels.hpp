#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp with identical
// results (bitwise for the differencing kernel; the reductions in
// neg_log_sum_exp are per output entry so also bitwise). The unqualified
// entry points pick the OpenMP version when it was compiled in.

#include <cstddef>
#include <span>
#include <vector>

namespace margraph::kernels {

/// One interaction table laid out for a (boundary × eliminated) sweep:
/// entry for boundary assignment b and eliminated assignment t is
/// values[outer_offset[b] + inner_offset[t]].
struct FactorSlice {
    std::span<const double> values;
    std::vector<std::size_t> outer_offset;
    std::vector<std::size_t> inner_offset;
};

namespace serial {

/// In-place zero-anchored finite differencing along every axis of a dense
/// table (last axis fastest). Afterwards the entry at digits x holds
///   Σ_{B ⊆ S(x)} (-1)^{|S(x) \ B|} T(x_B, 0)
/// where S(x) is the set of axes whose digit differs from zero_digit.
void zero_anchored_difference(std::span<double> values, std::span<const std::size_t> radix,
                              std::span<const std::size_t> zero_digit);

/// out[b] = -ln Σ_t exp(-Σ_f f(b, t)) for b < outer, t < inner.
void neg_log_sum_exp(std::span<const FactorSlice> factors, std::size_t outer, std::size_t inner,
                     std::span<double> out);

}  // namespace serial

namespace omp {

void zero_anchored_difference(std::span<double> values, std::span<const std::size_t> radix,
                              std::span<const std::size_t> zero_digit);

void neg_log_sum_exp(std::span<const FactorSlice> factors, std::size_t outer, std::size_t inner,
                     std::span<double> out);

}  // namespace omp

[[nodiscard]] bool openmp_enabled() noexcept;

void zero_anchored_difference(std::span<double> values, std::span<const std::size_t> radix,
                              std::span<const std::size_t> zero_digit);

void neg_log_sum_exp(std::span<const FactorSlice> factors, std::size_t outer, std::size_t inner,
                     std::span<double> out);

}  // namespace margraph::kernels
