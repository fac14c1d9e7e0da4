#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "margraph/kernels.hpp"

#ifdef MARGRAPH_HAVE_OPENMP
#include <omp.h>
#endif

namespace margraph::kernels {

namespace omp {

void zero_anchored_difference(std::span<double> values, std::span<const std::size_t> radix,
                              std::span<const std::size_t> zero_digit) {
    std::size_t stride = 1;
    double* data = values.data();
    for (std::size_t k = radix.size(); k-- > 0;) {
        const std::size_t r = radix[k];
        const std::size_t block = r * stride;
        const std::size_t z = zero_digit[k];
        // one independent line per (outer block, inner offset)
        const auto lines = static_cast<std::int64_t>((values.size() / block) * stride);
#pragma omp parallel for schedule(static)
        for (std::int64_t line = 0; line < lines; ++line) {
            const std::size_t base = (static_cast<std::size_t>(line) / stride) * block;
            const std::size_t inner = static_cast<std::size_t>(line) % stride;
            const double anchor = data[base + z * stride + inner];
            for (std::size_t d = 0; d < r; ++d)
                if (d != z) data[base + d * stride + inner] -= anchor;
        }
        stride = block;
    }
}

void neg_log_sum_exp(std::span<const FactorSlice> factors, std::size_t outer, std::size_t inner,
                     std::span<double> out) {
#pragma omp parallel
    {
        std::vector<double> e(inner);
#pragma omp for schedule(dynamic)
        for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(outer); ++bi) {
            const auto b = static_cast<std::size_t>(bi);
            double lowest = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < inner; ++t) {
                double s = 0.0;
                for (const auto& f : factors) s += f.values[f.outer_offset[b] + f.inner_offset[t]];
                e[t] = s;
                lowest = std::min(lowest, s);
            }
            double acc = 0.0;
            for (std::size_t t = 0; t < inner; ++t) acc += std::exp(lowest - e[t]);
            out[b] = lowest - std::log(acc);
        }
    }
}

}  // namespace omp

bool openmp_enabled() noexcept {
#ifdef MARGRAPH_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

// Below this many entries the thread start-up dominates.
constexpr std::size_t kParallelThreshold = 1 << 14;

void zero_anchored_difference(std::span<double> values, std::span<const std::size_t> radix,
                              std::span<const std::size_t> zero_digit) {
    if (openmp_enabled() && values.size() >= kParallelThreshold)
        omp::zero_anchored_difference(values, radix, zero_digit);
    else
        serial::zero_anchored_difference(values, radix, zero_digit);
}

void neg_log_sum_exp(std::span<const FactorSlice> factors, std::size_t outer, std::size_t inner,
                     std::span<double> out) {
    if (openmp_enabled() && outer > 1 && outer * inner >= kParallelThreshold)
        omp::neg_log_sum_exp(factors, outer, inner, out);
    else
        serial::neg_log_sum_exp(factors, outer, inner, out);
}

}  // namespace margraph::kernels
