#include <algorithm>
#include <cmath>
#include <limits>

#include "margraph/kernels.hpp"

namespace margraph::kernels::serial {

void zero_anchored_difference(std::span<double> values, std::span<const std::size_t> radix,
                              std::span<const std::size_t> zero_digit) {
    std::size_t stride = 1;
    for (std::size_t k = radix.size(); k-- > 0;) {
        const std::size_t r = radix[k];
        const std::size_t block = r * stride;
        const std::size_t z = zero_digit[k];
        for (std::size_t base = 0; base < values.size(); base += block) {
            for (std::size_t inner = 0; inner < stride; ++inner) {
                const double anchor = values[base + z * stride + inner];
                for (std::size_t d = 0; d < r; ++d)
                    if (d != z) values[base + d * stride + inner] -= anchor;
            }
        }
        stride = block;
    }
}

void neg_log_sum_exp(std::span<const FactorSlice> factors, std::size_t outer, std::size_t inner,
                     std::span<double> out) {
    std::vector<double> e(inner);
    for (std::size_t b = 0; b < outer; ++b) {
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

}  // namespace margraph::kernels::serial
