#include "gsrww/kernels.hpp"

#include <limits>

namespace gsrww::kernels::scalar {

void block_sums(std::span<const double> values, std::span<const std::size_t> bounds,
                std::span<double> out) {
    for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
        double acc = 0.0;
        for (std::size_t i = bounds[b]; i < bounds[b + 1]; ++i) acc += values[i];
        out[b] = acc;
    }
}

double grid_pair_sup(std::span<const double> prefix, std::span<const std::size_t> widths,
                     std::span<const double> weights) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t w = 0; w < widths.size(); ++w) {
        const std::size_t width = widths[w];
        const double c = weights[w];
        for (std::size_t j = 0; j + width < prefix.size(); ++j) {
            const double v = (prefix[j + width] - prefix[j]) * c;
            if (v > best) best = v;
        }
    }
    return best;
}

SquareMoments square_moments(std::span<const double> x) {
    SquareMoments m;
    for (double v : x) {
        const double sq = v * v;
        m.sum_sq += sq;
        m.sum_quad += sq * sq;
    }
    return m;
}

}  // namespace gsrww::kernels::scalar
