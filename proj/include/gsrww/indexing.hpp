#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace gsrww {

/// floor(n * tau) for tau in [0,1]. The nudge absorbs representation error
/// in grid fractions like j/L so that floor(n * j/L) matches integer division.
inline std::size_t floor_index(std::size_t n, double tau) noexcept {
    if (tau <= 0.0) return 0;
    const double v = std::floor(static_cast<double>(n) * tau + 1e-9);
    return std::min(n, static_cast<std::size_t>(v));
}

}  // namespace gsrww
