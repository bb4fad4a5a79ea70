#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace gsrww::kernels {

enum class Isa { scalar, avx2 };

/// Best instruction set supported by this CPU and build.
Isa detected_isa() noexcept;
/// Instruction set currently used by the dispatching entry points.
Isa active_isa() noexcept;
/// Forces a variant; requests the CPU cannot run fall back to scalar.
/// Returns the variant actually selected.
Isa set_isa(Isa isa) noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// out[b] = sum of values[bounds[b] .. bounds[b+1]) for b < bounds.size()-1.
void block_sums(std::span<const double> values, std::span<const std::size_t> bounds,
                std::span<double> out);

/// max over j and widths[w] of (prefix[j + widths[w]] - prefix[j]) * weights[w],
/// with j + widths[w] < prefix.size(). Returns -inf when nothing is admissible.
double grid_pair_sup(std::span<const double> prefix, std::span<const std::size_t> widths,
                     std::span<const double> weights);

struct SquareMoments {
    double sum_sq = 0.0;    // sum x^2
    double sum_quad = 0.0;  // sum x^4
};

/// Sums of x^2 and x^4 over the span.
SquareMoments square_moments(std::span<const double> x);

namespace scalar {
void block_sums(std::span<const double> values, std::span<const std::size_t> bounds,
                std::span<double> out);
double grid_pair_sup(std::span<const double> prefix, std::span<const std::size_t> widths,
                     std::span<const double> weights);
SquareMoments square_moments(std::span<const double> x);
}  // namespace scalar

namespace avx2 {
/// Available only when compiled for x86-64; callers go through dispatch.
bool compiled() noexcept;
void block_sums(std::span<const double> values, std::span<const std::size_t> bounds,
                std::span<double> out);
double grid_pair_sup(std::span<const double> prefix, std::span<const std::size_t> widths,
                     std::span<const double> weights);
SquareMoments square_moments(std::span<const double> x);
}  // namespace avx2

}  // namespace gsrww::kernels
