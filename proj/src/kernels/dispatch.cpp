#include "gsrww/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace gsrww::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() noexcept {
    if (const char* env = std::getenv("GSRWW_ISA"); env && std::strcmp(env, "scalar") == 0)
        return Isa::scalar;
    return detected_isa();
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

Isa detected_isa() noexcept {
    return avx2::compiled() && cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) noexcept {
    const Isa chosen = (isa == Isa::avx2 && detected_isa() != Isa::avx2) ? Isa::scalar : isa;
    current().store(chosen, std::memory_order_relaxed);
    return chosen;
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void block_sums(std::span<const double> values, std::span<const std::size_t> bounds,
                std::span<double> out) {
    if (active_isa() == Isa::avx2) return avx2::block_sums(values, bounds, out);
    scalar::block_sums(values, bounds, out);
}

double grid_pair_sup(std::span<const double> prefix, std::span<const std::size_t> widths,
                     std::span<const double> weights) {
    if (active_isa() == Isa::avx2) return avx2::grid_pair_sup(prefix, widths, weights);
    return scalar::grid_pair_sup(prefix, widths, weights);
}

SquareMoments square_moments(std::span<const double> x) {
    if (active_isa() == Isa::avx2) return avx2::square_moments(x);
    return scalar::square_moments(x);
}

}  // namespace gsrww::kernels
