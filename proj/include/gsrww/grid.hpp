#pragma once

#include <cstddef>
#include <vector>

namespace gsrww {

/// Candidate windows (j/L, k/L) with kappa <= (k-j)/L <= 1 - kappa_prime.
struct SearchGrid {
    std::size_t L = 30;
    double kappa = 0.1;
    double kappa_prime = 0.1;
    double chi = 0.5;

    void validate() const;

    struct Pair {
        std::size_t j;
        std::size_t k;
        friend bool operator==(const Pair&, const Pair&) = default;
    };

    /// Pairs ordered by j, then k.
    [[nodiscard]] std::vector<Pair> admissible_pairs() const;
    /// Widths k-j that are admissible, ascending.
    [[nodiscard]] std::vector<std::size_t> admissible_widths() const;
};

}  // namespace gsrww
