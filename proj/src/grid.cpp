#include "gsrww/grid.hpp"

#include "gsrww/errors.hpp"

#include <cmath>

namespace gsrww {

namespace {
constexpr double kSlack = 1e-12;
}

std::vector<std::size_t> SearchGrid::admissible_widths() const {
    std::vector<std::size_t> widths;
    for (std::size_t w = 1; w <= L; ++w) {
        const double span = static_cast<double>(w) / static_cast<double>(L);
        if (span + kSlack >= kappa && span <= 1.0 - kappa_prime + kSlack) widths.push_back(w);
    }
    return widths;
}

void SearchGrid::validate() const {
    if (L == 0) throw ConfigError("grid count L must be positive");
    if (!(kappa > 0.0 && kappa < 1.0)) throw ConfigError("kappa must lie in (0,1)");
    if (!(kappa_prime > 0.0 && kappa_prime < 1.0)) throw ConfigError("kappa' must lie in (0,1)");
    if (!(chi >= 0.0 && chi <= 1.0)) throw ConfigError("chi must lie in [0,1]");
    if (kappa > 1.0 - kappa_prime + kSlack)
        throw ConfigError("kappa must not exceed 1 - kappa'");
    if (static_cast<double>(L) * kappa + kSlack < 1.0) throw ConfigError("L * kappa must be at least 1");
    if (admissible_widths().empty()) throw ConfigError("grid has no admissible windows");
}

std::vector<SearchGrid::Pair> SearchGrid::admissible_pairs() const {
    validate();
    const auto widths = admissible_widths();
    std::vector<Pair> pairs;
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t w : widths)
            if (j + w <= L) pairs.push_back({j, j + w});
    return pairs;
}

}  // namespace gsrww
