#pragma once

#include "gsrww/random.hpp"

#include <optional>
#include <random>
#include <string>

namespace gsrww {

enum class InnovationKind { normal, student_t, rademacher };

/// Law of the i.i.d. innovations zeta_i: mean 0 and variance 1 for every kind.
///
/// `rademacher` draws +-1, so zeta^2 == 1; it exists for deterministic tests
/// and is rejected by the estimators.
struct InnovationDist {
    InnovationKind kind = InnovationKind::normal;
    std::optional<double> df;

    static InnovationDist normal() { return {}; }
    static InnovationDist student_t(double df = 7.0) { return {InnovationKind::student_t, df}; }
    static InnovationDist rademacher() { return {InnovationKind::rademacher, std::nullopt}; }

    void validate() const;
    /// E zeta^4 (infinite for Student-t with df <= 4).
    [[nodiscard]] double fourth_moment() const;
    [[nodiscard]] bool degenerate_square() const noexcept {
        return kind == InnovationKind::rademacher;
    }
    [[nodiscard]] std::string name() const;

    static InnovationDist parse(const std::string& text);
};

/// Stateful sampler bound to one engine.
class InnovationSampler {
public:
    explicit InnovationSampler(const InnovationDist& dist);

    double operator()(Engine& engine);

private:
    InnovationDist dist_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::student_t_distribution<double> student_{7.0};
    std::bernoulli_distribution coin_{0.5};
    double t_scale_ = 1.0;
};

}  // namespace gsrww
