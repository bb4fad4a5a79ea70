#include "gsrww/innovations.hpp"

#include "gsrww/errors.hpp"

#include <cmath>
#include <limits>

namespace gsrww {

void InnovationDist::validate() const {
    if (kind == InnovationKind::student_t) {
        if (!df || !(*df > 2.0))
            throw DomainError("Student-t innovations need df > 2 for unit variance");
    }
}

double InnovationDist::fourth_moment() const {
    switch (kind) {
    case InnovationKind::normal:
        return 3.0;
    case InnovationKind::rademacher:
        return 1.0;
    case InnovationKind::student_t: {
        const double nu = df.value_or(7.0);
        if (nu <= 4.0) return std::numeric_limits<double>::infinity();
        return 3.0 * (nu - 2.0) / (nu - 4.0);
    }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string InnovationDist::name() const {
    switch (kind) {
    case InnovationKind::normal:
        return "normal";
    case InnovationKind::rademacher:
        return "rademacher";
    case InnovationKind::student_t:
        return "t" + std::to_string(static_cast<int>(df.value_or(7.0)));
    }
    return "unknown";
}

InnovationDist InnovationDist::parse(const std::string& text) {
    if (text == "normal") return normal();
    if (text == "rademacher") return rademacher();
    if (text == "t" || text == "student") return student_t();
    if (text.size() > 1 && text[0] == 't') {
        try {
            return student_t(std::stod(text.substr(1)));
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("unknown innovation law '" + text + "' (normal, t<df>, rademacher)");
}

InnovationSampler::InnovationSampler(const InnovationDist& dist) : dist_(dist) {
    dist_.validate();
    if (dist_.kind == InnovationKind::student_t) {
        const double nu = *dist_.df;
        student_ = std::student_t_distribution<double>(nu);
        t_scale_ = std::sqrt((nu - 2.0) / nu);
    }
}

double InnovationSampler::operator()(Engine& engine) {
    switch (dist_.kind) {
    case InnovationKind::normal:
        return normal_(engine);
    case InnovationKind::student_t:
        return t_scale_ * student_(engine);
    case InnovationKind::rademacher:
        return coin_(engine) ? 1.0 : -1.0;
    }
    return 0.0;
}

}  // namespace gsrww
