#include "gsrww/model.hpp"

#include "gsrww/errors.hpp"
#include "gsrww/indexing.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <string>

namespace gsrww {

ShockSpec ShockSpec::none(const GarchParams& base) {
    ShockSpec spec;
    spec.base = base;
    spec.direction = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(base.dim()));
    return spec;
}

GarchParams ShockSpec::shocked() const {
    if (static_cast<std::size_t>(direction.size()) != base.dim())
        throw DomainError("shock direction has wrong length");
    return GarchParams::from_vector(base.to_vector() + direction * magnitude, base.r(), base.s());
}

const GarchParams& ShockSpec::at(std::size_t i, std::size_t n, const GarchParams& shocked) const {
    if (magnitude == 0.0) return base;
    const std::size_t first = floor_index(n, tau1_star) + 1;
    const std::size_t last = floor_index(n, tau2_star);
    return (i >= first && i <= last) ? shocked : base;
}

void ShockSpec::validate(const ParameterSpace& space) const {
    base.validate(space);
    if (static_cast<std::size_t>(direction.size()) != base.dim())
        throw DomainError("shock direction has wrong length");
    if (!(magnitude >= 0.0)) throw DomainError("shock magnitude must be non-negative");
    if (tau1_star < 0.0 || tau1_star > 1.0 || tau2_star < 0.0 || tau2_star > 1.0)
        throw DomainError("shock interval must lie in [0,1]");
    if (magnitude > 0.0) {
        if (!(tau1_star < tau2_star)) throw DomainError("shock interval needs tau1* < tau2*");
        shocked().validate(space);
    }
}

namespace {

double fixed_point_variance(const GarchParams& p) {
    const double persistence = p.persistence();
    if (persistence < 1.0) return p.alpha0 / (1.0 - persistence);
    return p.alpha0 / (1.0 - p.sum_beta());
}

}  // namespace

double unconditional_variance(const GarchParams& params) {
    const double persistence = params.persistence();
    if (!(persistence < 1.0)) return std::numeric_limits<double>::infinity();
    return params.alpha0 / (1.0 - persistence);
}

Eigen::MatrixXd companion_matrix(const GarchParams& params, double zeta) {
    const auto r = static_cast<Eigen::Index>(params.r());
    const auto s = static_cast<Eigen::Index>(params.s());
    const double z2 = zeta * zeta;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r + s, r + s);
    for (Eigen::Index j = 0; j < r; ++j) {
        a(0, j) = z2 * params.alphas[j];
        a(r, j) = params.alphas[j];
    }
    for (Eigen::Index k = 0; k < s; ++k) {
        a(0, r + k) = z2 * params.betas[k];
        a(r, r + k) = params.betas[k];
    }
    for (Eigen::Index j = 1; j < r; ++j) a(j, j - 1) = 1.0;
    for (Eigen::Index k = 1; k < s; ++k) a(r + k, r + k - 1) = 1.0;
    return a;
}

LyapunovEstimate lyapunov_exponent_product(const GarchParams& params, const InnovationDist& dist,
                                           std::size_t m, std::uint64_t seed,
                                           std::size_t renorm_every) {
    if (m < 10'000) throw DomainError("Lyapunov estimation needs at least 1e4 draws");
    if (renorm_every == 0) throw DomainError("renormalisation period must be positive");
    if (params.r() == 0 && params.s() == 0) throw DomainError("empty GARCH order");
    auto engine = make_engine(seed);
    InnovationSampler draw(dist);

    const auto dim = static_cast<Eigen::Index>(params.r() + params.s());
    Eigen::MatrixXd product = Eigen::MatrixXd::Identity(dim, dim);
    double log_norm_sum = 0.0;
    double block_sum = 0.0;
    double block_sq = 0.0;
    std::size_t blocks = 0;

    std::size_t step = 0;
    while (step < m) {
        const std::size_t len = std::min(renorm_every, m - step);
        for (std::size_t t = 0; t < len; ++t) product = companion_matrix(params, draw(engine)) * product;
        step += len;
        const double norm = product.norm();
        if (!std::isfinite(norm) || norm <= 0.0) {
            // A zero product (all coefficients zero) contracts at rate -inf.
            if (norm == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
            throw Error("non-finite companion product during Lyapunov estimation");
        }
        const double log_norm = std::log(norm);
        product /= norm;
        log_norm_sum += log_norm;
        if (len == renorm_every) {
            const double rate = log_norm / static_cast<double>(len);
            block_sum += rate;
            block_sq += rate * rate;
            ++blocks;
        }
    }
    LyapunovEstimate est;
    est.value = log_norm_sum / static_cast<double>(m);
    if (blocks > 1) {
        const double mean = block_sum / static_cast<double>(blocks);
        const double var = (block_sq - static_cast<double>(blocks) * mean * mean) /
                           static_cast<double>(blocks - 1);
        est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(blocks));
    }
    return est;
}

LyapunovEstimate lyapunov_exponent(const GarchParams& params, const InnovationDist& dist,
                                   std::size_t m, std::uint64_t seed, std::size_t renorm_every) {
    if (params.r() != 1 || params.s() != 1)
        return lyapunov_exponent_product(params, dist, m, seed, renorm_every);
    if (m < 10'000) throw DomainError("Lyapunov estimation needs at least 1e4 draws");

    auto engine = make_engine(seed);
    InnovationSampler draw(dist);
    const double a1 = params.alphas[0];
    const double b1 = params.betas[0];
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double z = draw(engine);
        const double v = std::log(a1 * z * z + b1);
        sum += v;
        sq += v * v;
    }
    const double md = static_cast<double>(m);
    const double mean = sum / md;
    const double var = std::max((sq - md * mean * mean) / (md - 1.0), 0.0);
    return {mean, std::sqrt(var / md)};
}

double companion_spectral_radius(const GarchParams& params) {
    const auto s = static_cast<Eigen::Index>(params.s());
    if (s == 0) throw DomainError("companion matrix B(theta) needs s >= 1");
    if (s == 1) return std::abs(params.betas[0]);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(s, s);
    for (Eigen::Index k = 0; k < s; ++k) b(0, k) = params.betas[k];
    for (Eigen::Index k = 1; k < s; ++k) b(k, k - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(b, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

SeriesSample simulate(const ShockSpec& spec, std::size_t n, const InnovationDist& dist,
                      std::uint64_t seed, std::size_t burn_in) {
    const GarchParams& base = spec.base;
    const std::size_t r = base.r();
    const std::size_t s = base.s();
    if (n < r + s + 1) throw DomainError("series length must be at least r+s+1");
    ParameterSpace space = ParameterSpace::garch(r, s, std::min(base.alpha0, 1e-12));
    spec.validate(space);
    const GarchParams shocked = spec.magnitude > 0.0 ? spec.shocked() : base;

    auto engine = make_engine(seed);
    InnovationSampler draw(dist);

    // Lag buffers, most recent first.
    const double start = fixed_point_variance(base);
    std::vector<double> x2_lags(r, start);
    std::vector<double> s2_lags(s, start);

    SeriesSample out;
    out.seed = seed;
    out.burn_in = burn_in;
    out.x.reserve(n);
    out.sigma2.reserve(n);
    out.zeta.reserve(n);

    const std::size_t total = burn_in + n;
    for (std::size_t t = 0; t < total; ++t) {
        const bool kept = t >= burn_in;
        const std::size_t i = t + 1 - burn_in;  // 1-based once kept
        const GarchParams& p = kept ? spec.at(i, n, shocked) : base;

        double sigma2 = p.alpha0;
        for (std::size_t j = 0; j < r; ++j) sigma2 += p.alphas[j] * x2_lags[j];
        for (std::size_t k = 0; k < s; ++k) sigma2 += p.betas[k] * s2_lags[k];
        if (!std::isfinite(sigma2))
            throw OverflowError(kept ? i : 0, "conditional variance overflowed during simulation");

        const double z = draw(engine);
        const double x = z * std::sqrt(sigma2);
        if (r > 0) {
            for (std::size_t j = r - 1; j > 0; --j) x2_lags[j] = x2_lags[j - 1];
            x2_lags[0] = x * x;
        }
        if (s > 0) {
            for (std::size_t k = s - 1; k > 0; --k) s2_lags[k] = s2_lags[k - 1];
            s2_lags[0] = sigma2;
        }
        if (kept) {
            out.x.push_back(x);
            out.sigma2.push_back(sigma2);
            out.zeta.push_back(z);
        }
    }
    return out;
}

}  // namespace gsrww
