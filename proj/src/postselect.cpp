#include "jcps/postselect.hpp"

#include <cmath>
#include <string>

#include "jcps/detail/logspace.hpp"
#include "jcps/errors.hpp"
#include "jcps/jc_dynamics.hpp"

namespace jcps {

namespace {

constexpr double kDegenerateTrace = 1e-300;

void check_tail(Complex alpha, int cutoff) {
    const double tail = poisson_tail(std::norm(alpha), cutoff);
    if (tail > kCoherentTailBound) {
        throw TruncationError("cutoff " + std::to_string(cutoff) +
                                  " too small: coherent tail mass " + std::to_string(tail) +
                                  " exceeds 1e-9",
                              tail);
    }
}

// log of sum_n |alpha|^{2n}/n! cos^{2k}(r sqrt n) for n <= cutoff.
double log_diagonal_sum(double abs_alpha_sq, double r, int k, int cutoff) {
    std::vector<double> terms(static_cast<std::size_t>(cutoff) + 1);
    for (int n = 0; n <= cutoff; ++n) {
        terms[n] = detail::log_power_over_factorial(abs_alpha_sq, n) +
                   (k == 0 ? 0.0 : detail::log_cos_power(r, n, 2 * k).log_abs);
    }
    return detail::log_sum_exp(terms);
}

void check_atoms(int atoms) {
    if (atoms < 1 || atoms > kMaxAtoms) {
        throw ConfigError("atoms: must lie in [1, " + std::to_string(kMaxAtoms) + "]");
    }
}

}  // namespace

Complex ps_coefficient(Complex alpha, double r, int atoms, int n, int m) {
    const double abs_sq = std::norm(alpha);
    const auto cn = detail::log_cos_power(r, n, atoms);
    const auto cm = detail::log_cos_power(r, m, atoms);
    const double log_mag = 0.5 * detail::log_power_over_factorial(abs_sq, n) +
                           0.5 * detail::log_power_over_factorial(abs_sq, m) + cn.log_abs +
                           cm.log_abs;
    if (log_mag == detail::kNegInf) return {0.0, 0.0};
    return std::polar(cn.sign * cm.sign * std::exp(log_mag), (n - m) * std::arg(alpha));
}

PSOutcome ps_state(const ProtocolParams& params) {
    params.validate();
    check_tail(params.alpha, params.cutoff);
    const double abs_sq = std::norm(params.alpha);
    const double theta = std::arg(params.alpha);
    const int dim = params.cutoff + 1;

    std::vector<double> amp_log(dim);
    std::vector<int> amp_sign(dim);
    for (int n = 0; n < dim; ++n) {
        const auto c = detail::log_cos_power(params.r, n, params.atoms);
        amp_log[n] = 0.5 * detail::log_power_over_factorial(abs_sq, n) + c.log_abs;
        amp_sign[n] = c.sign;
    }
    std::vector<double> diag(dim);
    for (int n = 0; n < dim; ++n) diag[n] = 2.0 * amp_log[n];
    const double log_trace = detail::log_sum_exp(diag);
    const double log_coherent = log_diagonal_sum(abs_sq, params.r, 0, params.cutoff);
    const double probability = std::exp(log_trace - log_coherent);
    if (log_trace == detail::kNegInf || !(probability >= kDegenerateTrace)) {
        throw NumericalError("degenerate post-selected trace at r = " + std::to_string(params.r));
    }

    Matrix rho(dim, dim);
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            const double mag = std::exp(amp_log[n] + amp_log[m] - log_trace);
            rho(n, m) = std::polar(amp_sign[n] * amp_sign[m] * mag, (n - m) * theta);
        }
    }

    std::vector<double> steps;
    steps.reserve(params.atoms);
    double log_prev = log_coherent;
    for (int i = 1; i <= params.atoms; ++i) {
        const double log_current = log_diagonal_sum(abs_sq, params.r, i, params.cutoff);
        steps.push_back(std::exp(log_current - log_prev));
        log_prev = log_current;
    }
    return {FieldState(std::move(rho), true), probability, std::move(steps), params};
}

PSOutcome iterate_ps(const FieldState& state, double r, int atoms) {
    check_atoms(atoms);
    const std::vector<double> rs(static_cast<std::size_t>(atoms), r);
    return iterate_ps(state, rs);
}

PSOutcome iterate_ps(const FieldState& state, std::span<const double> r_per_atom) {
    if (r_per_atom.empty()) throw ConfigError("atoms: need at least one coupling value");
    check_atoms(static_cast<int>(r_per_atom.size()));
    if (std::abs(state.trace() - 1.0) > 1e-10) {
        throw ConfigError("iterate_ps: input state must be normalized");
    }
    FieldState current = state;
    double probability = 1.0;
    std::vector<double> steps;
    steps.reserve(r_per_atom.size());
    for (double r : r_per_atom) {
        const FieldState block = ground_branch(current, r);
        const double p = block.trace().real();
        if (!(p >= kDegenerateTrace)) {
            throw NumericalError("degenerate post-selected trace at r = " + std::to_string(r));
        }
        steps.push_back(p);
        probability *= p;
        current = block.renormalized();
    }
    return {std::move(current), probability, std::move(steps), std::nullopt};
}

double success_probability(Complex alpha, double r, int atoms, int cutoff) {
    check_atoms(atoms);
    if (!std::isfinite(r) || r < 0.0) throw ConfigError("r: must be finite and >= 0");
    const double abs_sq = std::norm(alpha);
    return std::exp(log_diagonal_sum(abs_sq, r, atoms, cutoff) -
                    log_diagonal_sum(abs_sq, r, 0, cutoff));
}

std::vector<ProbabilityPoint> success_probability_curve(Complex alpha, int atoms,
                                                        std::span<const double> r_grid,
                                                        std::optional<int> cutoff) {
    const int n_max = cutoff.value_or(default_cutoff(alpha));
    check_tail(alpha, n_max);
    std::vector<ProbabilityPoint> curve;
    curve.reserve(r_grid.size());
    for (double r : r_grid) curve.push_back({r, success_probability(alpha, r, atoms, n_max)});
    return curve;
}

}  // namespace jcps
