#include "jcps/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "jcps/detail/logspace.hpp"
#include "jcps/errors.hpp"

namespace jcps {

namespace {

using detail::SignedLog;

void check_tail(double abs_alpha_sq, int cutoff, double bound, const char* what) {
    const double tail = poisson_tail(abs_alpha_sq, cutoff);
    if (tail > bound) {
        throw TruncationError(std::string(what) + ": cutoff " + std::to_string(cutoff) +
                                  " leaves Poisson tail mass " + std::to_string(tail),
                              tail);
    }
}

// Accumulates sign * exp(log_abs - shift) terms.
class ScaledSum {
public:
    explicit ScaledSum(double shift) : shift_(shift) {}
    void add(double log_abs, int sign) {
        if (log_abs != detail::kNegInf) sum_ += sign * std::exp(log_abs - shift_);
    }
    double value() const { return sum_; }

private:
    double shift_;
    double sum_ = 0.0;
};

std::vector<double> log_beta_terms(double abs_sq, double r, int atoms, int k, int cutoff) {
    std::vector<double> terms(static_cast<std::size_t>(cutoff) + 1);
    for (int l = 0; l <= cutoff; ++l) {
        terms[l] = detail::log_power_over_factorial(abs_sq, l) +
                   detail::log_cos_power(r, l + k, 2 * atoms).log_abs;
    }
    return terms;
}

double log_beta(double abs_sq, double r, int atoms, int k, int cutoff) {
    return detail::log_sum_exp(log_beta_terms(abs_sq, r, atoms, k, cutoff));
}

}  // namespace

QuadratureStats make_quadrature_stats(double phase, double mean, double second_moment) {
    const double variance = second_moment - mean * mean;
    return {phase, mean, second_moment, variance, variance - 1.0, 10.0 * std::log10(variance)};
}

QuadratureStats quadrature_moments_closed_form(const ProtocolParams& params) {
    params.validate();
    const double abs_sq = std::norm(params.alpha);
    check_tail(abs_sq, params.cutoff, kCoherentTailBound, "quadrature moments");
    const int atoms = params.atoms;
    const double r = params.r;

    double shift = detail::kNegInf;
    for (int n = 0; n <= params.cutoff; ++n) {
        shift = std::max(shift, detail::log_power_over_factorial(abs_sq, n));
    }
    ScaledSum norm(shift), first(shift), second_shifted(shift), second_raised(shift);
    for (int n = 0; n <= params.cutoff; ++n) {
        const double w = detail::log_power_over_factorial(abs_sq, n);
        const SignedLog c0 = detail::log_cos_power(r, n, atoms);
        const SignedLog c1 = detail::log_cos_power(r, n + 1, atoms);
        const SignedLog c2 = detail::log_cos_power(r, n + 2, atoms);
        norm.add(w + 2.0 * c0.log_abs, 1);
        first.add(w + c0.log_abs + c1.log_abs, c0.sign * c1.sign);
        second_shifted.add(w + c0.log_abs + c2.log_abs, c0.sign * c2.sign);
        second_raised.add(w + 2.0 * c1.log_abs, 1);
    }
    if (!(norm.value() > 0.0)) throw NumericalError("quadrature moments: degenerate trace");

    const Complex rot = std::polar(1.0, -params.phase);
    const double displacement = 2.0 * (params.alpha * rot).real();
    const double squeeze = 2.0 * (params.alpha * params.alpha * rot * rot).real();
    const double mean = displacement * first.value() / norm.value();
    const double second = (squeeze * second_shifted.value() +
                           2.0 * abs_sq * second_raised.value() + norm.value()) /
                          norm.value();
    return make_quadrature_stats(params.phase, mean, second);
}

QuadratureStats quadrature_moments_trace(const FieldState& state, double phi) {
    const Matrix a = annihilation(state.cutoff()).matrix;
    const Matrix x = a * std::polar(1.0, -phi) + a.adjoint() * std::polar(1.0, phi);
    const Matrix rho_x = state.matrix() * x;
    const double mean = rho_x.trace().real();
    const double second = (rho_x * x).trace().real();
    return make_quadrature_stats(phi, mean, second);
}

double uncertainty_product(const FieldState& state, double phi) {
    return quadrature_moments_trace(state, phi).variance *
           quadrature_moments_trace(state, phi + std::numbers::pi / 2.0).variance;
}

double beta_fn(Complex alpha, double r, int atoms, int k, int cutoff) {
    if (k < 0) throw ConfigError("beta: k must be >= 0");
    check_tail(std::norm(alpha), cutoff, kBetaTailBound, "beta");
    return std::exp(log_beta(std::norm(alpha), r, atoms, k, cutoff));
}

double mandel_q(Complex alpha, double r, int atoms, int cutoff) {
    const double abs_sq = std::norm(alpha);
    if (abs_sq == 0.0) throw UndefinedMeanError("Mandel Q undefined: alpha = 0 gives <n> = 0");
    check_tail(abs_sq, cutoff, kBetaTailBound, "mandel_q");
    const double b0 = log_beta(abs_sq, r, atoms, 0, cutoff);
    const double b1 = log_beta(abs_sq, r, atoms, 1, cutoff);
    const double b2 = log_beta(abs_sq, r, atoms, 2, cutoff);
    if (b1 == detail::kNegInf) throw UndefinedMeanError("Mandel Q undefined: <n> = 0");
    return abs_sq * (std::exp(b2 - b1) - std::exp(b1 - b0));
}

double mandel_q_from_distribution(const std::vector<double>& probabilities) {
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t n = 0; n < probabilities.size(); ++n) {
        const double nn = static_cast<double>(n);
        mean += nn * probabilities[n];
        second += nn * nn * probabilities[n];
    }
    if (mean == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (second - mean * mean) / mean - 1.0;
}

PhotonStats photon_statistics(Complex alpha, double r, int atoms, int cutoff) {
    const double abs_sq = std::norm(alpha);
    check_tail(abs_sq, cutoff, kCoherentTailBound, "photon statistics");
    const auto terms = log_beta_terms(abs_sq, r, atoms, 0, cutoff);
    const double log_total = detail::log_sum_exp(terms);
    if (log_total == detail::kNegInf) throw NumericalError("photon statistics: degenerate trace");

    PhotonStats stats;
    stats.probabilities.resize(terms.size());
    stats.mean_n = 0.0;
    stats.second_moment_n = 0.0;
    for (std::size_t n = 0; n < terms.size(); ++n) {
        const double p = std::exp(terms[n] - log_total);
        const double nn = static_cast<double>(n);
        stats.probabilities[n] = p;
        stats.mean_n += nn * p;
        stats.second_moment_n += nn * nn * p;
    }
    stats.mandel_q = mandel_q_from_distribution(stats.probabilities);
    return stats;
}

}  // namespace jcps
