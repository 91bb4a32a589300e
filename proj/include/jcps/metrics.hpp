#pragma once

#include <vector>

#include "jcps/fock.hpp"

namespace jcps {

/// Moments of x(phi) = a e^{-i phi} + a^dag e^{i phi}. Vacuum variance is 1.
struct QuadratureStats {
    double phase;
    double mean;
    double second_moment;
    double variance;
    double normal_ordered_variance;  // variance - 1; negative means squeezed
    double squeezing_db;             // 10 log10(variance / 1)
};

QuadratureStats make_quadrature_stats(double phase, double mean, double second_moment);

/// Quadrature moments of the N-atom post-selected state from the single
/// photon-number sums (no density matrix is built).
QuadratureStats quadrature_moments_closed_form(const ProtocolParams& params);

/// Tr[rho x(phi)] and Tr[rho x(phi)^2] with x(phi) built from truncated
/// ladder matrices.
QuadratureStats quadrature_moments_trace(const FieldState& state, double phi);

/// Var x(phi) * Var x(phi + pi/2); at least 1 for every physical state.
double uncertainty_product(const FieldState& state, double phi);

inline constexpr double kBetaTailBound = 1e-14;

/// beta(k) = sum_l |alpha|^{2l}/l! cos^{2N}(r sqrt(l + k)) for l = 0..cutoff.
/// Throws TruncationError when the dropped Poisson mass exceeds 1e-14
/// (relative to e^{|alpha|^2}, which bounds the dropped terms).
double beta_fn(Complex alpha, double r, int atoms, int k, int cutoff);

/// Q_M = |alpha|^2 (beta(2)/beta(1) - beta(1)/beta(0)).
/// Throws UndefinedMeanError for alpha = 0.
double mandel_q(Complex alpha, double r, int atoms, int cutoff);

struct PhotonStats {
    std::vector<double> probabilities;  // c_n, n = 0..cutoff
    double mean_n;
    double second_moment_n;
    double mandel_q;  // from the moments; NaN when mean_n == 0
};

PhotonStats photon_statistics(Complex alpha, double r, int atoms, int cutoff);

/// Moment-form Q_M of an arbitrary photon-number distribution.
double mandel_q_from_distribution(const std::vector<double>& probabilities);

}  // namespace jcps
