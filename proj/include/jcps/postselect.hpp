#pragma once

#include <optional>
#include <span>
#include <vector>

#include "jcps/fock.hpp"

namespace jcps {

/// Field state after all N atoms were detected in |g>.
struct PSOutcome {
    FieldState state;                        // normalized
    double success_probability;              // P_N = Tr of the unnormalized N-atom block
    std::vector<double> step_probabilities;  // p_1..p_N; their product is P_N
    std::optional<ProtocolParams> params;    // set when built from a coherent input
};

/// c_nm(alpha, N) = alpha^n conj(alpha)^m / sqrt(n! m!) cos^N(r sqrt n) cos^N(r sqrt m),
/// assembled from log-magnitudes so factorials never overflow.
Complex ps_coefficient(Complex alpha, double r, int atoms, int n, int m);

/// Closed-form N-atom post-selected state for a coherent input.
///
/// Probabilities are taken relative to the truncated, renormalized coherent
/// state, so r = 0 or alpha = 0 give exactly P_N = 1. Throws TruncationError
/// for an inadequate cutoff and NumericalError when the conditioned trace
/// drops below 1e-300.
PSOutcome ps_state(const ProtocolParams& params);

/// Repeated C' rho C' / Tr sandwich, one step per atom. Works for any
/// normalized input state.
PSOutcome iterate_ps(const FieldState& state, double r, int atoms);

/// Same recursion with an individual coupling per atom.
PSOutcome iterate_ps(const FieldState& state, std::span<const double> r_per_atom);

/// P_N from the photon-number diagonal alone.
double success_probability(Complex alpha, double r, int atoms, int cutoff);

struct ProbabilityPoint {
    double r;
    double probability;
};

/// P_N(r) over a grid, in grid order. Uses default_cutoff(alpha) unless given.
std::vector<ProbabilityPoint> success_probability_curve(Complex alpha, int atoms,
                                                        std::span<const double> r_grid,
                                                        std::optional<int> cutoff = std::nullopt);

}  // namespace jcps
