#pragma once

#include <vector>

#include "jcps/fock.hpp"

namespace jcps {

/// Field-space blocks of the joint atom-field state after one transit, in the
/// atomic basis (|e>, |g>). All blocks are unnormalized.
struct JointBlocks {
    Matrix rho11;  // excited atom: photon absorbed
    Matrix rho12;
    Matrix rho21;
    Matrix rho22;  // atom stays in |g>
};

/// cos(r sqrt(n)) for n = 0..cutoff, the diagonal of C' = cos(r sqrt(a^dag a)).
std::vector<double> cosine_coupling_diag(double r, int cutoff);

/// C' rho C': field left behind when the atom exits in |g>.
FieldState ground_branch(const FieldState& state, double r);

/// S' rho S'^dag with S' = -i a sin(r sqrt(a^dag a)) / sqrt(a^dag a).
///
/// The textbook form -S' rho S carries an explicit minus sign because
/// S = -i a^dag sin(r sqrt(a a^dag)) / sqrt(a a^dag) equals -S'^dag. Both
/// describe the same positive block: entry (n-1, m-1) is
/// sin(r sqrt n) sin(r sqrt m) rho(n, m). The joint-evolution oracle confirms
/// this sign.
FieldState excited_branch(const FieldState& state, double r);

/// Closed-form cross blocks S' rho C' (rho12) and C' rho S'^dag (rho21).
JointBlocks closed_form_blocks(const FieldState& state, double r);

/// Brute-force evolution of rho_F (x) |g><g| under the resonant
/// Jaynes-Cummings interaction exp(-i r (sigma+ a + sigma- a^dag)).
///
/// The joint space is ordered (|e,0..cutoff>, |g,0..cutoff>); the propagator
/// comes from a dense scaled-and-squared exponential. With the atom starting
/// in |g>, every populated level |g,n> couples only to |e,n-1>, so the
/// truncation does not clip any populated pair.
JointBlocks joint_evolution_oracle(const FieldState& state, double r);

}  // namespace jcps
