#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace jcps {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Single-mode field density matrix on the truncated Fock space {|0>, ..., |cutoff>}.
///
/// Immutable after construction. `normalized` records whether the trace is
/// meant to be one (post-selected states) or is an unnormalized branch block.
class FieldState {
public:
    FieldState(Matrix matrix, bool normalized);

    static FieldState vacuum(int cutoff) { return fock(0, cutoff); }
    static FieldState fock(int n, int cutoff);

    const Matrix& matrix() const noexcept { return matrix_; }
    int cutoff() const noexcept { return static_cast<int>(matrix_.rows()) - 1; }
    int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
    bool normalized() const noexcept { return normalized_; }

    Complex operator()(int n, int m) const { return matrix_(n, m); }
    Complex trace() const { return matrix_.trace(); }

    /// Divides by the trace. Throws NumericalError when the trace is below 1e-300.
    FieldState renormalized() const;

private:
    Matrix matrix_;
    bool normalized_;
};

enum class LadderKind { annihilation, creation, number };

struct LadderMatrix {
    LadderKind kind;
    Matrix matrix;
};

LadderMatrix annihilation(int cutoff);
LadderMatrix creation(int cutoff);
LadderMatrix number_operator(int cutoff);

inline constexpr int kMaxAtoms = 64;
inline constexpr double kCoherentTailBound = 1e-9;

/// max(32, ceil(|alpha|^2 + 8|alpha| + 16)).
int default_cutoff(Complex alpha);

/// Parameters of the post-selection protocol. `r` is the dimensionless
/// coupling Omega_0 t / 2; it is the only dynamical parameter.
struct ProtocolParams {
    Complex alpha{3.1622776601683795, 0.0};
    double r = 0.0;
    int atoms = 1;
    int cutoff = 52;
    double phase = 0.0;
    bool cutoff_overridden = false;

    /// Fills in default_cutoff(alpha) unless `cutoff` is given.
    static ProtocolParams make(Complex alpha, double r, int atoms,
                               std::optional<int> cutoff = std::nullopt, double phase = 0.0);

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// P(X > n_max) for X ~ Poisson(mean), summed in log space.
double poisson_tail(double mean, int n_max);

/// Smallest n_max whose discarded Poisson(|alpha|^2) mass is below
/// `tail_epsilon`, floored at 32. The top retained level counts as discarded
/// because truncated ladder operators are inexact there, so the criterion is
/// P(X >= n_max) < tail_epsilon.
int choose_cutoff(Complex alpha, double tail_epsilon);

/// |alpha><alpha| truncated at `cutoff` and renormalized to unit trace.
/// Throws TruncationError when more than kCoherentTailBound of the Poisson
/// weight lies above the cutoff.
FieldState coherent_state(Complex alpha, int cutoff);

struct StateDiagnostics {
    double hermiticity_defect;  // max |rho(n,m) - conj(rho(m,n))|
    double trace_defect;        // |Tr - 1| for normalized states, |Im Tr| otherwise
    double min_eigenvalue;      // of the Hermitian part

    bool ok(double tol = 1e-10) const {
        return hermiticity_defect <= tol && trace_defect <= tol && min_eigenvalue >= -tol;
    }
};

StateDiagnostics validate_state(const FieldState& state);

/// Tr[rho^2].
double purity(const FieldState& state);

// JSON layout: {"cutoff": int, "re": [row-major reals], "im": [row-major reals]}.
std::string state_to_json(const FieldState& state);
FieldState state_from_json(std::string_view text);

}  // namespace jcps
