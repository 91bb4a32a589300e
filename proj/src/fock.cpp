#include "jcps/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "jcps/errors.hpp"

namespace jcps {

FieldState::FieldState(Matrix matrix, bool normalized)
    : matrix_(std::move(matrix)), normalized_(normalized) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw ConfigError("field state matrix must be square and non-empty");
    }
}

FieldState FieldState::fock(int n, int cutoff) {
    if (n < 0 || n > cutoff) {
        throw ConfigError("Fock level " + std::to_string(n) + " outside [0, cutoff]");
    }
    Matrix m = Matrix::Zero(cutoff + 1, cutoff + 1);
    m(n, n) = 1.0;
    return FieldState(std::move(m), true);
}

FieldState FieldState::renormalized() const {
    const double tr = matrix_.trace().real();
    if (!(tr > 1e-300)) {
        throw NumericalError("degenerate trace " + std::to_string(tr) + " cannot be renormalized");
    }
    return FieldState(matrix_ / tr, true);
}

LadderMatrix annihilation(int cutoff) {
    Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {LadderKind::annihilation, std::move(a)};
}

LadderMatrix creation(int cutoff) {
    return {LadderKind::creation, annihilation(cutoff).matrix.adjoint()};
}

LadderMatrix number_operator(int cutoff) {
    Matrix n = Matrix::Zero(cutoff + 1, cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) n(k, k) = static_cast<double>(k);
    return {LadderKind::number, std::move(n)};
}

int default_cutoff(Complex alpha) {
    const double a = std::abs(alpha);
    return std::max(32, static_cast<int>(std::ceil(a * a + 8.0 * a + 16.0)));
}

ProtocolParams ProtocolParams::make(Complex alpha, double r, int atoms, std::optional<int> cutoff,
                                    double phase) {
    ProtocolParams p;
    p.alpha = alpha;
    p.r = r;
    p.atoms = atoms;
    p.phase = phase;
    p.cutoff_overridden = cutoff.has_value();
    p.cutoff = cutoff.value_or(default_cutoff(alpha));
    return p;
}

void ProtocolParams::validate() const {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw ConfigError("alpha: must be finite");
    }
    if (!std::isfinite(r) || r < 0.0) throw ConfigError("r: must be finite and >= 0");
    if (atoms < 1 || atoms > kMaxAtoms) {
        throw ConfigError("atoms: must lie in [1, " + std::to_string(kMaxAtoms) + "]");
    }
    if (cutoff < 1) throw ConfigError("cutoff: must be >= 1");
    if (!cutoff_overridden && cutoff < default_cutoff(alpha)) {
        throw ConfigError("cutoff: " + std::to_string(cutoff) + " below default " +
                          std::to_string(default_cutoff(alpha)) + " without explicit override");
    }
    if (!std::isfinite(phase)) throw ConfigError("phase: must be finite");
}

double poisson_tail(double mean, int n_max) {
    if (n_max < 0) return 1.0;
    if (mean <= 0.0) return 0.0;
    const double log_mean = std::log(mean);
    double sum = 0.0;
    for (int k = n_max + 1;; ++k) {
        const double term = std::exp(k * log_mean - std::lgamma(k + 1.0) - mean);
        sum += term;
        if (k > mean && term <= 1e-17 * sum) break;
        if (k > n_max + 100000) break;
    }
    return std::min(sum, 1.0);
}

int choose_cutoff(Complex alpha, double tail_epsilon) {
    const double mean = std::norm(alpha);
    int n_max = 0;
    while (poisson_tail(mean, n_max - 1) >= tail_epsilon) ++n_max;
    return std::max(32, n_max);
}

FieldState coherent_state(Complex alpha, int cutoff) {
    if (cutoff < 0) throw ConfigError("cutoff: must be >= 0");
    const double mean = std::norm(alpha);
    const double tail = poisson_tail(mean, cutoff);
    if (tail > kCoherentTailBound) {
        throw TruncationError("cutoff " + std::to_string(cutoff) + " discards Poisson tail mass " +
                                  std::to_string(tail) + " > 1e-9 for |alpha|^2 = " +
                                  std::to_string(mean),
                              tail);
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(cutoff + 1);
    const double log_abs = std::log(std::abs(alpha));
    const double theta = std::arg(alpha);
    for (int n = 0; n <= cutoff; ++n) {
        if (n == 0) {
            psi(n) = std::exp(-0.5 * mean);
            continue;
        }
        if (mean == 0.0) break;
        const double log_mag = n * log_abs - 0.5 * std::lgamma(n + 1.0) - 0.5 * mean;
        psi(n) = std::polar(std::exp(log_mag), n * theta);
    }
    psi /= psi.norm();
    return FieldState(psi * psi.adjoint(), true);
}

StateDiagnostics validate_state(const FieldState& state) {
    const Matrix& m = state.matrix();
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    const Complex tr = m.trace();
    const double trace_defect = state.normalized() ? std::abs(tr - 1.0) : std::abs(tr.imag());
    const Matrix hermitian_part = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
    return {herm, trace_defect, solver.eigenvalues().minCoeff()};
}

double purity(const FieldState& state) {
    return (state.matrix() * state.matrix()).trace().real();
}

std::string state_to_json(const FieldState& state) {
    const Matrix& m = state.matrix();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int n = 0; n < m.rows(); ++n) {
        for (int k = 0; k < m.cols(); ++k) {
            re.push_back(m(n, k).real());
            im.push_back(m(n, k).imag());
        }
    }
    nlohmann::json doc{{"cutoff", state.cutoff()}, {"re", std::move(re)}, {"im", std::move(im)}};
    return doc.dump();
}

FieldState state_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("state json: ") + e.what());
    }
    if (!doc.contains("cutoff") || !doc.contains("re") || !doc.contains("im")) {
        throw ConfigError("state json: requires cutoff, re and im");
    }
    const int cutoff = doc.at("cutoff").get<int>();
    if (cutoff < 0) throw ConfigError("state json: cutoff must be >= 0");
    const auto dim = static_cast<std::size_t>(cutoff + 1);
    const auto& re = doc.at("re");
    const auto& im = doc.at("im");
    if (re.size() != dim * dim || im.size() != dim * dim) {
        throw ConfigError("state json: re/im must hold (cutoff+1)^2 entries");
    }
    Matrix m(dim, dim);
    for (std::size_t n = 0; n < dim; ++n) {
        for (std::size_t k = 0; k < dim; ++k) {
            m(n, k) = Complex(re[n * dim + k].get<double>(), im[n * dim + k].get<double>());
        }
    }
    const bool normalized = std::abs(m.trace() - 1.0) < 1e-10;
    return FieldState(std::move(m), normalized);
}

}  // namespace jcps
