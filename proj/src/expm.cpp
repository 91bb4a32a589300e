#include "jcps/expm.hpp"

#include <algorithm>
#include <cmath>

#include "jcps/errors.hpp"

namespace jcps::linalg {

namespace {

double one_norm(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

double one_norm(const SparseMatrix& m) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(m.cols());
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) col(it.col()) += std::abs(it.value());
    }
    return m.cols() == 0 ? 0.0 : col.maxCoeff();
}

constexpr int kMaxTerms = 60;

}  // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a, double tol) {
    const auto n = a.rows();
    const double norm = one_norm(a);
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const double scale = std::ldexp(1.0, -squarings);
    const Eigen::MatrixXcd scaled = a * scale;
    const double term_tol = tol * scale;

    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    bool converged = false;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
        if (one_norm(term) <= term_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NumericalError("expm: Taylor series did not converge in 60 terms");
    for (int s = 0; s < squarings; ++s) result = result * result;
    if (!result.allFinite()) throw NumericalError("expm: non-finite result");
    return result;
}

Eigen::MatrixXcd expm_action(const SparseMatrix& a, const Eigen::MatrixXcd& v) {
    const double norm = one_norm(a);
    const int steps = std::max(1, static_cast<int>(std::ceil(norm)));
    const SparseMatrix step = a / static_cast<double>(steps);

    Eigen::MatrixXcd x = v;
    for (int s = 0; s < steps; ++s) {
        Eigen::MatrixXcd term = x;
        Eigen::MatrixXcd sum = x;
        const double ref = x.cwiseAbs().maxCoeff();
        bool converged = false;
        for (int k = 1; k <= kMaxTerms; ++k) {
            term = (step * term) / static_cast<double>(k);
            sum += term;
            if (term.cwiseAbs().maxCoeff() <= 1e-17 * ref) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NumericalError("expm_action: Taylor step did not converge");
        x = std::move(sum);
    }
    if (!x.allFinite()) throw NumericalError("expm_action: non-finite result");
    return x;
}

}  // namespace jcps::linalg
