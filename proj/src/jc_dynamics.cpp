#include "jcps/jc_dynamics.hpp"

#include <cmath>

#include "jcps/errors.hpp"
#include "jcps/expm.hpp"

namespace jcps {

namespace {

void check_coupling(double r) {
    if (!std::isfinite(r) || r < 0.0) throw ConfigError("r: must be finite and >= 0");
}

std::vector<double> sine_coupling_diag(double r, int cutoff) {
    std::vector<double> s(static_cast<std::size_t>(cutoff) + 1);
    for (int n = 0; n <= cutoff; ++n) s[n] = std::sin(r * std::sqrt(static_cast<double>(n)));
    return s;
}

}  // namespace

std::vector<double> cosine_coupling_diag(double r, int cutoff) {
    check_coupling(r);
    std::vector<double> c(static_cast<std::size_t>(cutoff) + 1);
    for (int n = 0; n <= cutoff; ++n) c[n] = std::cos(r * std::sqrt(static_cast<double>(n)));
    return c;
}

FieldState ground_branch(const FieldState& state, double r) {
    const auto c = cosine_coupling_diag(r, state.cutoff());
    Matrix out = state.matrix();
    for (int n = 0; n < state.dim(); ++n) {
        for (int m = 0; m < state.dim(); ++m) out(n, m) *= c[n] * c[m];
    }
    return FieldState(std::move(out), false);
}

FieldState excited_branch(const FieldState& state, double r) {
    check_coupling(r);
    const auto s = sine_coupling_diag(r, state.cutoff());
    Matrix out = Matrix::Zero(state.dim(), state.dim());
    for (int n = 1; n < state.dim(); ++n) {
        for (int m = 1; m < state.dim(); ++m) out(n - 1, m - 1) = s[n] * s[m] * state(n, m);
    }
    return FieldState(std::move(out), false);
}

JointBlocks closed_form_blocks(const FieldState& state, double r) {
    const auto c = cosine_coupling_diag(r, state.cutoff());
    const auto s = sine_coupling_diag(r, state.cutoff());
    const int dim = state.dim();
    const Complex minus_i(0.0, -1.0);
    Matrix rho12 = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) rho12(n - 1, m) = minus_i * s[n] * state(n, m) * c[m];
    }
    Matrix rho21 = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        for (int m = 1; m < dim; ++m) rho21(n, m - 1) = -minus_i * c[n] * state(n, m) * s[m];
    }
    return {excited_branch(state, r).matrix(), std::move(rho12), std::move(rho21),
            ground_branch(state, r).matrix()};
}

JointBlocks joint_evolution_oracle(const FieldState& state, double r) {
    check_coupling(r);
    const int dim = state.dim();
    const Matrix a = annihilation(state.cutoff()).matrix;

    // generator -i r (sigma+ (x) a + sigma- (x) a^dag), sigma+ = |e><g|
    Matrix generator = Matrix::Zero(2 * dim, 2 * dim);
    generator.block(0, dim, dim, dim) = Complex(0.0, -r) * a;
    generator.block(dim, 0, dim, dim) = Complex(0.0, -r) * a.adjoint();
    const Matrix u = linalg::expm(generator, 1e-12);

    Matrix joint = Matrix::Zero(2 * dim, 2 * dim);
    joint.block(dim, dim, dim, dim) = state.matrix();
    const Matrix evolved = u * joint * u.adjoint();
    return {evolved.block(0, 0, dim, dim), evolved.block(0, dim, dim, dim),
            evolved.block(dim, 0, dim, dim), evolved.block(dim, dim, dim, dim)};
}

}  // namespace jcps
