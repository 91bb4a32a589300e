#include "jcps/wigner.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <utility>

#include "jcps/errors.hpp"
#include "jcps/expm.hpp"
#include "jcps/parallel.hpp"

namespace jcps {

namespace {

constexpr double kTwoOverPi = 2.0 / std::numbers::pi;
constexpr double kImaginaryResidue = 1e-10;
constexpr int kMaxWorkingDim = 3000;

std::vector<double> linear_axis(double lo, double hi, int points) {
    std::vector<double> axis(static_cast<std::size_t>(points));
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) axis[i] = lo + i * step;
    axis.back() = hi;
    return axis;
}

}  // namespace

void GridSpec::validate() const {
    if (!std::isfinite(re_min) || !std::isfinite(re_max) || !(re_max > re_min)) {
        throw ConfigError("grid: re range must be finite with re_max > re_min");
    }
    if (!std::isfinite(im_min) || !std::isfinite(im_max) || !(im_max > im_min)) {
        throw ConfigError("grid: im range must be finite with im_max > im_min");
    }
    if (re_points < 2 || im_points < 2) throw ConfigError("grid: need at least 2 points per axis");
}

std::vector<double> GridSpec::re_axis() const { return linear_axis(re_min, re_max, re_points); }
std::vector<double> GridSpec::im_axis() const { return linear_axis(im_min, im_max, im_points); }

double GridSpec::cell_area() const {
    return (re_max - re_min) / (re_points - 1) * (im_max - im_min) / (im_points - 1);
}

WignerSeries::WignerSeries(const ProtocolParams& params)
    : outcome_(ps_state(params)), tail_bound_(poisson_tail(std::norm(params.alpha), params.cutoff)) {}

double WignerSeries::operator()(Complex gamma) const {
    LaguerreTable workspace(outcome_.state.cutoff());
    return evaluate(gamma, workspace);
}

double WignerSeries::evaluate(Complex gamma, LaguerreTable& workspace) const {
    const Matrix& rho = outcome_.state.matrix();
    const int top = outcome_.state.cutoff();
    if (workspace.max_index() != top) throw ConfigError("wigner: workspace size mismatch");
    workspace.reset(4.0 * std::norm(gamma));
    const double theta = std::arg(gamma);

    Complex total = 0.0;
    for (int n = 0; n <= top; ++n) {
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        total += rho(n, n) * sign * workspace.scaled(n, 0);
    }
    for (int d = 1; d <= top; ++d) {
        Complex upper = 0.0;  // |n><n+d|, gamma^d branch
        Complex lower = 0.0;  // |m+d><m|, conj(gamma)^d branch
        for (int k = 0; k + d <= top; ++k) {
            const double f = (k % 2 == 0 ? 1.0 : -1.0) * workspace.scaled(k, d);
            upper += rho(k, k + d) * f;
            lower += rho(k + d, k) * f;
        }
        total += upper * std::polar(1.0, d * theta) + lower * std::polar(1.0, -d * theta);
    }
    if (std::abs(total.imag()) > kImaginaryResidue) {
        throw NumericalError("wigner: imaginary residue " + std::to_string(total.imag()) +
                             " exceeds 1e-10");
    }
    return kTwoOverPi * total.real();
}

double wigner_point(const ProtocolParams& params, Complex gamma) {
    return WignerSeries(params)(gamma);
}

DisplacedParity::DisplacedParity(Complex gamma, int cutoff) : cutoff_(cutoff) {
    if (cutoff < 0) throw ConfigError("cutoff: must be >= 0");
    const double reach = std::sqrt(static_cast<double>(cutoff)) + std::abs(gamma) + 8.0;
    const int needed = std::max(static_cast<int>(std::ceil(reach * reach)), cutoff + 17);
    accuracy_warning_ = needed > kMaxWorkingDim;
    working_dim_ = std::min(needed, kMaxWorkingDim);

    // D(-gamma) = exp(-gamma a^dag + conj(gamma) a)
    std::vector<Eigen::Triplet<Complex>> entries;
    entries.reserve(2 * static_cast<std::size_t>(working_dim_));
    for (int k = 0; k + 1 < working_dim_; ++k) {
        const double s = std::sqrt(k + 1.0);
        entries.emplace_back(k + 1, k, -gamma * s);
        entries.emplace_back(k, k + 1, std::conj(gamma) * s);
    }
    linalg::SparseMatrix generator(working_dim_, working_dim_);
    generator.setFromTriplets(entries.begin(), entries.end());

    const Matrix columns =
        linalg::expm_action(generator, Matrix::Identity(working_dim_, cutoff + 1));
    Matrix parity_columns = columns;
    for (int k = 1; k < working_dim_; k += 2) parity_columns.row(k) *= -1.0;
    parity_sandwich_ = columns.adjoint() * parity_columns;
}

double DisplacedParity::operator()(const FieldState& state) const {
    if (state.cutoff() != cutoff_) {
        throw ConfigError("displaced parity: state cutoff " + std::to_string(state.cutoff()) +
                          " does not match " + std::to_string(cutoff_));
    }
    const Complex tr = state.matrix().cwiseProduct(parity_sandwich_.transpose()).sum();
    return kTwoOverPi * tr.real();
}

double wigner_parity_oracle(const FieldState& state, Complex gamma) {
    return DisplacedParity(gamma, state.cutoff())(state);
}

WignerGrid wigner_grid(const ProtocolParams& params, const GridSpec& spec, int jobs) {
    spec.validate();
    const WignerSeries series(params);
    WignerGrid grid;
    grid.re_axis = spec.re_axis();
    grid.im_axis = spec.im_axis();
    grid.values.resize(spec.im_points, spec.re_points);
    grid.truncation_warning = series.truncation_warning();

    const int top = params.cutoff;
    parallel_for(static_cast<std::size_t>(spec.im_points), jobs, [&](std::size_t iy) {
        LaguerreTable workspace(top);
        for (int ix = 0; ix < spec.re_points; ++ix) {
            grid.values(static_cast<Eigen::Index>(iy), ix) =
                series.evaluate(Complex(grid.re_axis[ix], grid.im_axis[iy]), workspace);
        }
    });

    const double area = spec.cell_area();
    grid.min_value = grid.values.minCoeff();
    grid.total_integral = grid.values.sum() * area;
    grid.negative_volume = -grid.values.cwiseMin(0.0).sum() * area;
    return grid;
}

NegativityMetrics negativity_metrics(const WignerGrid& grid, double threshold) {
    const auto rows = grid.values.rows();
    const auto cols = grid.values.cols();
    const double area = grid.re_axis.size() > 1 && grid.im_axis.size() > 1
                            ? (grid.re_axis[1] - grid.re_axis[0]) * (grid.im_axis[1] - grid.im_axis[0])
                            : 0.0;
    NegativityMetrics out{grid.values.size() ? grid.values.minCoeff() : 0.0,
                          -grid.values.cwiseMin(0.0).sum() * area, 0};

    std::vector<char> seen(static_cast<std::size_t>(rows * cols), 0);
    auto index = [cols](Eigen::Index r, Eigen::Index c) { return static_cast<std::size_t>(r * cols + c); };
    std::queue<std::pair<Eigen::Index, Eigen::Index>> frontier;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (seen[index(r, c)] || !(grid.values(r, c) < threshold)) continue;
            ++out.negative_region_count;
            seen[index(r, c)] = 1;
            frontier.emplace(r, c);
            while (!frontier.empty()) {
                const auto [y, x] = frontier.front();
                frontier.pop();
                const std::pair<Eigen::Index, Eigen::Index> next[] = {
                    {y - 1, x}, {y + 1, x}, {y, x - 1}, {y, x + 1}};
                for (const auto& [ny, nx] : next) {
                    if (ny < 0 || nx < 0 || ny >= rows || nx >= cols) continue;
                    if (seen[index(ny, nx)] || !(grid.values(ny, nx) < threshold)) continue;
                    seen[index(ny, nx)] = 1;
                    frontier.emplace(ny, nx);
                }
            }
        }
    }
    return out;
}

}  // namespace jcps
