#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jcps/errors.hpp"
#include "jcps/laguerre.hpp"
#include "jcps/wigner.hpp"
#include "support.hpp"

using namespace jcps;

namespace {

const Complex kAlpha{std::sqrt(10.0), 0.0};
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

GridSpec coarse() {
    GridSpec g;
    g.re_points = 131;
    g.im_points = 131;
    return g;
}

// Series exactly as printed in the compact closed form, with |gamma|^{m-n}
// and a single cos(arg gamma - arg alpha). Kept only to show it disagrees.
double compact_form_as_printed(const ProtocolParams& p, Complex gamma) {
    const double x = 4.0 * std::norm(gamma), a = std::abs(p.alpha);
    auto cn = [&](int n) { return std::pow(std::cos(p.r * std::sqrt(double(n))), p.atoms); };
    double diag = 0.0, off = 0.0, norm = 0.0;
    for (int n = 0; n <= p.cutoff; ++n) {
        const double cnn = std::pow(a, 2 * n) / std::tgamma(n + 1.0) * cn(n) * cn(n);
        norm += cnn;
        diag += cnn * (n % 2 ? -1.0 : 1.0) * laguerre(n, 0, x);
        for (int m = 0; m < n; ++m) {
            const double big =
                2.0 * std::pow(std::abs(gamma), m - n) * std::pow(a, m + n) * cn(n) * cn(m) *
                std::cos(std::arg(gamma) - std::arg(p.alpha)) / std::sqrt(std::tgamma(n + 1.0) * std::tgamma(m + 1.0));
            off += big * (m % 2 ? -1.0 : 1.0) * std::sqrt(std::tgamma(m + 1.0) / std::tgamma(n + 1.0)) *
                   std::pow(2.0, n - m) * laguerre(m, n - m, x);
        }
    }
    return kTwoOverPi * std::exp(-2.0 * std::norm(gamma)) * (diag + off) / norm;
}

}  // namespace

TEST_CASE("coherent input gives the Gaussian") {
    const auto p = ProtocolParams::make(kAlpha, 0.0, 1);
    CHECK(wigner_point(p, kAlpha) == doctest::Approx(kTwoOverPi).epsilon(1e-12));
    for (Complex g : {Complex{0.0, 0.0}, Complex{2.0, 1.0}, Complex{4.0, -0.5}}) {
        const double gauss = kTwoOverPi * std::exp(-2.0 * std::norm(g - kAlpha));
        CHECK(std::abs(wigner_point(p, g) - gauss) < 1e-12);
    }
}

TEST_CASE("displaced parity oracle on Fock states") {
    CHECK(wigner_parity_oracle(FieldState::vacuum(10), {0.0, 0.0}) == doctest::Approx(kTwoOverPi));
    CHECK(wigner_parity_oracle(FieldState::fock(1, 10), {0.0, 0.0}) == doctest::Approx(-kTwoOverPi));
    // |1>: W = (2/pi)(4|g|^2 - 1) e^{-2|g|^2}
    const Complex g{0.6, -0.3};
    const double expected = kTwoOverPi * (4.0 * std::norm(g) - 1.0) * std::exp(-2.0 * std::norm(g));
    CHECK(std::abs(wigner_parity_oracle(FieldState::fock(1, 10), g) - expected) < 1e-12);
    const DisplacedParity dp(g, 10);
    CHECK(dp.working_dim() > 11);
    CHECK_FALSE(dp.accuracy_warning());
}

TEST_CASE("Laguerre series agrees with the displaced parity oracle") {
    struct Case {
        Complex alpha;
        double r;
        int atoms;
    };
    for (const Case c : {Case{kAlpha, 0.51, 1}, Case{kAlpha, 1.0, 5}, Case{{1.5, 2.0}, 0.8, 2},
                         Case{{-1.0, 0.5}, 2.0, 3}}) {
        const auto p = ProtocolParams::make(c.alpha, c.r, c.atoms);
        const WignerSeries series(p);
        for (Complex g : {Complex{2.0, 0.0}, Complex{0.0, 0.0}, Complex{-1.0, 1.5}, Complex{3.0, -2.0}}) {
            CHECK(std::abs(series(g) - wigner_parity_oracle(series.outcome().state, g)) < 1e-8);
        }
    }
}

TEST_CASE("compact closed form as printed disagrees with the oracle") {
    const auto p = ProtocolParams::make(kAlpha, 1.0, 1);
    const WignerSeries series(p);
    const Complex g{2.0, 1.0};
    const double oracle = wigner_parity_oracle(series.outcome().state, g);
    CHECK(std::abs(series(g) - oracle) < 1e-8);
    CHECK(std::abs(compact_form_as_printed(p, g) - oracle) > 1e-3);
}

TEST_CASE("reflection symmetry about the displacement axis") {
    const WignerSeries series(ProtocolParams::make(kAlpha, 1.5, 2));
    for (double x : {-1.0, 0.5, 2.0, 3.3}) {
        for (double y : {0.3, 1.0, 2.5}) CHECK(std::abs(series({x, y}) - series({x, -y})) < 1e-10);
    }
}

TEST_CASE("grid values are bounded and integrate to one") {
    GridSpec fine;
    fine.re_min = fine.im_min = -7.0;
    fine.re_max = fine.im_max = 7.0;
    fine.re_points = fine.im_points = 281;
    const auto grid = wigner_grid(ProtocolParams::make(kAlpha, 1.0, 2), fine);
    CHECK(std::abs(grid.total_integral - 1.0) < 1e-6);
    CHECK(grid.values.cwiseAbs().maxCoeff() <= kTwoOverPi + 1e-9);
    CHECK_FALSE(grid.truncation_warning);
    CHECK(grid.values.rows() == 281);
    CHECK(grid.values.cols() == 281);
}

TEST_CASE("negativity metrics") {
    const auto gauss = wigner_grid(ProtocolParams::make(kAlpha, 0.0, 1), coarse());
    const auto g = negativity_metrics(gauss);
    CHECK(g.min_value > -1e-10);
    CHECK(g.negative_region_count == 0);
    CHECK(g.negative_volume < 1e-9);

    CHECK(negativity_metrics(wigner_grid(ProtocolParams::make(kAlpha, 0.2, 1), coarse())).min_value > -1e-3);

    // r = 0.4: the first negativity sits on the far side of the displacement
    const auto onset = wigner_grid(ProtocolParams::make(kAlpha, 0.4, 1), coarse());
    const auto om = negativity_metrics(onset);
    CHECK(om.min_value < -1e-3);
    CHECK(om.negative_region_count >= 1);
    Eigen::Index iy, ix;
    onset.values.minCoeff(&iy, &ix);
    CHECK(onset.re_axis[ix] > std::sqrt(10.0));

    // r = 0.51: the negativity moves to the centre of the distribution
    const auto centre = wigner_grid(ProtocolParams::make(kAlpha, 0.51, 1), coarse());
    centre.values.minCoeff(&iy, &ix);
    CHECK(std::abs(centre.im_axis[iy]) < 0.11);
    CHECK(centre.re_axis[ix] > 2.0);
    CHECK(centre.re_axis[ix] < 4.0);

    const double m10 = negativity_metrics(wigner_grid(ProtocolParams::make(kAlpha, 1.0, 2), coarse())).min_value;
    const double m15 = negativity_metrics(wigner_grid(ProtocolParams::make(kAlpha, 1.5, 2), coarse())).min_value;
    CHECK(m15 < m10);
}

TEST_CASE("region counting uses 4-connectivity") {
    WignerGrid grid;
    grid.re_axis = {0, 1, 2, 3};
    grid.im_axis = {0, 1, 2, 3};
    grid.values = Eigen::MatrixXd::Zero(4, 4);
    grid.values(0, 0) = -1.0;
    grid.values(1, 1) = -1.0;  // diagonal neighbour: separate region
    grid.values(3, 2) = -1.0;
    grid.values(3, 3) = -1.0;  // joined to (3, 2)
    grid.values(2, 0) = -1e-6; // above the threshold
    const auto m = negativity_metrics(grid);
    CHECK(m.negative_region_count == 3);
    CHECK(m.min_value == -1.0);
}

TEST_CASE("grid is identical for any worker count") {
    GridSpec g;
    g.re_points = g.im_points = 41;
    const auto p = ProtocolParams::make(kAlpha, 1.5, 5);
    const auto a = wigner_grid(p, g, 1);
    const auto b = wigner_grid(p, g, 3);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grid spec validation") {
    GridSpec g;
    g.re_points = 1;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    GridSpec h;
    h.im_max = h.im_min;
    CHECK_THROWS_AS(h.validate(), ConfigError);
    const GridSpec d;
    CHECK(d.re_axis().front() == -6.5);
    CHECK(d.re_axis().back() == doctest::Approx(6.5));
    CHECK(d.cell_area() == doctest::Approx(0.05 * 0.05));
}
