#include <doctest.h>

#include <random>

#include <json.hpp>

#include "jcps/errors.hpp"
#include "jcps/fock.hpp"
#include "support.hpp"

using namespace jcps;

TEST_CASE("vacuum and alpha = 0 coherent state agree") {
    const auto vac = FieldState::vacuum(8);
    const auto coh = coherent_state({0.0, 0.0}, 8);
    CHECK(testing::max_abs(vac.matrix() - coh.matrix()) == 0.0);
    CHECK(vac(0, 0).real() == 1.0);
}

TEST_CASE("coherent diagonal is Poisson") {
    const auto rho = coherent_state({std::sqrt(10.0), 0.0}, 60);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    for (int n = 0; n <= 60; ++n) {
        const double oracle = static_cast<double>(testing::poisson_pmf(10.0L, n));
        CHECK(std::abs(rho(n, n).real() - oracle) <= 1e-13 + 1e-12 * oracle);
    }
}

TEST_CASE("coherent off-diagonal elements carry the phase") {
    const auto real = coherent_state({1.0, 0.0}, 20);
    CHECK(std::abs(real(0, 1) - std::exp(-1.0)) < 1e-14);

    const Complex alpha{1.0, 1.0};
    const auto cplx = coherent_state(alpha, 32);
    // <0|rho|1> = e^{-|alpha|^2} conj(alpha)
    CHECK(std::abs(cplx(0, 1) - std::exp(-2.0) * std::conj(alpha)) < 1e-14);
    CHECK(std::abs(cplx(2, 0) - std::exp(-2.0) * alpha * alpha / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("coherent state with too small a cutoff is rejected") {
    try {
        (void)coherent_state({std::sqrt(10.0), 0.0}, 20);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.tail_mass() > 1e-9);
        CHECK(std::string(e.what()).find("tail mass") != std::string::npos);
    }
}

TEST_CASE("choose_cutoff") {
    CHECK(choose_cutoff({0.0, 0.0}, 1e-12) == 32);
    const int n10 = choose_cutoff({std::sqrt(10.0), 0.0}, 1e-12);
    CHECK(n10 >= 40);
    CHECK(n10 <= 70);
    CHECK(choose_cutoff({2.0, 0.0}, 1e-9) >= 32);

    // independent oracle: smallest n with P(X >= n) < eps from a long double CDF
    for (double mean : {10.0, 25.0, 60.0}) {
        long double below = 0.0L;
        int n = 0;
        while (1.0L - below >= 1e-12L) below += testing::poisson_pmf(mean, n++);
        // loop exits with below = P(X <= n - 1), i.e. P(X >= n) < eps
        CHECK(choose_cutoff({std::sqrt(mean), 0.0}, 1e-12) == std::max(32, n));
    }
}

TEST_CASE("default cutoff covers the tail bound") {
    for (double a : {0.0, 1.0, 3.16, 5.0, 8.0}) {
        const int c = default_cutoff({a, 0.0});
        CHECK(c >= 32);
        CHECK(poisson_tail(a * a, c) < kCoherentTailBound);
    }
}

TEST_CASE("validate_state") {
    const auto ok = validate_state(coherent_state({1.5, -0.5}, 40));
    CHECK(ok.ok());

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = 1.0;
    bad(0, 1) = 1.0;  // lower partner missing
    const auto diag = validate_state(FieldState(bad, true));
    CHECK(diag.hermiticity_defect == doctest::Approx(1.0));
    CHECK_FALSE(diag.ok());

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    const auto nd = validate_state(FieldState(neg, true));
    CHECK(nd.min_eigenvalue == doctest::Approx(-0.5));
    CHECK_FALSE(nd.ok());
}

TEST_CASE("random coherent states are normalized and pure") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 20; ++i) {
        const Complex alpha = testing::random_alpha(rng, 5.0);
        const auto rho = coherent_state(alpha, choose_cutoff(alpha, 1e-12));
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK(std::abs(purity(rho) - 1.0) < 1e-9);
        CHECK(validate_state(rho).ok());
    }
}

TEST_CASE("truncated ladder commutator") {
    const int cutoff = 12;
    const auto a = annihilation(cutoff);
    const auto ad = creation(cutoff);
    CHECK(a.kind == LadderKind::annihilation);
    CHECK(ad.kind == LadderKind::creation);
    const Matrix comm = a.matrix * ad.matrix - ad.matrix * a.matrix;
    for (int i = 0; i <= cutoff; ++i) {
        for (int j = 0; j <= cutoff; ++j) {
            const double expected = i != j ? 0.0 : (i < cutoff ? 1.0 : -static_cast<double>(cutoff));
            CHECK(std::abs(comm(i, j) - expected) < 1e-12);
        }
    }
    const Matrix n = number_operator(cutoff).matrix;
    CHECK(testing::max_abs(n - ad.matrix * a.matrix) < 1e-12);
}

TEST_CASE("state JSON round trip is exact") {
    std::mt19937_64 rng(102);
    for (int i = 0; i < 5; ++i) {
        const auto rho = testing::random_state(rng, 6 + i);
        const auto back = state_from_json(state_to_json(rho));
        CHECK(back.cutoff() == rho.cutoff());
        CHECK(back.normalized());
        CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
    }
    const auto parsed = nlohmann::json::parse(state_to_json(FieldState::fock(1, 2)));
    CHECK(parsed["cutoff"] == 2);
    CHECK(parsed["re"].size() == 9);
    CHECK_THROWS_AS(state_from_json("{\"cutoff\": 1, \"re\": [1], \"im\": [0]}"), Error);
}

TEST_CASE("protocol parameter validation names the field") {
    auto expect_field = [](const ProtocolParams& p, const std::string& field) {
        try {
            p.validate();
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    expect_field(ProtocolParams::make({1.0, 0.0}, 0.5, 0), "atoms");
    expect_field(ProtocolParams::make({1.0, 0.0}, 0.5, kMaxAtoms + 1), "atoms");
    expect_field(ProtocolParams::make({1.0, 0.0}, -0.1, 1), "r");
    CHECK_NOTHROW(ProtocolParams::make({1.0, 0.0}, 0.5, kMaxAtoms).validate());
    const auto p = ProtocolParams::make({std::sqrt(10.0), 0.0}, 0.5, 2);
    CHECK(p.cutoff == default_cutoff(p.alpha));
    CHECK_FALSE(p.cutoff_overridden);
    CHECK(ProtocolParams::make({1.0, 0.0}, 0.5, 2, 40).cutoff_overridden);
}

TEST_CASE("renormalizing a zero matrix fails") {
    CHECK_THROWS_AS(FieldState(Matrix::Zero(3, 3), false).renormalized(), NumericalError);
}
