#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "jcps/fock.hpp"

namespace testing {

// Poisson pmf by plain product in long double, used as an independent oracle.
inline long double poisson_pmf(long double mean, int n) {
    long double p = std::exp(-mean);
    for (int k = 1; k <= n; ++k) p *= mean / k;
    return p;
}

inline double max_abs(const jcps::Matrix& a) { return a.cwiseAbs().maxCoeff(); }

inline jcps::Complex random_alpha(std::mt19937_64& rng, double max_abs_value) {
    std::uniform_real_distribution<double> mag(0.0, max_abs_value);
    std::uniform_real_distribution<double> arg(-3.14159, 3.14159);
    return std::polar(mag(rng), arg(rng));
}

// random normalized density matrix of rank <= 3 on levels 0..cutoff
inline jcps::FieldState random_state(std::mt19937_64& rng, int cutoff) {
    std::normal_distribution<double> g;
    jcps::Matrix v(cutoff + 1, 3);
    for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < 3; ++j) v(i, j) = {g(rng), g(rng)};
    jcps::Matrix rho = v * v.adjoint();
    rho /= rho.trace();
    return jcps::FieldState(rho, true);
}

}  // namespace testing
