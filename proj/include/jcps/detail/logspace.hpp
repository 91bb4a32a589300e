#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace jcps::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(|alpha|^{2n} / n!) with the n = 0 term pinned to zero for alpha = 0.
inline double log_power_over_factorial(double abs_alpha_sq, int n) {
    if (n == 0) return 0.0;
    if (abs_alpha_sq == 0.0) return kNegInf;
    return n * std::log(abs_alpha_sq) - std::lgamma(n + 1.0);
}

/// cos^power(r sqrt(n)) split into log-magnitude and sign.
struct SignedLog {
    double log_abs;
    int sign;
    double value() const { return sign * std::exp(log_abs); }
};

inline SignedLog log_cos_power(double r, int n, int power) {
    const double c = std::cos(r * std::sqrt(static_cast<double>(n)));
    if (c == 0.0) return {kNegInf, 1};
    const int sign = (c < 0.0 && power % 2 != 0) ? -1 : 1;
    return {power * std::log(std::abs(c)), sign};
}

/// log(sum_k exp(x_k)); -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> xs) {
    double peak = kNegInf;
    for (double x : xs) peak = std::max(peak, x);
    if (peak == kNegInf) return kNegInf;
    double sum = 0.0;
    for (double x : xs) sum += std::exp(x - peak);
    return peak + std::log(sum);
}

}  // namespace jcps::detail
