#include "jcps/laguerre.hpp"

#include <cmath>

#include "jcps/errors.hpp"

namespace jcps {

double laguerre(int degree, int order, double x) {
    if (degree < 0 || order < 0) throw ConfigError("laguerre: degree and order must be >= 0");
    double prev = 1.0;
    if (degree == 0) return prev;
    double curr = 1.0 + order - x;
    for (int n = 1; n < degree; ++n) {
        const double next = ((2.0 * n + 1.0 + order - x) * curr - (n + order) * prev) / (n + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

LaguerreTable::LaguerreTable(int max_index)
    : max_index_(max_index), stride_(static_cast<std::size_t>(max_index) + 1) {
    if (max_index < 0) throw ConfigError("laguerre table: max_index must be >= 0");
    half_log_factorial_.resize(stride_);
    for (std::size_t k = 0; k < stride_; ++k) {
        half_log_factorial_[k] = 0.5 * std::lgamma(static_cast<double>(k) + 1.0);
    }
    data_.assign(stride_ * stride_, 0.0);
    back_coeff_.assign(stride_ * stride_, 0.0);
    inv_norm_.assign(stride_ * stride_, 0.0);
    for (std::size_t k = 0; k < stride_; ++k) {
        for (std::size_t n = 0; n + k < stride_; ++n) {
            const double nn = static_cast<double>(n);
            const double kk = static_cast<double>(k);
            back_coeff_[k * stride_ + n] = std::sqrt(nn * (nn + kk));
            inv_norm_[k * stride_ + n] = 1.0 / std::sqrt((nn + 1.0) * (nn + 1.0 + kk));
        }
    }
}

LaguerreTable::LaguerreTable(int max_index, double x) : LaguerreTable(max_index) { reset(x); }

void LaguerreTable::reset(double x) {
    if (!(x >= 0.0)) throw ConfigError("laguerre table: x must be >= 0");
    x_ = x;
    const double half_log_x = x > 0.0 ? 0.5 * std::log(x) : 0.0;
    for (int k = 0; k <= max_index_; ++k) {
        const std::size_t offset = static_cast<std::size_t>(k) * stride_;
        double* row = data_.data() + offset;
        const double* back = back_coeff_.data() + offset;
        const double* inv_norm = inv_norm_.data() + offset;
        double f0;
        if (x == 0.0) {
            f0 = k == 0 ? 1.0 : 0.0;
        } else {
            f0 = std::exp(k * half_log_x - 0.5 * x - half_log_factorial_[k]);
        }
        row[0] = f0;
        const int top = max_index_ - k;
        if (top == 0) continue;
        row[1] = (1.0 + k - x) * f0 * inv_norm[0];
        for (int n = 1; n < top; ++n) {
            row[n + 1] = ((2.0 * n + 1.0 + k - x) * row[n] - back[n] * row[n - 1]) * inv_norm[n];
        }
    }
}

double LaguerreTable::value(int degree, int order) const {
    if (x_ == 0.0) return laguerre(degree, order, 0.0);
    // undo sqrt(n!/(n+k)!) x^{k/2} e^{-x/2}
    const double log_scale = half_log_factorial_[degree] - std::lgamma(degree + order + 1.0) * 0.5 +
                             (order > 0 ? 0.5 * order * std::log(x_) : 0.0) - 0.5 * x_;
    return scaled(degree, order) * std::exp(-log_scale);
}

}  // namespace jcps
