#pragma once

#include <vector>

namespace jcps {

/// Generalized Laguerre polynomial L_n^k(x) by the upward three-term
/// recurrence (n+1) L_{n+1} = (2n+1+k-x) L_n - (n+k) L_{n-1}.
double laguerre(int degree, int order, double x);

/// Normalized Laguerre functions at one point x >= 0:
///
///   f_n^k(x) = sqrt(n! / (n+k)!) x^{k/2} e^{-x/2} L_n^k(x),
///
/// for all degree + order <= max_index. These are the magnitudes of Fock
/// matrix elements of a displacement with x = 4|gamma|^2 absorbed, so every
/// entry is bounded by one and no factorial or power is ever formed
/// explicitly. The starting value f_0^k is built in log space and the
/// recurrence then runs upward in degree per order.
class LaguerreTable {
public:
    explicit LaguerreTable(int max_index);
    LaguerreTable(int max_index, double x);

    /// Re-evaluates every entry at a new point, reusing storage.
    void reset(double x);

    double x() const noexcept { return x_; }
    int max_index() const noexcept { return max_index_; }

    double scaled(int degree, int order) const {
        return data_[static_cast<std::size_t>(order) * stride_ + degree];
    }

    /// Unscaled L_n^k(x) recovered from the table; may overflow for large x.
    double value(int degree, int order) const;

private:
    int max_index_;
    std::size_t stride_;
    double x_ = 0.0;
    std::vector<double> half_log_factorial_;  // 0.5 * lgamma(k + 1)
    std::vector<double> back_coeff_;          // sqrt(n (n + k))
    std::vector<double> inv_norm_;            // 1 / sqrt((n + 1)(n + 1 + k))
    std::vector<double> data_;
};

}  // namespace jcps
