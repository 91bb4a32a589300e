#pragma once

#include <vector>

#include <Eigen/Dense>

#include "jcps/fock.hpp"
#include "jcps/laguerre.hpp"
#include "jcps/postselect.hpp"

namespace jcps {

/// Rectangular sampling of gamma = x + i y, both axes ascending.
struct GridSpec {
    double re_min = -6.5;
    double re_max = 6.5;
    int re_points = 261;
    double im_min = -6.5;
    double im_max = 6.5;
    int im_points = 261;

    bool operator==(const GridSpec&) const = default;

    void validate() const;
    std::vector<double> re_axis() const;
    std::vector<double> im_axis() const;
    double cell_area() const;
};

struct WignerGrid {
    std::vector<double> re_axis;
    std::vector<double> im_axis;
    Eigen::MatrixXd values;  // values(iy, ix) = W(re_axis[ix] + i im_axis[iy])
    double min_value = 0.0;
    double negative_volume = 0.0;  // cell-weighted integral of |W| where W < 0
    double total_integral = 0.0;   // cell-weighted sum of W
    bool truncation_warning = false;
};

struct NegativityMetrics {
    double min_value;
    double negative_volume;
    int negative_region_count;  // 4-connected components of cells below the threshold
};

inline constexpr double kWignerTailWarning = 1e-10;
inline constexpr double kNegativeRegionThreshold = -1e-4;

/// Laguerre-series Wigner function of the N-atom post-selected state.
///
/// Both index branches are summed explicitly: for m >= n the |n><m| term
/// carries (2 gamma)^{m-n} L_n^{m-n}(4|gamma|^2) with sign (-1)^n, for n > m it
/// carries (2 conj(gamma))^{n-m} L_m^{n-m}(4|gamma|^2) with sign (-1)^m. Powers
/// of |gamma|, the factorial ratio and e^{-2|gamma|^2} live inside the
/// normalized Laguerre table; the phase e^{+-i d arg(gamma)} stays complex.
/// The imaginary part of the total must vanish to 1e-10.
class WignerSeries {
public:
    explicit WignerSeries(const ProtocolParams& params);

    double operator()(Complex gamma) const;
    double evaluate(Complex gamma, LaguerreTable& workspace) const;

    const PSOutcome& outcome() const noexcept { return outcome_; }
    /// Poisson mass of the input coherent state above the cutoff.
    double tail_bound() const noexcept { return tail_bound_; }
    bool truncation_warning() const noexcept { return tail_bound_ > kWignerTailWarning; }

private:
    PSOutcome outcome_;
    double tail_bound_;
};

double wigner_point(const ProtocolParams& params, Complex gamma);

/// W(gamma) = (2/pi) Tr[rho D(gamma) P D(gamma)^dag] with P the photon-number
/// parity, evaluated by exponentiating the truncated generator
/// -gamma a^dag + conj(gamma) a on an enlarged working space.
///
/// The displaced columns depend only on gamma and the state cutoff, so one
/// instance can score many states at the same point.
class DisplacedParity {
public:
    DisplacedParity(Complex gamma, int cutoff);

    double operator()(const FieldState& state) const;

    int working_dim() const noexcept { return working_dim_; }
    /// True when the working space had to be capped below the size needed to
    /// hold the displaced support of every retained Fock level.
    bool accuracy_warning() const noexcept { return accuracy_warning_; }

private:
    int cutoff_;
    int working_dim_;
    bool accuracy_warning_;
    Matrix parity_sandwich_;  // rows/cols 0..cutoff of D P D^dag
};

double wigner_parity_oracle(const FieldState& state, Complex gamma);

/// Evaluates the series on every grid point; rows are split across `jobs`
/// workers and assembled in index order.
WignerGrid wigner_grid(const ProtocolParams& params, const GridSpec& spec, int jobs = 1);

NegativityMetrics negativity_metrics(const WignerGrid& grid,
                                     double threshold = kNegativeRegionThreshold);

}  // namespace jcps
