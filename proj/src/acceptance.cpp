#include "jcps/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <span>

#include <json.hpp>

#include "jcps/errors.hpp"
#include "jcps/jc_dynamics.hpp"
#include "jcps/metrics.hpp"
#include "jcps/parallel.hpp"
#include "jcps/postselect.hpp"
#include "jcps/wigner.hpp"

namespace jcps {

namespace {

const Complex kAlpha{std::sqrt(10.0), 0.0};
constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

class Recorder {
public:
    explicit Recorder(AcceptanceReport& report) : report_(report) {}

    void record(int criterion, std::string name, std::string target, double measured,
                double tolerance, bool ok, std::string message = {}) {
        report_.checks.push_back({criterion, std::move(name), std::move(target), measured, tolerance,
                                  ok ? Verdict::pass : Verdict::fail, std::move(message)});
    }

    void under_resolved(int criterion, std::string name, std::string target, std::string message) {
        report_.checks.push_back({criterion, std::move(name), std::move(target), std::nan(""), 0.0,
                                  Verdict::under_resolved, std::move(message)});
    }

    /// Runs `body`; an escaping exception becomes a failed check named `name`.
    void guarded(int criterion, const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            record(criterion, name, "no error", std::nan(""), 0.0, false, e.what());
        }
    }

    void runtime(int criterion, const std::string& what, double seconds, double limit) {
        record(criterion, what + " runtime [s]", "< " + format_number(limit), seconds, limit,
               seconds < limit);
    }

private:
    AcceptanceReport& report_;
};

std::string pm(double target, double tol) {
    return format_number(target) + " +- " + format_number(tol);
}

struct RandomCase {
    Complex alpha;
    double r;
    int atoms;
};

std::vector<RandomCase> random_cases(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.2, 3.5);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::uniform_real_distribution<double> coupling(0.0, 3.0);
    std::uniform_int_distribution<int> atoms(1, 5);
    std::vector<RandomCase> cases;
    for (std::size_t i = 0; i < count; ++i) {
        const double rad = radius(rng);
        const double ph = phase(rng);
        const double r = coupling(rng);
        cases.push_back({std::polar(rad, ph), r, atoms(rng)});
    }
    return cases;
}

std::optional<int> cutoff_for(const SweepConfig& config) { return config.cutoff; }

ProtocolParams params_at(const SweepConfig& config, Complex alpha, double r, int atoms,
                         double phase = 0.0) {
    return ProtocolParams::make(alpha, r, atoms, cutoff_for(config), phase);
}

// ---------------------------------------------------------------------------

void success_probabilities(const SweepConfig& config, Recorder& rec) {
    const auto start = Clock::now();
    const std::pair<int, double> targets[] = {{1, 0.0638}, {2, 0.0114}, {5, 0.0006}};
    for (const auto& [atoms, target] : targets) {
        const std::string name = "P_" + std::to_string(atoms) + " at r = 0.51";
        rec.guarded(1, name, [&] {
            const double p = ps_state(params_at(config, kAlpha, 0.51, atoms)).success_probability;
            rec.record(1, name, pm(target, 5e-5), p, 5e-5, std::abs(p - target) <= 5e-5);
        });
    }
    rec.runtime(1, "success probabilities", seconds_since(start), 1.0);
}

void probability_curve_shape(const SweepConfig& config, Recorder& rec) {
    const auto start = Clock::now();
    rec.guarded(2, "P_1(r) curve", [&] {
        const int n_max = config.cutoff.value_or(default_cutoff(kAlpha));
        const double at_zero = success_probability_curve(kAlpha, 1, std::vector{0.0}, n_max)[0].probability;
        rec.record(2, "P_1(0) = 1", pm(1.0, 1e-12), at_zero, 1e-12, std::abs(at_zero - 1.0) <= 1e-12);

        if (config.r_step > 0.02) {
            rec.under_resolved(2, "P_1 < 0.1 only near r = 0.5", "dip confined to [0.4, 0.6]",
                               "r_step " + format_number(config.r_step) + " > 0.02 cannot resolve the dip");
            return;
        }
        const auto rs = config.r_grid();
        const auto curve = success_probability_curve(kAlpha, 1, rs, n_max);
        double minimum = 1.0;
        double low_outside = 0.0;  // how far the dip region leaks outside [0.4, 0.6]
        int local_minima = 0;
        for (std::size_t i = 0; i < curve.size(); ++i) {
            minimum = std::min(minimum, curve[i].probability);
            if (curve[i].probability < 0.1 && (curve[i].r < 0.4 || curve[i].r > 0.6)) {
                low_outside = std::max(low_outside, std::abs(curve[i].r - 0.5));
            }
            if (i > 0 && i + 1 < curve.size() && curve[i].probability < curve[i - 1].probability &&
                curve[i].probability <= curve[i + 1].probability) {
                ++local_minima;
            }
        }
        const bool covers = config.r_min <= 0.4 && config.r_max >= 0.6;
        rec.record(2, "min P_1 near r = 0.5 below 0.1", "< 0.1", minimum, 0.1,
                   covers && minimum < 0.1, covers ? "" : "r range does not cover [0.4, 0.6]");
        rec.record(2, "P_1 < 0.1 only near r = 0.5", "distance of any P_1 < 0.1 point outside [0.4, 0.6]",
                   low_outside, 0.0, low_outside == 0.0);
        rec.record(2, "P_1 oscillates", ">= 2 interior local minima", local_minima, 2.0,
                   local_minima >= 2);
    });
    rec.runtime(2, "P_1 curve", seconds_since(start), 10.0);
}

void squeezing(const SweepConfig& config, Recorder& rec) {
    const auto start = Clock::now();
    std::vector<double> window;
    for (double r : config.r_grid()) {
        if (r > 0.7 && r < 1.3) window.push_back(r);
    }
    if (window.size() < 20) {
        rec.under_resolved(3, "N = 5 squeezing minimum in (0.7, 1.3)", "[-4.5, -3.5] dB",
                           std::to_string(window.size()) +
                               " grid points inside (0.7, 1.3); at least 20 needed");
        return;
    }
    for (int atoms : {5, 2, 1}) {
        const std::string name = "N = " + std::to_string(atoms) + " squeezing minimum in (0.7, 1.3)";
        rec.guarded(3, name, [&] {
            double best = std::numeric_limits<double>::infinity();
            for (double r : window) {
                best = std::min(best,
                                quadrature_moments_closed_form(params_at(config, kAlpha, r, atoms)).squeezing_db);
            }
            if (atoms == 5) {
                rec.record(3, name + " [dB]", "[-4.5, -3.5]", best, 0.5, best >= -4.5 && best <= -3.5);
            } else {
                rec.record(3, name + " [dB]", "< 0", best, 0.0, best < 0.0);
            }
        });
    }
    rec.runtime(3, "squeezing scan", seconds_since(start), 10.0);
}

void mandel(const SweepConfig& config, Recorder& rec) {
    const auto start = Clock::now();
    const int n_max = config.cutoff.value_or(default_cutoff(kAlpha));
    for (int atoms : {1, 2, 5}) {
        const std::string tag = "N = " + std::to_string(atoms);
        rec.guarded(4, "Q_M " + tag, [&] {
            for (double r : {1.0, 2.0}) {
                const double q = mandel_q(kAlpha, r, atoms, n_max);
                rec.record(4, "Q_M(r = " + format_number(r) + ") " + tag, "< 0", q, 0.0, q < 0.0);
            }
            const double q0 = mandel_q(kAlpha, 0.0, atoms, n_max);
            rec.record(4, "Q_M(r = 0) " + tag, pm(0.0, 1e-10), q0, 1e-10, std::abs(q0) <= 1e-10);
        });
    }
    rec.runtime(4, "Mandel Q", seconds_since(start), 5.0);
}

void wigner_onset(const SweepConfig& config, Recorder& rec) {
    rec.guarded(5, "Wigner fig4 preset", [&] {
        const auto jobs = fig4_jobs();
        std::map<std::pair<double, int>, double> minima;
        const auto start = Clock::now();
        for (const auto& job : jobs) {
            const auto grid = wigner_grid(params_at(config, kAlpha, job.r, job.atoms), config.grid,
                                          resolve_jobs(config.jobs));
            minima[{job.r, job.atoms}] = grid.min_value;
        }
        const double elapsed = seconds_since(start);

        const double quiet = minima.at({0.2, 1});
        rec.record(5, "min W at r = 0.2, N = 1", "> -1e-3", quiet, 1e-3, quiet > -1e-3);
        for (int atoms : {1, 2, 5}) {
            const double m = minima.at({0.4, atoms});
            rec.record(5, "min W at r = 0.4, N = " + std::to_string(atoms), "< -1e-3", m, 1e-3, m < -1e-3);
        }
        rec.runtime(5, "fig4 preset (18 grids)", elapsed, 120.0);
    });
}

void oracle_equivalence(const SweepConfig& config, Recorder& rec) {
    rec.guarded(6, "closed form vs iterative post-selection", [&] {
        double worst = 0.0;
        for (const auto& c : random_cases(30, 6001)) {
            const auto p = params_at(config, c.alpha, c.r, c.atoms);
            const auto closed = ps_state(p);
            const auto iterative = iterate_ps(coherent_state(c.alpha, p.cutoff), c.r, c.atoms);
            worst = std::max(worst, max_abs_diff(closed.state.matrix(), iterative.state.matrix()));
        }
        rec.record(6, "closed form vs iterative post-selection (30 random cases)", "<= 1e-10", worst,
                   1e-10, worst <= 1e-10);
    });

    rec.guarded(6, "branch maps vs joint evolution", [&] {
        double worst = 0.0;
        std::mt19937_64 rng(6002);
        std::uniform_real_distribution<double> coupling(0.0, 3.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 8; ++i) {
            const double r = coupling(rng);
            const Complex alpha = std::polar(0.5 + 2.5 * unit(rng), 2.0 * kPi * unit(rng));
            const int n_max = config.cutoff.value_or(default_cutoff(alpha));
            Matrix diag = Matrix::Zero(n_max + 1, n_max + 1);
            for (int n = 0; n <= std::min(n_max, 20); ++n) diag(n, n) = unit(rng);
            diag /= diag.trace().real();
            for (const FieldState& input : {coherent_state(alpha, n_max), FieldState(diag, true)}) {
                const auto oracle = joint_evolution_oracle(input, r);
                const auto closed = closed_form_blocks(input, r);
                worst = std::max({worst, max_abs_diff(oracle.rho11, closed.rho11),
                                  max_abs_diff(oracle.rho12, closed.rho12),
                                  max_abs_diff(oracle.rho21, closed.rho21),
                                  max_abs_diff(oracle.rho22, closed.rho22)});
            }
        }
        rec.record(6, "branch maps vs matrix-exponential evolution (16 inputs)", "<= 1e-8", worst, 1e-8,
                   worst <= 1e-8);
    });

    rec.guarded(6, "Laguerre series vs displaced parity", [&] {
        const double xs[] = {-2.0, 0.0, 2.0, 4.0, 6.0};
        const double ys[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
        const auto jobs = fig4_jobs();
        std::vector<WignerSeries> series;
        for (const auto& job : jobs) series.emplace_back(params_at(config, kAlpha, job.r, job.atoms));
        const int n_max = series.front().outcome().state.cutoff();

        std::vector<double> worst_per_point(25, 0.0);
        parallel_for(25, resolve_jobs(config.jobs), [&](std::size_t k) {
            const Complex gamma(xs[k % 5], ys[k / 5]);
            const DisplacedParity oracle(gamma, n_max);
            for (const auto& s : series) {
                worst_per_point[k] = std::max(worst_per_point[k], std::abs(s(gamma) - oracle(s.outcome().state)));
            }
        });
        const double worst = *std::max_element(worst_per_point.begin(), worst_per_point.end());
        rec.record(6, "Laguerre series vs displaced parity (18 pairs x 5x5 points)", "<= 1e-8", worst,
                   1e-8, worst <= 1e-8);
    });
}

void conservation(const SweepConfig& config, Recorder& rec) {
    const auto cases = random_cases(50, 7001);

    rec.guarded(7, "joint-block trace preservation", [&] {
        double worst = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            const auto& c = cases[i];
            const int n_max = config.cutoff.value_or(default_cutoff(c.alpha));
            const auto input = coherent_state(c.alpha, n_max);
            const auto blocks = joint_evolution_oracle(input, c.r);
            worst = std::max(worst, std::abs((blocks.rho11.trace() + blocks.rho22.trace() - input.trace()).real()));
            const double closed = ground_branch(input, c.r).trace().real() +
                                  excited_branch(input, c.r).trace().real();
            worst = std::max(worst, std::abs(closed - 1.0));
        }
        rec.record(7, "Tr rho11 + Tr rho22 = 1", "<= 1e-10", worst, 1e-10, worst <= 1e-10);
    });

    rec.guarded(7, "Wigner fine-grid normalization", [&] {
        GridSpec fine{-7.0, 7.0, 281, -7.0, 7.0, 281};
        double worst = 0.0;
        for (const auto& [r, atoms] : {std::pair{0.51, 1}, std::pair{1.0, 5}}) {
            const auto grid = wigner_grid(params_at(config, kAlpha, r, atoms), fine, resolve_jobs(config.jobs));
            worst = std::max(worst, std::abs(grid.total_integral - 1.0));
        }
        rec.record(7, "integral of W over [-7, 7]^2 at step 0.05", pm(1.0, 1e-6), 1.0 + worst, 1e-6,
                   worst <= 1e-6);
    });

    rec.guarded(7, "random-sample invariants", [&] {
        double sum_defect = 0.0;
        double min_uncertainty = std::numeric_limits<double>::infinity();
        double correlation_gap = std::numeric_limits<double>::infinity();
        for (const auto& c : cases) {
            const auto p = params_at(config, c.alpha, c.r, c.atoms);
            const auto stats = photon_statistics(c.alpha, c.r, c.atoms, p.cutoff);
            double total = 0.0;
            for (double q : stats.probabilities) total += q;
            sum_defect = std::max(sum_defect, std::abs(total - 1.0));

            const auto outcome = ps_state(p);
            for (double phi : {0.0, kPi / 4.0, kPi / 2.0}) {
                min_uncertainty = std::min(min_uncertainty, uncertainty_product(outcome.state, phi));
            }
            const double p1 = outcome.step_probabilities.front();
            correlation_gap = std::min(correlation_gap,
                                       outcome.success_probability - std::pow(p1, c.atoms));
        }
        rec.record(7, "photon statistics sum to 1 (50 cases)", "<= 1e-10", sum_defect, 1e-10,
                   sum_defect <= 1e-10);
        rec.record(7, "uncertainty product >= 1 (50 cases, 3 phases)", ">= 1 - 1e-9", min_uncertainty,
                   1e-9, min_uncertainty >= 1.0 - 1e-9);
        rec.record(7, "P_N - p_1^N >= 0 (50 cases)", ">= -1e-12", correlation_gap, 1e-12,
                   correlation_gap >= -1e-12);
    });
}

void identity_case(const SweepConfig& config, Recorder& rec) {
    rec.guarded(8, "r = 0 identity", [&] {
        const int n_max = config.cutoff.value_or(default_cutoff(kAlpha));
        const auto coherent = coherent_state(kAlpha, n_max);
        double state_diff = 0.0;
        double variance_diff = 0.0;
        double q_diff = 0.0;
        double wigner_diff = 0.0;
        for (int atoms : {1, 2, 5}) {
            const auto p = params_at(config, kAlpha, 0.0, atoms);
            state_diff = std::max(state_diff, max_abs_diff(ps_state(p).state.matrix(), coherent.matrix()));
            for (double phi : {0.0, kPi / 4.0, kPi / 2.0}) {
                auto pp = p;
                pp.phase = phi;
                variance_diff =
                    std::max(variance_diff, std::abs(quadrature_moments_closed_form(pp).variance - 1.0));
            }
            q_diff = std::max(q_diff, std::abs(mandel_q(kAlpha, 0.0, atoms, n_max)));
            const WignerSeries series(p);
            for (double x : {-1.0, 1.0, 2.5, 3.1622776601683795, 4.0, 5.5}) {
                for (double y : {-1.5, -0.5, 0.0, 0.7}) {
                    const Complex gamma(x, y);
                    const double gaussian = 2.0 / kPi * std::exp(-2.0 * std::norm(gamma - kAlpha));
                    wigner_diff = std::max(wigner_diff, std::abs(series(gamma) - gaussian));
                }
            }
        }
        rec.record(8, "post-selected state equals coherent state", "<= 1e-10", state_diff, 1e-10,
                   state_diff <= 1e-10);
        rec.record(8, "quadrature variance equals 1", "<= 1e-10", variance_diff, 1e-10, variance_diff <= 1e-10);
        rec.record(8, "Q_M equals 0", "<= 1e-10", q_diff, 1e-10, q_diff <= 1e-10);
        rec.record(8, "Wigner equals coherent Gaussian", "<= 1e-10", wigner_diff, 1e-10, wigner_diff <= 1e-10);
    });
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass:
            return "PASS";
        case Verdict::fail:
            return "FAIL";
        case Verdict::under_resolved:
            return "UNDER-RESOLVED";
    }
    return "?";
}

Verdict AcceptanceReport::criterion_verdict(int criterion) const {
    Verdict worst = Verdict::pass;
    for (const auto& c : checks) {
        if (c.criterion != criterion) continue;
        if (c.verdict == Verdict::fail) return Verdict::fail;
        if (c.verdict == Verdict::under_resolved) worst = Verdict::under_resolved;
    }
    return worst;
}

bool AcceptanceReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.verdict == Verdict::pass; });
}

bool AcceptanceReport::any_failed() const {
    return std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.verdict == Verdict::fail; });
}

std::string AcceptanceReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json entry{{"criterion", c.criterion},
                                     {"name", c.name},
                                     {"target", c.target},
                                     {"measured", nullptr},
                                     {"tolerance", c.tolerance},
                                     {"verdict", to_string(c.verdict)}};
        if (std::isfinite(c.measured)) entry["measured"] = c.measured;
        if (!c.message.empty()) entry["message"] = c.message;
        doc["checks"].push_back(std::move(entry));
    }
    doc["passed"] = all_passed();
    return doc.dump(2) + '\n';
}

AcceptanceReport run_acceptance(const SweepConfig& config, std::span<const int> criteria) {
    using Step = void (*)(const SweepConfig&, Recorder&);
    static constexpr Step steps[] = {success_probabilities, probability_curve_shape, squeezing, mandel,
                                     wigner_onset,          oracle_equivalence,      conservation, identity_case};
    AcceptanceReport report;
    Recorder rec(report);
    for (int k = 1; k <= 8; ++k) {
        if (!criteria.empty() && std::find(criteria.begin(), criteria.end(), k) == criteria.end()) continue;
        steps[k - 1](config, rec);
    }
    return report;
}

}  // namespace jcps
