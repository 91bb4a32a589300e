#pragma once

#include <span>
#include <string>
#include <vector>

#include "jcps/sweep.hpp"

namespace jcps {

enum class Verdict { pass, fail, under_resolved };

std::string to_string(Verdict v);

struct AcceptanceCheck {
    int criterion;        // 1..8
    std::string name;
    std::string target;   // human-readable target, e.g. "0.0638 +- 5e-05"
    double measured;
    double tolerance;
    Verdict verdict;
    std::string message;  // failure detail or resolution note
};

struct AcceptanceReport {
    std::vector<AcceptanceCheck> checks;

    /// Worst verdict among the checks of one criterion (fail > under_resolved > pass).
    Verdict criterion_verdict(int criterion) const;
    bool all_passed() const;
    bool any_failed() const;
    std::string to_json() const;
};

/// Runs the eight acceptance criteria at alpha = sqrt(10). The config
/// supplies the cutoff override, the r grid used for curve-shape and
/// squeezing checks, the Wigner grid, and the worker count. Exceptions from
/// the numerics become failed checks carrying the error text. A non-empty
/// `criteria` list restricts the run to those criterion numbers.
AcceptanceReport run_acceptance(const SweepConfig& config, std::span<const int> criteria = {});

}  // namespace jcps
