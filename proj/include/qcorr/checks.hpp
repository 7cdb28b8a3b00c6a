#pragma once

#include <string>
#include <vector>

namespace qcorr::checks {

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_dev = 0.0;  // worst deviation observed, tolerance-specific
    std::string detail;
};

struct Options {
    int grid_size = 7;      // oracle-equivalence grid is grid_size^2 x 2
    bool corrupt_f = false; // negative-control hook: perturb the coupling
                            // on the closed-form side of the oracle check
};

/// The full verification suite: oracle equivalence, limiting cases,
/// dynamics convergence and the randomized property suites. Property
/// instance counts shrink when grid_size < 7 (smoke mode).
std::vector<CheckResult> run_all(const Options& opts);

CheckResult check_oracle_equivalence(const Options& opts);
CheckResult check_f_extremes();
CheckResult check_xstate_values();
CheckResult check_strong_field_equal_g();
CheckResult check_sudden_death();
CheckResult check_weak_field();
CheckResult check_dynamics_convergence(const Options& opts);
CheckResult check_discord_zero_coincidence();
CheckResult check_property_suites(const Options& opts);
CheckResult check_figure_curves();

} // namespace qcorr::checks
