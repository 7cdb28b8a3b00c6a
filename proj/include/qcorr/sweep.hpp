#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcorr/correlations.hpp"
#include "qcorr/master_equation.hpp"

namespace qcorr {

enum class SweepMode { G2Zero, EqualG };

const char* to_string(SweepMode m);

/// Parameter grid for a sweep, parsed from a JSON document. Value lists
/// may be given literally or as {start, stop, count, spacing} ranges with
/// linear or log spacing.
struct SweepConfig {
    SweepMode mode = SweepMode::G2Zero;
    std::vector<double> g1_values;
    std::vector<double> x_values;
    double dperp_ratio = 1.0;
    std::optional<double> p00;        // used only for mode=equalg at x=0
    std::vector<std::string> outputs; // validated against the column set
    bool numeric_check = false;
};

SweepConfig parse_sweep_config(const nlohmann::json& doc);
SweepConfig load_sweep_config(const std::string& path);

/// Fixed CSV column set, in emission order.
const std::vector<std::string>& sweep_columns();

/// One evaluated grid point: triplet-singlet populations of the steady
/// state plus its full correlation report, and optionally the deviation
/// of the closed form from the nullspace solver.
struct SweepRow {
    double g1bar, g2bar, x, dperp_ratio;
    double pop_11, pop_10, pop_1m1, pop_00;
    CorrelationReport report;
    std::optional<double> numeric_deviation;
};

SweepRow evaluate_sweep_point(SweepMode mode, double g1, double x,
                              double dperp_ratio, std::optional<double> p00,
                              bool numeric_check);

/// Shortest decimal representation that round-trips the value (at most 17
/// significant digits, '.' separator, no locale).
std::string format_double(double v);

/// Evaluate the whole grid (rows ordered g1-major, then x; points may be
/// computed concurrently but assembly is order-preserving) and render it
/// as CSV with the fixed header.
std::string render_sweep_csv(const SweepConfig& config);

/// A named sweep preset reproducing one figure family: its mode, axes and
/// fixed parameters.
struct FigureSpec {
    std::string id;
    std::string description;
    SweepMode mode;
    std::vector<double> g1_values;  // empty means the x-limit family
    std::vector<double> x_values;
    double dperp_ratio;
    bool xstate_limit = false;      // sweep the strong-drive X-form over x
};

const std::vector<FigureSpec>& figure_table();
const FigureSpec* find_figure(const std::string& id);

/// Render a figure family as CSV, preceded by a `# figure=... params=...`
/// provenance comment. `dperp_override` replaces the preset orientation.
std::string render_figure_csv(const FigureSpec& spec,
                              std::optional<double> dperp_override = std::nullopt);

} // namespace qcorr
