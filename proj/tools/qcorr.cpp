#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qcorr/analytic_oracles.hpp"
#include "qcorr/checks.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/master_equation.hpp"
#include "qcorr/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

void print_matrix(std::ostream& os, const qcorr::Matrix4c& m, const std::string& title) {
    os << title << "\n";
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const qcorr::cxd v = m(i, j);
            os << "  (" << qcorr::format_double(v.real()) << ", "
               << qcorr::format_double(v.imag()) << ")";
        }
        os << "\n";
    }
}

void print_report(std::ostream& os, const qcorr::CorrelationReport& r) {
    using qcorr::format_double;
    os << "concurrence      " << format_double(r.concurrence) << "\n"
       << "qmi              " << format_double(r.qmi) << "\n"
       << "entropy_a        " << format_double(r.entropy_a) << "\n"
       << "entropy_b        " << format_double(r.entropy_b) << "\n"
       << "entropy_ab       " << format_double(r.entropy_ab) << "\n"
       << "ccl_1            " << format_double(r.ccl_1) << "\n"
       << "ccl_2            " << format_double(r.ccl_2) << "\n"
       << "discord_1        " << format_double(r.discord_1) << "\n"
       << "discord_2        " << format_double(r.discord_2) << "\n"
       << "geo_discord_1    " << format_double(r.geo_discord_1) << "\n"
       << "geo_discord_2    " << format_double(r.geo_discord_2) << "\n"
       << "linear_entropy   " << format_double(r.linear_entropy) << "\n"
       << "argmin_1         a=" << format_double(r.argmin_1.alpha_sq)
       << " phi=" << format_double(r.argmin_1.phi) << "\n"
       << "argmin_2         a=" << format_double(r.argmin_2.alpha_sq)
       << " phi=" << format_double(r.argmin_2.phi) << "\n"
       << "optimizer_evals  " << r.optimizer_evals << "\n";
}

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return kExitUsage;
    }
    out << text;
    return kExitOk;
}

int run_steady(double g1, double g2, double x, double dperp,
               std::optional<double> p00, const std::string& basis_name,
               const std::string& out_path) {
    qcorr::ModelParams p{g1, g2, x, dperp, 0.0};
    p.validate();

    const bool degenerate = x == 0.0 && g1 == g2;
    if (degenerate && !p00) {
        std::cerr << "error: x = 0 with equal drives conserves the |0,0> population;"
                     " the steady state needs --p00\n";
        return kExitUsage;
    }

    const qcorr::SteadyStateSolution sol = qcorr::steady_state(p, p00);
    const qcorr::Basis basis = basis_name == "coupled" ? qcorr::Basis::TripletSinglet
                                                       : qcorr::Basis::Product;

    std::ostringstream os;
    os << "parameters: g1bar=" << qcorr::format_double(g1)
       << " g2bar=" << qcorr::format_double(g2)
       << " x=" << qcorr::format_double(x)
       << " dperp_ratio=" << qcorr::format_double(dperp);
    if (p00)
        os << " p00=" << qcorr::format_double(*p00);
    os << "\n";
    const double f = qcorr::coupling_f(x, dperp);
    os << "coupling F12 = " << qcorr::format_double(f);
    if (!qcorr::f12_in_physical_range(f))
        os << "  (outside the physically attainable range)";
    os << "\n";
    os << "nullspace multiplicity " << sol.zero_multiplicity
       << ", residual " << qcorr::format_double(sol.residual)
       << ", spectral gap " << qcorr::format_double(sol.spectral_gap) << "\n";

    print_matrix(os, qcorr::change_basis(sol.rho, basis).matrix(),
                 std::string("steady state (") + qcorr::to_string(basis) + " basis)");

    std::optional<qcorr::DensityMatrix4> analytic;
    if (g2 == 0.0)
        analytic = qcorr::steady_g2zero(p);
    else if (g1 == g2)
        analytic = qcorr::steady_equal_g(p, p00.value_or(0.0));
    if (analytic) {
        const qcorr::DensityMatrix4 ana_prod =
            qcorr::change_basis(*analytic, qcorr::Basis::Product);
        const double dev =
            (ana_prod.matrix() - sol.rho.matrix()).cwiseAbs().maxCoeff();
        print_matrix(os, qcorr::change_basis(ana_prod, basis).matrix(),
                     std::string("closed form (") + qcorr::to_string(basis) + " basis)");
        os << "max |numeric - closed form| = " << qcorr::format_double(dev) << "\n";
    } else {
        os << "no closed form covers this drive pattern (need g2=0 or g1=g2)\n";
    }

    os << "\ncorrelations:\n";
    print_report(os, qcorr::full_report(sol.rho));
    return write_output(os.str(), out_path);
}

int run_verify(int grid_size, bool corrupt_f, const std::string& out_path) {
    qcorr::checks::Options opts;
    opts.grid_size = grid_size;
    opts.corrupt_f = corrupt_f;
    const auto results = qcorr::checks::run_all(opts);
    std::ostringstream os;
    int failed = 0;
    for (const auto& r : results) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        failed += r.passed ? 0 : 1;
    }
    os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed")
       << "\n";
    const int rc = write_output(os.str(), out_path);
    if (rc != kExitOk)
        return rc;
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady states and correlation measures of two laser-driven "
                 "two-level atoms damped by a common vacuum"};
    app.require_subcommand(1);

    // steady
    auto* steady = app.add_subcommand("steady", "solve one parameter point and report");
    double g1 = 0.0, g2 = 0.0, x = 0.0, dperp = 1.0;
    std::optional<double> p00;
    std::string basis = "product";
    std::string steady_out;
    steady->add_option("--g1", g1, "drive of atom 1 in units of gamma_1")->required();
    steady->add_option("--g2", g2, "drive of atom 2 in units of gamma_1")->required();
    steady->add_option("--x", x, "separation omega_A |r1-r2| / c")->required();
    steady->add_option("--dperp", dperp, "squared transverse dipole fraction in [0,1]")
        ->required();
    steady->add_option("--p00", p00,
                       "initial |0,0> population (needed when x = 0 and g1 = g2)");
    steady->add_option("--basis", basis, "print basis: product|coupled")
        ->check(CLI::IsMember({"product", "coupled"}));
    steady->add_option("--out", steady_out, "write the report to a file");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "evaluate a JSON-configured grid to CSV");
    std::string config_path;
    std::string sweep_out;
    sweep->add_option("config", config_path, "JSON sweep configuration")->required();
    sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");

    // figure
    auto* figure = app.add_subcommand("figure", "emit a named figure-family CSV");
    std::string figure_id;
    std::string figure_out;
    std::optional<double> figure_dperp;
    figure->add_option("id", figure_id, "figure family id")->required();
    figure->add_option("--dperp", figure_dperp, "override the preset dipole orientation");
    figure->add_option("--out", figure_out, "output CSV path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    int grid_size = 7;
    bool corrupt_f = false;
    std::string verify_out;
    verify->add_option("--grid-size", grid_size, "oracle grid resolution (default 7)")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--corrupt-f", corrupt_f,
                     "negative control: perturb the coupling inside the oracle check")
        ->group("");  // hidden
    verify->add_option("--out", verify_out, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (steady->parsed())
            return run_steady(g1, g2, x, dperp, p00, basis, steady_out);
        if (sweep->parsed()) {
            const qcorr::SweepConfig cfg = qcorr::load_sweep_config(config_path);
            return write_output(qcorr::render_sweep_csv(cfg), sweep_out);
        }
        if (figure->parsed()) {
            const qcorr::FigureSpec* spec = qcorr::find_figure(figure_id);
            if (!spec) {
                std::cerr << "error: unknown figure id '" << figure_id << "'; valid ids:";
                for (const auto& f : qcorr::figure_table())
                    std::cerr << " " << f.id;
                std::cerr << "\n";
                return kExitUsage;
            }
            return write_output(qcorr::render_figure_csv(*spec, figure_dperp), figure_out);
        }
        if (verify->parsed())
            return run_verify(grid_size, corrupt_f, verify_out);
    } catch (const qcorr::ConfigurationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qcorr::Error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
