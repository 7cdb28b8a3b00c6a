#include "qcorr/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "qcorr/analytic_oracles.hpp"

namespace qcorr {

namespace {

const std::vector<std::string> kColumns = {
    "g1bar", "g2bar", "x", "dperp_ratio",
    "pop_11", "pop_10", "pop_1m1", "pop_00",
    "concurrence", "qmi", "ccl_1", "ccl_2",
    "discord_1", "discord_2", "geo_discord_1", "geo_discord_2",
    "linear_entropy", "numeric_deviation"};

std::vector<double> linear_range(double start, double stop, std::size_t count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = start;
        return out;
    }
    for (std::size_t i = 0; i < count; ++i)
        out[i] = start + (stop - start) * static_cast<double>(i) /
                             static_cast<double>(count - 1);
    return out;
}

std::vector<double> parse_values(const nlohmann::json& v, const std::string& field) {
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number())
                throw ConfigurationError(field + ": list entries must be numbers");
            out.push_back(e.get<double>());
        }
        if (out.empty())
            throw ConfigurationError(field + ": list must not be empty");
        return out;
    }
    if (!v.is_object())
        throw ConfigurationError(field + ": expected a list or a range object");
    for (const auto& [key, _] : v.items())
        if (key != "start" && key != "stop" && key != "count" && key != "spacing")
            throw ConfigurationError(field + ": unknown range key '" + key + "'");
    if (!v.contains("start") || !v.contains("stop") || !v.contains("count"))
        throw ConfigurationError(field + ": range needs start, stop and count");
    const double start = v.at("start").get<double>();
    const double stop = v.at("stop").get<double>();
    const auto count = v.at("count").get<std::int64_t>();
    if (count < 1)
        throw ConfigurationError(field + ": count must be at least 1");
    const std::string spacing = v.value("spacing", "linear");
    if (spacing == "linear")
        return linear_range(start, stop, static_cast<std::size_t>(count));
    if (spacing != "log")
        throw ConfigurationError(field + ": spacing must be 'linear' or 'log'");
    if (start <= 0.0 || stop <= 0.0)
        throw ConfigurationError(field + ": log spacing requires positive endpoints");
    std::vector<double> out =
        linear_range(std::log(start), std::log(stop), static_cast<std::size_t>(count));
    for (double& w : out)
        w = std::exp(w);
    return out;
}

template <typename Fn>
void parallel_rows(std::size_t n, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>({std::max<std::size_t>(std::thread::hardware_concurrency(), 1),
                               n, 16});
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::mutex err_mutex;
    std::exception_ptr first_error;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers)
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

void append_row(std::string& out, const SweepRow& r) {
    const double cols[17] = {
        r.g1bar, r.g2bar, r.x, r.dperp_ratio,
        r.pop_11, r.pop_10, r.pop_1m1, r.pop_00,
        r.report.concurrence, r.report.qmi, r.report.ccl_1, r.report.ccl_2,
        r.report.discord_1, r.report.discord_2,
        r.report.geo_discord_1, r.report.geo_discord_2,
        r.report.linear_entropy};
    for (double c : cols) {
        out += format_double(c);
        out += ',';
    }
    if (r.numeric_deviation)
        out += format_double(*r.numeric_deviation);
    out += '\n';
}

std::string header_line() {
    std::string h;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i)
            h += ',';
        h += kColumns[i];
    }
    h += '\n';
    return h;
}

SweepRow evaluate_xstate_point(double x, double ratio) {
    const double f = coupling_f(x, ratio);
    const DensityMatrix4 state = limit_xstate_g2zero(f);
    const DensityMatrix4 ts = change_basis(state, Basis::TripletSinglet);
    SweepRow row;
    row.g1bar = std::numeric_limits<double>::infinity();
    row.g2bar = 0.0;
    row.x = x;
    row.dperp_ratio = ratio;
    row.pop_11 = ts(0, 0).real();
    row.pop_10 = ts(1, 1).real();
    row.pop_1m1 = ts(2, 2).real();
    row.pop_00 = ts(3, 3).real();
    row.report = full_report(state);
    return row;
}

} // namespace

const char* to_string(SweepMode m) {
    return m == SweepMode::G2Zero ? "g2zero" : "equalg";
}

SweepConfig parse_sweep_config(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw ConfigurationError("config must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        static const char* known[] = {"mode", "g1_values", "x_values", "dperp_ratio",
                                      "p00", "outputs", "numeric_check"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ConfigurationError("unknown config key '" + key + "'");
    }
    SweepConfig c;
    const std::string mode = doc.value("mode", "");
    if (mode == "g2zero")
        c.mode = SweepMode::G2Zero;
    else if (mode == "equalg")
        c.mode = SweepMode::EqualG;
    else
        throw ConfigurationError("mode must be 'g2zero' or 'equalg'");
    if (!doc.contains("g1_values") || !doc.contains("x_values"))
        throw ConfigurationError("config needs g1_values and x_values");
    c.g1_values = parse_values(doc.at("g1_values"), "g1_values");
    c.x_values = parse_values(doc.at("x_values"), "x_values");
    c.dperp_ratio = doc.value("dperp_ratio", 1.0);
    if (c.dperp_ratio < 0.0 || c.dperp_ratio > 1.0)
        throw ConfigurationError("dperp_ratio must lie in [0, 1]");
    if (doc.contains("p00"))
        c.p00 = doc.at("p00").get<double>();
    if (doc.contains("outputs")) {
        for (const auto& e : doc.at("outputs")) {
            const std::string name = e.get<std::string>();
            if (std::find(kColumns.begin(), kColumns.end(), name) == kColumns.end())
                throw ConfigurationError("unknown output column '" + name + "'");
            c.outputs.push_back(name);
        }
    }
    c.numeric_check = doc.value("numeric_check", false);
    return c;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigurationError("cannot open config file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_sweep_config(doc);
}

const std::vector<std::string>& sweep_columns() {
    return kColumns;
}

SweepRow evaluate_sweep_point(SweepMode mode, double g1, double x,
                              double dperp_ratio, std::optional<double> p00,
                              bool numeric_check) {
    ModelParams p;
    p.g1bar = g1;
    p.g2bar = mode == SweepMode::EqualG ? g1 : 0.0;
    p.x = x;
    p.dperp_ratio = dperp_ratio;
    p.validate();

    const bool degenerate = mode == SweepMode::EqualG && x == 0.0;
    if (degenerate && !p00)
        throw ConfigurationError("equalg sweep with x = 0 requires p00");

    const DensityMatrix4 ts = mode == SweepMode::G2Zero
                                  ? steady_g2zero(p)
                                  : steady_equal_g(p, p00.value_or(0.0));
    const DensityMatrix4 state = change_basis(ts, Basis::Product);

    SweepRow row;
    row.g1bar = p.g1bar;
    row.g2bar = p.g2bar;
    row.x = x;
    row.dperp_ratio = dperp_ratio;
    row.pop_11 = ts(0, 0).real();
    row.pop_10 = ts(1, 1).real();
    row.pop_1m1 = ts(2, 2).real();
    row.pop_00 = ts(3, 3).real();
    row.report = full_report(state);
    if (numeric_check) {
        const SteadyStateSolution num =
            steady_state(p, degenerate ? p00 : std::nullopt);
        row.numeric_deviation =
            (state.matrix() - num.rho.matrix()).cwiseAbs().maxCoeff();
    }
    return row;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string render_sweep_csv(const SweepConfig& config) {
    const std::size_t n = config.g1_values.size() * config.x_values.size();
    std::vector<SweepRow> rows(n);
    parallel_rows(n, [&](std::size_t i) {
        const std::size_t ig = i / config.x_values.size();
        const std::size_t ix = i % config.x_values.size();
        rows[i] = evaluate_sweep_point(config.mode, config.g1_values[ig],
                                       config.x_values[ix], config.dperp_ratio,
                                       config.p00, config.numeric_check);
    });
    std::string out = header_line();
    for (const SweepRow& r : rows)
        append_row(out, r);
    return out;
}

const std::vector<FigureSpec>& figure_table() {
    using std::numbers::pi;
    // distances quoted in wavelengths map to x = 2 pi (distance / lambda)
    static const std::vector<double> kThreeDistances = {2.0 * pi / 100.0, pi / 2.0,
                                                        2.0 * pi};
    static const std::vector<FigureSpec> table = [] {
        std::vector<FigureSpec> t;
        auto log_range = [](double a, double b, std::size_t n) {
            std::vector<double> out = linear_range(std::log(a), std::log(b), n);
            for (double& w : out)
                w = std::exp(w);
            return out;
        };
        t.push_back({"conc_vs_g1",
                     "steady-state concurrence against drive strength at three separations",
                     SweepMode::G2Zero, log_range(0.01, 20.0, 81), kThreeDistances, 1.0});
        t.push_back({"conc_vs_pop00",
                     "concurrence against the |0,0> population along the drive sweep",
                     SweepMode::G2Zero, log_range(0.01, 20.0, 81), kThreeDistances, 1.0});
        t.push_back({"conc_contour",
                     "concurrence on a separation x drive grid",
                     SweepMode::G2Zero, log_range(0.01, 10.0, 41),
                     linear_range(0.1, 12.0, 61), 1.0});
        t.push_back({"discord_limits",
                     "strong-drive limit correlations against separation",
                     SweepMode::G2Zero, {}, linear_range(0.1, 12.0, 239), 1.0, true});
        t.push_back({"geo_discord_vs_g1",
                     "geometric discords against drive strength at three separations",
                     SweepMode::G2Zero, log_range(0.01, 50.0, 81), kThreeDistances, 1.0});
        t.push_back({"geo_discord_contour",
                     "geometric discord on a separation x drive grid",
                     SweepMode::G2Zero, log_range(0.01, 10.0, 41),
                     linear_range(0.1, 12.0, 61), 1.0});
        t.push_back({"linear_entropy_vs_g1",
                     "linear entropy against drive strength at three separations",
                     SweepMode::G2Zero, log_range(0.01, 50.0, 81), kThreeDistances, 1.0});
        t.push_back({"conc_vs_linear_entropy",
                     "concurrence against linear entropy along an equal-drive sweep",
                     SweepMode::EqualG, log_range(0.01, 50.0, 121),
                     {2.0 * pi / 100.0}, 1.0});
        return t;
    }();
    return table;
}

const FigureSpec* find_figure(const std::string& id) {
    for (const FigureSpec& f : figure_table())
        if (f.id == id)
            return &f;
    return nullptr;
}

std::string render_figure_csv(const FigureSpec& spec,
                              std::optional<double> dperp_override) {
    const double ratio = dperp_override.value_or(spec.dperp_ratio);
    std::ostringstream comment;
    comment << "# figure=" << spec.id << " params=mode=" << to_string(spec.mode)
            << " dperp_ratio=" << format_double(ratio);
    if (spec.xstate_limit)
        comment << " g1bar=inf";
    comment << " x_count=" << spec.x_values.size()
            << " g1_count=" << (spec.xstate_limit ? 1 : spec.g1_values.size()) << "\n";

    std::string out = comment.str();
    out += header_line();
    if (spec.xstate_limit) {
        std::vector<SweepRow> rows(spec.x_values.size());
        parallel_rows(rows.size(), [&](std::size_t i) {
            rows[i] = evaluate_xstate_point(spec.x_values[i], ratio);
        });
        for (const SweepRow& r : rows)
            append_row(out, r);
        return out;
    }
    SweepConfig cfg;
    cfg.mode = spec.mode;
    cfg.g1_values = spec.g1_values;
    cfg.x_values = spec.x_values;
    cfg.dperp_ratio = ratio;
    const std::string body = render_sweep_csv(cfg);
    out += body.substr(body.find('\n') + 1);  // body minus its header
    return out;
}

} // namespace qcorr
