#include <doctest.h>

#include <charconv>
#include <random>
#include <sstream>

#include "qcorr/sweep.hpp"

using namespace qcorr;
using nlohmann::json;

namespace {

const char* kHeader =
    "g1bar,g2bar,x,dperp_ratio,pop_11,pop_10,pop_1m1,pop_00,concurrence,qmi,"
    "ccl_1,ccl_2,discord_1,discord_2,geo_discord_1,geo_discord_2,linear_entropy,"
    "numeric_deviation";

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line))
        out.push_back(line);
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double field_as_double(const std::string& s) {
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

} // namespace

TEST_CASE("format_double round-trips arbitrary values") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double v = uni(rng) * std::pow(10.0, (k % 61) - 30);
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
        CHECK(s.find('e') == s.rfind('e'));  // single exponent marker at most
    }
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.25) == "0.25");
}

TEST_CASE("range expansion in sweep configs") {
    const json doc = {
        {"mode", "g2zero"},
        {"g1_values", {{"start", 0.1}, {"stop", 10.0}, {"count", 3}, {"spacing", "log"}}},
        {"x_values", {0.5, 1.0}},
    };
    const SweepConfig c = parse_sweep_config(doc);
    REQUIRE(c.g1_values.size() == 3);
    CHECK(c.g1_values[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(c.g1_values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.g1_values[2] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(c.x_values == std::vector<double>{0.5, 1.0});
    CHECK(c.dperp_ratio == 1.0);
    CHECK_FALSE(c.numeric_check);
}

TEST_CASE("config validation rejects malformed documents") {
    CHECK_THROWS_AS(parse_sweep_config(json{{"mode", "bogus"}}), ConfigurationError);
    CHECK_THROWS_AS(parse_sweep_config(json{{"mode", "g2zero"}}), ConfigurationError);
    CHECK_THROWS_AS(
        parse_sweep_config(json{{"mode", "g2zero"},
                                {"g1_values", {1.0}},
                                {"x_values", {1.0}},
                                {"typo_key", 1}}),
        ConfigurationError);
    CHECK_THROWS_AS(
        parse_sweep_config(json{
            {"mode", "g2zero"},
            {"g1_values",
             {{"start", -1.0}, {"stop", 1.0}, {"count", 4}, {"spacing", "log"}}},
            {"x_values", {1.0}}}),
        ConfigurationError);
    CHECK_THROWS_AS(
        parse_sweep_config(json{{"mode", "g2zero"},
                                {"g1_values", {1.0}},
                                {"x_values", {1.0}},
                                {"outputs", {"not_a_column"}}}),
        ConfigurationError);
    CHECK_THROWS_AS(
        parse_sweep_config(json{{"mode", "g2zero"},
                                {"g1_values", json::array()},
                                {"x_values", {1.0}}}),
        ConfigurationError);
}

TEST_CASE("sweep CSV: fixed header, ordering, determinism, numeric check") {
    SweepConfig cfg;
    cfg.mode = SweepMode::G2Zero;
    cfg.g1_values = {0.2, 0.8};
    cfg.x_values = {0.7, 1.9};
    cfg.dperp_ratio = 1.0;
    cfg.numeric_check = true;

    const std::string csv = render_sweep_csv(cfg);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == kHeader);

    // g1-major, then x
    CHECK(field_as_double(split_fields(lines[1])[0]) == 0.2);
    CHECK(field_as_double(split_fields(lines[1])[2]) == 0.7);
    CHECK(field_as_double(split_fields(lines[2])[0]) == 0.2);
    CHECK(field_as_double(split_fields(lines[2])[2]) == 1.9);
    CHECK(field_as_double(split_fields(lines[3])[0]) == 0.8);

    for (int r = 1; r <= 4; ++r) {
        const auto fields = split_fields(lines[r]);
        REQUIRE(fields.size() == 18);
        CHECK(field_as_double(fields[1]) == 0.0);  // g2bar in g2zero mode
        CHECK(field_as_double(fields[17]) <= 1e-10);
        const double pops = field_as_double(fields[4]) + field_as_double(fields[5]) +
                            field_as_double(fields[6]) + field_as_double(fields[7]);
        CHECK(pops == doctest::Approx(1.0).epsilon(1e-12));
    }

    // byte-identical on repeated evaluation
    CHECK(render_sweep_csv(cfg) == csv);
}

TEST_CASE("sweep without the numeric check leaves the deviation field empty") {
    SweepConfig cfg;
    cfg.mode = SweepMode::EqualG;
    cfg.g1_values = {0.5};
    cfg.x_values = {1.0};
    const auto lines = split_lines(render_sweep_csv(cfg));
    REQUIRE(lines.size() == 2);
    const auto fields = split_fields(lines[1]);
    REQUIRE(fields.size() == 18);
    CHECK(fields[17].empty());
    CHECK(field_as_double(fields[1]) == 0.5);  // g2bar equals g1bar
}

TEST_CASE("degenerate equal-drive sweep points require p00") {
    CHECK_THROWS_AS(
        evaluate_sweep_point(SweepMode::EqualG, 1.0, 0.0, 1.0, std::nullopt, false),
        ConfigurationError);
    const SweepRow row =
        evaluate_sweep_point(SweepMode::EqualG, 1.0, 0.0, 1.0, 0.25, true);
    CHECK(row.pop_00 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(*row.numeric_deviation <= 1e-10);
}

TEST_CASE("figure table covers the expected families") {
    const std::vector<std::string> expected = {
        "conc_vs_g1",        "conc_vs_pop00",      "conc_contour",
        "discord_limits",    "geo_discord_vs_g1",  "geo_discord_contour",
        "linear_entropy_vs_g1", "conc_vs_linear_entropy"};
    REQUIRE(figure_table().size() == expected.size());
    for (const std::string& id : expected)
        CHECK(find_figure(id) != nullptr);
    CHECK(find_figure("no_such_figure") == nullptr);

    // wavelength distances map to x = 2 pi d / lambda
    const FigureSpec* conc = find_figure("conc_vs_g1");
    REQUIRE(conc != nullptr);
    REQUIRE(conc->x_values.size() == 3);
    CHECK(conc->x_values[0] == doctest::Approx(2.0 * std::numbers::pi / 100.0));
    CHECK(conc->x_values[1] == doctest::Approx(std::numbers::pi / 2.0));
    CHECK(conc->x_values[2] == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("figure CSV carries a provenance comment then the fixed header") {
    const FigureSpec* spec = find_figure("discord_limits");
    REQUIRE(spec != nullptr);
    FigureSpec small = *spec;
    small.x_values = {1.0, 2.0, 3.0};
    const auto lines = split_lines(render_figure_csv(small));
    REQUIRE(lines.size() == 5);
    CHECK(lines[0].rfind("# figure=discord_limits params=", 0) == 0);
    CHECK(lines[1] == kHeader);
    CHECK(split_fields(lines[2])[0] == "inf");  // strong-drive limit rows
}
