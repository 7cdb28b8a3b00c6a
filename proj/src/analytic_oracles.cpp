#include "qcorr/analytic_oracles.hpp"

#include <cmath>

namespace qcorr {

namespace {

constexpr cxd kI{0.0, 1.0};
const double kSqrt2 = std::sqrt(2.0);

// Truncated expansions are Hermitian with unit trace but not PSD (and
// arbitrarily far from it outside their validity bound, which is reported
// rather than thrown), so positivity is not enforced on them.
const double kApproximantFloor = -std::numeric_limits<double>::infinity();

DensityMatrix4 ts_state(const Matrix4c& m, double floor = DensityMatrix4::kEigenvalueFloor) {
    return DensityMatrix4(m, Basis::TripletSinglet, floor);
}

} // namespace

G2ZeroCoefficients g2zero_coefficients(double g1bar, double f12) {
    const double f2 = f12 * f12;
    const double f4 = f2 * f2;
    const double u = g1bar * g1bar;
    const double a6 = 2048.0 + 1152.0 * f2;
    const double a4 = 2560.0 + 5184.0 * f2 - 1296.0 * f4;
    const double a2 = 864.0 + 144.0 * f2 + 486.0 * f4;
    const double a0 = 9.0 / 8.0 * (2.0 + 3.0 * f12) * (2.0 + 3.0 * f12) *
                      (2.0 - 3.0 * f12) * (2.0 - 3.0 * f12) * (4.0 - f2);
    G2ZeroCoefficients c;
    c.kappa = ((a6 * u + a4) * u + a2) * u + a0;
    c.mu_plus = 32.0 * (16.0 + 12.0 * f12 + 9.0 * f2);
    c.mu_minus = 32.0 * (16.0 - 12.0 * f12 + 9.0 * f2);
    c.nu_plus = 18.0 * (32.0 + 48.0 * f12 + 68.0 * f2 - 9.0 * f4);
    c.nu_minus = 18.0 * (32.0 - 48.0 * f12 + 68.0 * f2 - 9.0 * f4);
    c.eta_plus = 9.0 * (2.0 + 3.0 * f12) * (2.0 + 3.0 * f12) * (4.0 - f2);
    c.eta_minus = 9.0 * (2.0 - 3.0 * f12) * (2.0 - 3.0 * f12) * (4.0 - f2);
    return c;
}

EqualGCoefficients equal_g_coefficients(double g1bar, double f12, double p00) {
    const double u = g1bar * g1bar;
    const double c = 1.0 + 1.5 * f12;
    EqualGCoefficients out;
    out.kappa2 = (16.0 * u + 4.0) * u + 0.25 * c * c;
    out.kappa3 = (12.0 * u + 4.0) * u + 1.0;
    out.p00 = p00;
    return out;
}

DensityMatrix4 steady_g2zero(const ModelParams& p) {
    p.validate();
    if (p.g2bar != 0.0)
        throw ConfigurationError("steady_g2zero requires g2bar = 0");
    if (p.delta_lbar != 0.0)
        throw ConfigurationError("steady_g2zero requires resonance (delta_lbar = 0)");
    return steady_g2zero_from_f(p.g1bar, coupling_f(p.x, p.dperp_ratio));
}

DensityMatrix4 steady_g2zero_from_f(double g1bar, double f12) {
    const double g = g1bar;
    const double u = g * g;        // G^2
    const double g3 = u * g;       // G^3
    const double f = f12;
    const double f2 = f * f;
    const double f3 = f2 * f;
    const double f4 = f2 * f2;
    const G2ZeroCoefficients c = g2zero_coefficients(g, f);
    const double k = c.kappa;

    const double p11 = 18.0 / k * ((16.0 * f2 * u + 9.0 * (4.0 - f2) * f2) * u * u);
    const double p10 = ((c.mu_minus * u + c.nu_minus) * u + c.eta_minus) * u / k;
    const double p00 = ((c.mu_plus * u + c.nu_plus) * u + c.eta_plus) * u / k;
    const double p1m1 = 1.0 - p11 - p10 - p00;

    // basis order: |1,1>, |1,0>, |1,-1>, |0,0>
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = p11;
    m(1, 1) = p10;
    m(2, 2) = p1m1;
    m(3, 3) = p00;

    const cxd c_00_11 = kI * 9.0 * kSqrt2 / k * g3 * f *
                        (3.0 * (2.0 + 3.0 * f) * (4.0 - f2) +
                         8.0 * (4.0 + 2.0 * f - 3.0 * f2) * u);
    const cxd c_10_11 = kI * 9.0 * kSqrt2 / k * g3 * f *
                        (3.0 * (2.0 - 3.0 * f) * (4.0 - f2) +
                         8.0 * (4.0 - 2.0 * f - 3.0 * f2) * u);
    const cxd c_1m1_10 = -kI * kSqrt2 / (4.0 * k) * g *
                         ((32.0 * (32.0 - 12.0 * f - 18.0 * f2 + 27.0 * f3) * u +
                           36.0 * (32.0 - 24.0 * f - 4.0 * f2 + 54.0 * f3 - 9.0 * f4)) * u +
                          9.0 * (2.0 - 3.0 * f) * (2.0 - 3.0 * f) * (2.0 + 3.0 * f) * (4.0 - f2));
    // The G^2 coefficient here is the f -> -f mirror of the one above
    // (... - 9 f^4); the +9 f^4 variant fails the nullspace cross-check.
    const cxd c_1m1_00 = -kI * kSqrt2 / (4.0 * k) * g *
                         ((32.0 * (32.0 + 12.0 * f - 18.0 * f2 - 27.0 * f3) * u +
                           36.0 * (32.0 + 24.0 * f - 4.0 * f2 - 54.0 * f3 - 9.0 * f4)) * u +
                          9.0 * (2.0 + 3.0 * f) * (2.0 + 3.0 * f) * (2.0 - 3.0 * f) * (4.0 - f2));
    const cxd c_1m1_11 = 1.5 / k * f * u *
                         (-256.0 * u * u - 576.0 * f2 * u +
                          9.0 * (16.0 - 40.0 * f2 + 9.0 * f4));
    const cxd c_00_10 = u / k *
                        ((512.0 * u + 36.0 * (16.0 + 16.0 * f2 - 9.0 * f4)) * u +
                         9.0 * (16.0 - 40.0 * f2 + 9.0 * f4));

    m(3, 0) = c_00_11;  m(0, 3) = std::conj(c_00_11);
    m(1, 0) = c_10_11;  m(0, 1) = std::conj(c_10_11);
    m(2, 1) = c_1m1_10; m(1, 2) = std::conj(c_1m1_10);
    m(2, 3) = c_1m1_00; m(3, 2) = std::conj(c_1m1_00);
    m(2, 0) = c_1m1_11; m(0, 2) = std::conj(c_1m1_11);
    m(3, 1) = c_00_10;  m(1, 3) = std::conj(c_00_10);
    return ts_state(m);
}

namespace {

// Common shape of the equal-drive solutions: `c` is 1 + (3/2) f12 (or its
// x -> 0 limit 2), `norm` the corresponding normalization, and `p00_entry`
// the |0,0> population.
Matrix4c equal_g_matrix(double g, double c, double norm, double p00_entry) {
    const double u = g * g;
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 4.0 * u * u;
    m(0, 1) = kI * 2.0 * kSqrt2 * u * g;
    m(1, 0) = std::conj(m(0, 1));
    m(0, 2) = -c * u;
    m(2, 0) = m(0, 2);
    m(1, 1) = 4.0 * u * u + 2.0 * u;
    m(1, 2) = kI * kSqrt2 / 2.0 * g * (c + 4.0 * u);
    m(2, 1) = std::conj(m(1, 2));
    m(2, 2) = 4.0 * u * u + 2.0 * u + 0.25 * c * c;
    m(3, 3) = p00_entry;
    return m / norm;
}

} // namespace

DensityMatrix4 steady_equal_g(const ModelParams& p, double p00) {
    p.validate();
    if (p.g1bar != p.g2bar)
        throw ConfigurationError("steady_equal_g requires g1bar = g2bar");
    if (p.delta_lbar != 0.0)
        throw ConfigurationError("steady_equal_g requires resonance (delta_lbar = 0)");
    if (p.x > 0.0)
        return steady_equal_g_from_f(p.g1bar, coupling_f(p.x, p.dperp_ratio));
    if (p00 < 0.0 || p00 > 1.0)
        throw ConfigurationError("steady_equal_g: p00 must lie in [0, 1]");
    const EqualGCoefficients c = equal_g_coefficients(p.g1bar, 2.0 / 3.0, p00);
    Matrix4c base = equal_g_matrix(p.g1bar, 2.0, c.kappa3, 0.0);
    Matrix4c m = (1.0 - p00) * base;
    m(3, 3) += p00;
    return ts_state(m);
}

DensityMatrix4 steady_equal_g_from_f(double g1bar, double f12) {
    const EqualGCoefficients c = equal_g_coefficients(g1bar, f12, 0.0);
    const double cc = 1.0 + 1.5 * f12;
    const double u = g1bar * g1bar;
    return ts_state(equal_g_matrix(g1bar, cc, c.kappa2, 4.0 * u * u));
}

DensityMatrix4 limit_xstate_g2zero(double f12) {
    const double y = 16.0 + 9.0 * f12 * f12;
    const double p = 2.25 * f12 * f12 / y;
    const double q = 0.5 - p;
    const double c = -3.0 * f12 / y;
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = p; m(1, 1) = q; m(2, 2) = p; m(3, 3) = q;
    m(0, 3) = c; m(3, 0) = c;
    m(1, 2) = c; m(2, 1) = c;
    return DensityMatrix4(m, Basis::Product);
}

DensityMatrix4 limit_far_apart_g2zero(double g1bar) {
    const double u = g1bar * g1bar;
    const double d = 1.0 + 8.0 * u;
    Matrix4c m = Matrix4c::Zero();
    m(1, 1) = 4.0 * u / d;
    m(1, 3) = kI * 2.0 * g1bar / d;
    m(3, 1) = std::conj(m(1, 3));
    m(3, 3) = (1.0 + 4.0 * u) / d;
    return DensityMatrix4(m, Basis::Product);
}

WeakFieldState weak_field_g2zero(double g1bar, double f12) {
    const double g = g1bar;
    const double u = g * g;
    const double c = 1.5 * f12;
    const double dm = 1.0 - c;
    const double dp = 1.0 + c;
    Matrix4c m = Matrix4c::Zero();
    m(0, 2) = 3.0 * f12 * u / (dm * dp);
    m(2, 0) = m(0, 2);
    m(1, 1) = 2.0 * u / (dp * dp);
    m(1, 2) = kI * kSqrt2 * g / dp;
    m(2, 1) = std::conj(m(1, 2));
    m(1, 3) = 2.0 * u / (dm * dp);
    m(3, 1) = m(1, 3);
    m(2, 2) = 1.0 - 2.0 * u / (dp * dp) - 2.0 * u / (dm * dm);
    m(2, 3) = -kI * kSqrt2 * g / dm;
    m(3, 2) = std::conj(m(2, 3));
    m(3, 3) = 2.0 * u / (dm * dm);
    const double bound = 0.25 * dm * dm * dp * dp / (1.0 + c * c);
    return WeakFieldState{ts_state(m, kApproximantFloor), u <= bound};
}

WeakFieldState weak_field_equal_g(double g1bar, double f12) {
    const double g = g1bar;
    const double u = g * g;
    const double c2 = 2.0 + 3.0 * f12;
    Matrix4c m = Matrix4c::Zero();
    m(0, 2) = -8.0 * u / c2;
    m(2, 0) = m(0, 2);
    m(1, 1) = 32.0 * u / (c2 * c2);
    m(1, 2) = kI * 4.0 * kSqrt2 * g / c2;
    m(2, 1) = std::conj(m(1, 2));
    m(2, 2) = 1.0 - 32.0 * u / (c2 * c2);
    const double bound = c2 * c2 / 32.0;
    return WeakFieldState{ts_state(m, kApproximantFloor), u <= bound};
}

AsymptoticScalars asymptotic_scalars_g2zero(double f12) {
    const double f2 = f12 * f12;
    const double y = 16.0 + 9.0 * f2;
    const double sq = std::sqrt(y);
    auto xlog2 = [](double w, double arg) {
        return w > 0.0 && arg > 0.0 ? w * std::log2(arg) : 0.0;
    };
    AsymptoticScalars out;
    out.qmi = xlog2((sq - 4.0) / (2.0 * sq), sq - 4.0) -
              xlog2(4.5 * f2 / y, 4.5 * f2) + 0.5 * std::log2(y) -
              xlog2((16.0 + 4.5 * f2) / y, 16.0 + 4.5 * f2) +
              xlog2((sq + 4.0) / (2.0 * sq), sq + 4.0) - 1.0;
    out.geo_discord_2 = 36.0 * f2 / (y * y);
    out.linear_entropy = 0.75 - 4.0 / y;
    out.weak_concurrence_coeff = 1.5 * std::abs(f12);
    return out;
}

double weak_concurrence_equal_g(double g1bar, double f12) {
    const double c2 = 2.0 + 3.0 * f12;
    const double pop10 = 32.0 * g1bar * g1bar / (c2 * c2);
    return std::max(0.0, 1.5 * std::abs(f12) * pop10);
}

} // namespace qcorr
