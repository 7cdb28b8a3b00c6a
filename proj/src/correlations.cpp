#include "qcorr/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace qcorr {

namespace {

constexpr double kEigenvalueCutoff = 1e-14;

double entropy_from_eigenvalues(const Eigen::VectorXd& w) {
    double s = 0.0;
    for (int i = 0; i < w.size(); ++i)
        if (w(i) > kEigenvalueCutoff)
            s -= w(i) * std::log2(w(i));
    return s;
}

// Closed-form objective for one projector pair. Precomputes the state's
// Bloch data once; each evaluation is a handful of flops plus four logs.
class MeasurementObjective {
public:
    explicit MeasurementObjective(const BlochDecomposition& b) : b_(b) {}

    double operator()(double a, double phi) const {
        a = std::clamp(a, 0.0, 1.0);
        const double bb = std::sqrt(std::max(a * (1.0 - a), 0.0));
        return eval_gamma(Vector3r(2.0 * bb * std::cos(phi), 2.0 * bb * std::sin(phi),
                                   2.0 * a - 1.0));
    }

    // Measurement axis given directly as a unit Bloch vector.
    double eval_gamma(const Vector3r& gamma) const {
        ++evals_;
        const double ydotg = b_.y.dot(gamma);
        const Vector3r tg = b_.t * gamma;
        double out = 0.0;
        for (double s : {1.0, -1.0}) {
            const double mu = 1.0 + s * ydotg;
            if (mu <= kEigenvalueCutoff)
                continue;  // vanishing outcome probability, no contribution
            const double nn = (b_.x + s * tg).norm();
            for (double t : {1.0, -1.0}) {
                const double num = std::max(mu + t * nn, 0.0);
                if (num <= kEigenvalueCutoff)
                    continue;
                out -= num / 4.0 * std::log2(num / (2.0 * mu));
            }
        }
        return out;
    }

    std::int64_t evals() const { return evals_; }

private:
    const BlochDecomposition& b_;
    mutable std::int64_t evals_ = 0;
};

struct MinPoint {
    double value;
    double a;
    double phi;
};

// Derivative-free simplex minimization of a generic 2-d function.
template <typename Fn>
std::pair<double, std::array<double, 2>> nelder_mead_2d(Fn&& f, double x0, double y0,
                                                        double scale_x, double scale_y) {
    std::array<std::array<double, 2>, 3> pts = {{
        {x0, y0}, {x0 + scale_x, y0}, {x0, y0 + scale_y}}};
    std::array<double, 3> vals{};
    for (int i = 0; i < 3; ++i)
        vals[i] = f(pts[i][0], pts[i][1]);

    auto order = [&] {
        std::array<int, 3> idx = {0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int l, int r) { return vals[l] < vals[r]; });
        std::array<std::array<double, 2>, 3> p2;
        std::array<double, 3> v2;
        for (int i = 0; i < 3; ++i) {
            p2[i] = pts[idx[i]];
            v2[i] = vals[idx[i]];
        }
        pts = p2;
        vals = v2;
    };

    for (int iter = 0; iter < 400; ++iter) {
        order();
        if (vals[2] - vals[0] < 1e-10)
            break;
        const double cx = 0.5 * (pts[0][0] + pts[1][0]);
        const double cy = 0.5 * (pts[0][1] + pts[1][1]);
        auto try_point = [&](double coef) {
            return std::array<double, 2>{cx + coef * (cx - pts[2][0]),
                                         cy + coef * (cy - pts[2][1])};
        };
        const auto refl = try_point(1.0);
        const double fr = f(refl[0], refl[1]);
        if (fr < vals[0]) {
            const auto exp_ = try_point(2.0);
            const double fe = f(exp_[0], exp_[1]);
            if (fe < fr) {
                pts[2] = exp_;
                vals[2] = fe;
            } else {
                pts[2] = refl;
                vals[2] = fr;
            }
        } else if (fr < vals[1]) {
            pts[2] = refl;
            vals[2] = fr;
        } else {
            const auto con = try_point(fr < vals[2] ? 0.5 : -0.5);
            const double fc = f(con[0], con[1]);
            if (fc < std::min(fr, vals[2])) {
                pts[2] = con;
                vals[2] = fc;
            } else {
                for (int i = 1; i < 3; ++i) {
                    pts[i][0] = 0.5 * (pts[i][0] + pts[0][0]);
                    pts[i][1] = 0.5 * (pts[i][1] + pts[0][1]);
                    vals[i] = f(pts[i][0], pts[i][1]);
                }
            }
        }
    }
    order();
    return {vals[0], pts[0]};
}

// Unit Bloch vector from tangent-plane coordinates around the pole with
// sign `hemisphere`; beyond the unit disc the direction folds onto the
// equator, keeping the chart total.
Vector3r polar_chart(double u, double v, double hemisphere) {
    const double w = u * u + v * v;
    if (w >= 1.0) {
        const double inv = 1.0 / std::sqrt(w);
        return Vector3r(u * inv, v * inv, 0.0);
    }
    return Vector3r(u, v, hemisphere * std::sqrt(1.0 - w));
}

// Deterministic coarse grid over the half phase range (the pair of
// projectors is invariant under (a, phi) -> (1-a, phi+pi)), simplex
// refinement from the best well-separated cells, plus two simplex runs in
// tangent charts at the poles: basins hugging a = 0 or a = 1 are
// arbitrarily narrow in (a, phi) but of ordinary width on the sphere.
MinPoint minimize_objective(const MeasurementObjective& f) {
    constexpr int kNa = 65;
    constexpr int kNphi = 129;
    const double da = 1.0 / (kNa - 1);
    const double dphi = std::numbers::pi / (kNphi - 1);

    struct Cell {
        double value;
        int ia, ip;
    };
    std::array<Cell, 3> best;
    best.fill(Cell{std::numeric_limits<double>::infinity(), -1, -1});
    for (int ia = 0; ia < kNa; ++ia) {
        for (int ip = 0; ip < kNphi; ++ip) {
            const double v = f(ia * da, ip * dphi);
            if (v >= best[2].value)
                continue;
            const Cell cand{v, ia, ip};
            // keep the three best cells that are not grid neighbours
            int slot = -1;
            for (int k = 0; k < 3; ++k) {
                if (std::abs(best[k].ia - ia) <= 2 && std::abs(best[k].ip - ip) <= 2) {
                    slot = k;
                    break;
                }
            }
            if (slot >= 0) {
                if (v < best[slot].value)
                    best[slot] = cand;
            } else {
                best[2] = cand;
            }
            std::sort(best.begin(), best.end(),
                      [](const Cell& l, const Cell& r) { return l.value < r.value; });
        }
    }

    MinPoint out{best[0].value, best[0].ia * da, best[0].ip * dphi};
    auto in_plane = [&f](double a, double phi) { return f(a, phi); };
    for (const Cell& c : best) {
        if (c.ia < 0)
            continue;
        const auto [value, pt] = nelder_mead_2d(in_plane, c.ia * da, c.ip * dphi, da, dphi);
        if (value < out.value)
            out = MinPoint{value, std::clamp(pt[0], 0.0, 1.0), pt[1]};
    }
    for (double hemisphere : {1.0, -1.0}) {
        auto in_chart = [&f, hemisphere](double u, double v) {
            return f.eval_gamma(polar_chart(u, v, hemisphere));
        };
        const auto [value, pt] = nelder_mead_2d(in_chart, 0.0, 0.0, 0.15, 0.15);
        if (value < out.value) {
            const Vector3r gamma = polar_chart(pt[0], pt[1], hemisphere);
            const double a = std::clamp(0.5 * (1.0 + gamma.z()), 0.0, 1.0);
            const double phi = std::atan2(gamma.y(), gamma.x());
            out = MinPoint{value, a, phi};
        }
    }
    return out;
}

Matrix3r discord_k_matrix(const Vector3r& x, const Matrix3r& t) {
    return x * x.transpose() + t * t.transpose();
}

} // namespace

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    const auto n = rho.rows();
    if (rho.cols() != n)
        throw DimensionError("von_neumann_entropy: matrix must be square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw HermiticityError("von_neumann_entropy: input is not Hermitian");
    if (std::abs(rho.trace() - cxd(1.0, 0.0)) > 1e-9)
        throw NonPhysicalError("von_neumann_entropy: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw NonPhysicalError("von_neumann_entropy: input is not PSD");
    return entropy_from_eigenvalues(es.eigenvalues());
}

double mutual_information(const DensityMatrix4& rho) {
    if (rho.basis() != Basis::Product)
        throw BasisError("mutual_information requires the product basis");
    const Matrix2c r1 = partial_trace(rho, 1);
    const Matrix2c r2 = partial_trace(rho, 2);
    return von_neumann_entropy(r1) + von_neumann_entropy(r2) -
           von_neumann_entropy(rho.matrix());
}

double concurrence(const DensityMatrix4& rho) {
    const Matrix4c m = rho.basis() == Basis::Product
                           ? rho.matrix()
                           : change_basis(rho, Basis::Product).matrix();
    const Matrix4c& y = spin_flip_matrix();
    const Matrix4c flipped = y * m.conjugate() * y;
    const Matrix4c s = psd_sqrt(m);
    Matrix4c inner = s * flipped * s;
    inner = 0.5 * (inner + Matrix4c(inner.adjoint()));
    const EigenSystem es = hermitian_eigen(psd_sqrt(inner));
    const double c = es.values(0) - es.values(1) - es.values(2) - es.values(3);
    return std::clamp(c, 0.0, 1.0);
}

ConditionalState conditional_state(const BlochDecomposition& b,
                                   const ProjectorParams& proj) {
    const double a = proj.alpha_sq;
    if (a < 0.0 || a > 1.0)
        throw ConfigurationError("conditional_state: alpha_sq must lie in [0, 1]");
    const double bb = std::sqrt(std::max(a * (1.0 - a), 0.0));
    const Vector3r gamma(2.0 * bb * std::cos(proj.phi), 2.0 * bb * std::sin(proj.phi),
                         2.0 * a - 1.0);
    const double mu = 1.0 + b.y.dot(gamma);
    ConditionalState out;
    out.probability = 0.5 * mu;
    if (out.probability < 1e-14) {
        out.defined = false;
        out.state = Matrix2c::Zero();
        return out;
    }
    const Vector3r nu = b.x + b.t * gamma;
    Matrix2c s = mu * identity2() + nu(0) * pauli_x() + nu(1) * pauli_y() +
                 nu(2) * pauli_z();
    out.state = s / (2.0 * mu);
    out.defined = true;
    return out;
}

double conditional_entropy_objective(const BlochDecomposition& b,
                                     const ProjectorParams& proj) {
    return MeasurementObjective(b)(proj.alpha_sq, proj.phi);
}

ClassicalCorrelation classical_correlation(const DensityMatrix4& rho, int side) {
    if (rho.basis() != Basis::Product)
        throw BasisError("classical_correlation requires the product basis");
    if (side != 1 && side != 2)
        throw ConfigurationError("classical_correlation: side must be 1 or 2");
    const DensityMatrix4 working = side == 1 ? reorder_qubits(rho) : rho;
    const BlochDecomposition b = bloch_decompose(working);
    const double s_unmeasured = von_neumann_entropy(partial_trace(working, 1));
    MeasurementObjective f(b);
    const MinPoint m = minimize_objective(f);
    ClassicalCorrelation out;
    out.value = s_unmeasured - m.value;
    // fold the refined point back into the canonical half range
    double phi = std::fmod(m.phi, 2.0 * std::numbers::pi);
    if (phi < 0.0)
        phi += 2.0 * std::numbers::pi;
    out.argmin = ProjectorParams{m.a, phi};
    out.evals = f.evals();
    return out;
}

double quantum_discord(const DensityMatrix4& rho, int side) {
    const double d = mutual_information(rho) - classical_correlation(rho, side).value;
    return d < 0.0 && d > -1e-9 ? 0.0 : d;
}

double geometric_discord(const DensityMatrix4& rho, int side) {
    if (side != 1 && side != 2)
        throw ConfigurationError("geometric_discord: side must be 1 or 2");
    const DensityMatrix4 working = side == 2 ? reorder_qubits(rho) : rho;
    const BlochDecomposition b = bloch_decompose(working);
    const Matrix3r k = discord_k_matrix(b.x, b.t);
    Eigen::SelfAdjointEigenSolver<Matrix3r> es(k, Eigen::EigenvaluesOnly);
    const double d =
        0.25 * (b.x.squaredNorm() + b.t.squaredNorm() - es.eigenvalues().maxCoeff());
    return std::max(d, 0.0);
}

double linear_entropy(const DensityMatrix4& rho) {
    const Matrix4c& m = rho.matrix();
    return 1.0 - (m * m).trace().real();
}

CorrelationReport full_report(const DensityMatrix4& rho) {
    if (rho.basis() != Basis::Product)
        throw BasisError("full_report requires the product basis");
    CorrelationReport r;
    r.entropy_a = von_neumann_entropy(partial_trace(rho, 1));
    r.entropy_b = von_neumann_entropy(partial_trace(rho, 2));
    r.entropy_ab = von_neumann_entropy(rho.matrix());
    r.qmi = r.entropy_a + r.entropy_b - r.entropy_ab;
    const ClassicalCorrelation c1 = classical_correlation(rho, 1);
    const ClassicalCorrelation c2 = classical_correlation(rho, 2);
    r.ccl_1 = c1.value;
    r.ccl_2 = c2.value;
    r.argmin_1 = c1.argmin;
    r.argmin_2 = c2.argmin;
    r.optimizer_evals = c1.evals + c2.evals;
    auto clamp_discord = [](double d) { return d < 0.0 && d > -1e-9 ? 0.0 : d; };
    r.discord_1 = clamp_discord(r.qmi - r.ccl_1);
    r.discord_2 = clamp_discord(r.qmi - r.ccl_2);
    r.geo_discord_1 = geometric_discord(rho, 1);
    r.geo_discord_2 = geometric_discord(rho, 2);
    r.concurrence = concurrence(rho);
    r.linear_entropy = linear_entropy(rho);
    return r;
}

} // namespace qcorr
