#include "qcorr/master_equation.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcorr {

namespace {

constexpr cxd kI{0.0, 1.0};

// Singular values below this count toward the nullspace dimension.
constexpr double kNullspaceTol = 1e-10;
constexpr double kResidualTol = 1e-10;

Matrix16c kron44(const Matrix4c& a, const Matrix4c& b) {
    Matrix16c out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

struct AtomOperators {
    Matrix4c sp1, sm1, sp2, sm2;
};

const AtomOperators& atom_ops() {
    static const AtomOperators ops = {
        tensor_product(sigma_plus(), identity2()),
        tensor_product(sigma_minus(), identity2()),
        tensor_product(identity2(), sigma_plus()),
        tensor_product(identity2(), sigma_minus()),
    };
    return ops;
}

// vec(A rho B) = (B^T (x) A) vec(rho) under column stacking.
Matrix16c left_right_super(const Matrix4c& a, const Matrix4c& b) {
    return kron44(b.transpose(), a);
}

Matrix16c commutator_super(const Matrix4c& h) {
    static const Matrix4c id = Matrix4c::Identity();
    return -kI * (left_right_super(h, id) - left_right_super(id, h));
}

// L rho M - 1/2 {M L, rho}, vectorized. Single-atom dissipators use
// M = L^dagger; the collective term pairs lowering and raising operators
// of different atoms.
Matrix16c jump_super(const Matrix4c& l, const Matrix4c& m) {
    static const Matrix4c id = Matrix4c::Identity();
    const Matrix4c ml = m * l;
    return left_right_super(l, m) - 0.5 * left_right_super(ml, id) -
           0.5 * left_right_super(id, ml);
}

Matrix4c drive_hamiltonian(const ModelParams& p, double t) {
    const auto& ops = atom_ops();
    const cxd down = std::exp(-kI * p.delta_lbar * t);
    const cxd up = std::conj(down);
    return -(p.g1bar * (down * ops.sp1 + up * ops.sm1) +
             p.g2bar * (down * ops.sp2 + up * ops.sm2));
}

Matrix4c dissipator(const ModelParams& p, const Matrix4c& rho) {
    const auto& ops = atom_ops();
    auto lindblad = [&](const Matrix4c& l, const Matrix4c& m) -> Matrix4c {
        const Matrix4c ml = m * l;
        return l * rho * m - 0.5 * (ml * rho + rho * ml);
    };
    Matrix4c out = lindblad(ops.sm1, ops.sp1) + lindblad(ops.sm2, ops.sp2);
    const double g3 = 1.5 * coupling_f(p.x, p.dperp_ratio);
    out += g3 * (lindblad(ops.sm1, ops.sp2) + lindblad(ops.sm2, ops.sp1));
    return out;
}

struct Spectrum {
    int zero_multiplicity;
    double gap;
    Eigen::VectorXd singular_values;  // ascending
    Eigen::MatrixXcd nullspace_candidates;  // eigenvectors of A^H A, ascending
};

Spectrum analyze(const Matrix16c& a) {
    Spectrum s;
    const Eigen::MatrixXcd ad_a = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ad_a);
    if (es.info() != Eigen::Success)
        throw SolverError("spectral analysis: A^H A eigensolver failed");
    s.nullspace_candidates = es.eigenvectors();
    // The raw eigenvalues of A^H A carry an absolute error ~eps*|A|^2,
    // flooring sqrt at ~1e-7; the norm |A v| evaluated on the (accurate)
    // eigenvectors resolves genuinely-zero singular values to ~1e-15.
    s.singular_values.resize(16);
    for (int i = 0; i < 16; ++i)
        s.singular_values(i) = (a * Vector16c(s.nullspace_candidates.col(i))).norm();
    s.zero_multiplicity = 0;
    for (int i = 0; i < s.singular_values.size(); ++i)
        if (s.singular_values(i) < kNullspaceTol)
            ++s.zero_multiplicity;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(a, /*computeEigenvectors=*/false);
    if (ces.info() != Eigen::Success)
        throw SolverError("spectral analysis: eigensolver failed");
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 16; ++i) {
        const cxd lam = ces.eigenvalues()(i);
        if (std::abs(lam) <= 1e-8)
            continue;
        if (lam.real() > 1e-8)
            throw SolverError("generator has a nonzero eigenvalue with positive real part");
        gap = std::min(gap, std::abs(lam.real()));
    }
    s.gap = gap;
    return s;
}

// Trace functional as a row on column-stacked matrices.
Eigen::Matrix<cxd, 1, 16> trace_row() {
    Eigen::Matrix<cxd, 1, 16> r = Eigen::Matrix<cxd, 1, 16>::Zero();
    for (int d = 0; d < 4; ++d)
        r(5 * d) = 1.0;
    return r;
}

Matrix4c normalized_hermitian(const Matrix4c& m) {
    Matrix4c out = 0.5 * (m + Matrix4c(m.adjoint()));
    out /= out.trace().real();
    return out;
}

Matrix4c unique_steady_state(const Matrix16c& a) {
    // Replace one diagonal-entry row with the trace functional; fall back
    // across the diagonal rows if the replaced system is ill-conditioned.
    const int rows[4] = {15, 0, 5, 10};
    double best_residual = std::numeric_limits<double>::infinity();
    Matrix4c best;
    for (int row : rows) {
        Matrix16c b = a;
        b.row(row) = trace_row();
        Vector16c rhs = Vector16c::Zero();
        rhs(row) = 1.0;
        Eigen::PartialPivLU<Matrix16c> lu(b);
        const Vector16c v = lu.solve(rhs);
        if (!v.allFinite())
            continue;
        const Matrix4c rho = normalized_hermitian(unvectorize(v));
        const double res = (a * vectorize(rho)).cwiseAbs().maxCoeff();
        if (res < best_residual) {
            best_residual = res;
            best = rho;
        }
        if (res <= kResidualTol)
            break;
    }
    if (!(best_residual < std::numeric_limits<double>::infinity()))
        throw SolverError("steady_state: all trace-row solves failed");
    return best;
}

// Degenerate nullspace (x = 0, equal drives): the antisymmetric population
// is conserved. Pick the nullspace member with unit trace and zero singlet
// population, then mix in the singlet projector with weight p00.
Matrix4c degenerate_steady_state(const Spectrum& s, double p00) {
    const Vector16c v1 = s.nullspace_candidates.col(0);
    const Vector16c v2 = s.nullspace_candidates.col(1);
    const Matrix4c m1 = unvectorize(v1);
    const Matrix4c m2 = unvectorize(v2);
    const Matrix4c& proj = singlet_projector();
    Eigen::Matrix2cd coeffs;
    coeffs << m1.trace(), m2.trace(),
              (proj * m1).trace(), (proj * m2).trace();
    Eigen::Vector2cd rhs(1.0, 0.0);
    const Eigen::Vector2cd ab = coeffs.fullPivLu().solve(rhs);
    const Matrix4c base = normalized_hermitian(ab(0) * m1 + ab(1) * m2);
    return (1.0 - p00) * base + p00 * proj;
}

} // namespace

void ModelParams::validate() const {
    if (!(std::isfinite(g1bar) && std::isfinite(g2bar) && std::isfinite(x) &&
          std::isfinite(dperp_ratio) && std::isfinite(delta_lbar)))
        throw ConfigurationError("model parameters must be finite");
    if (x < 0.0)
        throw ConfigurationError("separation x must be nonnegative");
    if (dperp_ratio < 0.0 || dperp_ratio > 1.0)
        throw ConfigurationError("dperp_ratio must lie in [0, 1]");
}

double coupling_f(double x, double dperp_ratio) {
    const double a = dperp_ratio;
    if (x < 1e-4) {
        // series about x = 0; the direct form cancels catastrophically here
        const double x2 = x * x;
        return 2.0 / 3.0 - (a + 1.0) * x2 / 15.0 + (2.0 * a + 1.0) * x2 * x2 / 420.0;
    }
    const double sinc = std::sin(x) / x;
    return a * sinc + (3.0 * a - 2.0) * (std::cos(x) - sinc) / (x * x);
}

bool f12_in_physical_range(double f12) {
    return f12 >= -0.2237 - 5e-4 && f12 <= 2.0 / 3.0 + 1e-12;
}

Vector16c vectorize(const Matrix4c& rho) {
    Vector16c v;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            v(4 * j + i) = rho(i, j);
    return v;
}

Matrix4c unvectorize(const Vector16c& v) {
    Matrix4c m;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            m(i, j) = v(4 * j + i);
    return m;
}

Liouvillian build_liouvillian(const ModelParams& p) {
    p.validate();
    if (p.delta_lbar != 0.0)
        throw ConfigurationError(
            "build_liouvillian: nonzero detuning has no steady state in this "
            "picture; use apply_generator/time_evolve for dynamics");
    const auto& ops = atom_ops();
    Matrix16c a = commutator_super(drive_hamiltonian(p, 0.0));
    a += jump_super(ops.sm1, ops.sp1);
    a += jump_super(ops.sm2, ops.sp2);
    const double g3 = 1.5 * coupling_f(p.x, p.dperp_ratio);
    a += g3 * (jump_super(ops.sm1, ops.sp2) + jump_super(ops.sm2, ops.sp1));
    return Liouvillian{a, p};
}

Matrix4c apply_generator(const ModelParams& p, const DensityMatrix4& rho, double t) {
    p.validate();
    if (rho.basis() != Basis::Product)
        throw BasisError("apply_generator requires the product basis");
    const Matrix4c h = drive_hamiltonian(p, t);
    const Matrix4c& m = rho.matrix();
    return -kI * (h * m - m * h) + dissipator(p, m);
}

std::vector<TrajectorySample> time_evolve(const ModelParams& p,
                                          const DensityMatrix4& rho0,
                                          double t_final, double dt,
                                          std::size_t stride) {
    p.validate();
    if (dt <= 0.0)
        throw ConfigurationError("time_evolve: dt must be positive");
    if (t_final < 0.0)
        throw ConfigurationError("time_evolve: t_final must be nonnegative");
    if (rho0.basis() != Basis::Product)
        throw BasisError("time_evolve requires the product basis");
    if (stride == 0)
        stride = 1;

    // Superoperator split A(t) = A0 + e^{-i delta t} K+ + e^{+i delta t} K-,
    // with the dissipative part and the two drive quadratures constant.
    const auto& ops = atom_ops();
    Matrix16c a0 = jump_super(ops.sm1, ops.sp1) + jump_super(ops.sm2, ops.sp2);
    const double g3 = 1.5 * coupling_f(p.x, p.dperp_ratio);
    a0 += g3 * (jump_super(ops.sm1, ops.sp2) + jump_super(ops.sm2, ops.sp1));
    const Matrix16c k_plus =
        commutator_super(-(p.g1bar * ops.sp1 + p.g2bar * ops.sp2));
    const Matrix16c k_minus =
        commutator_super(-(p.g1bar * ops.sm1 + p.g2bar * ops.sm2));
    const bool resonant = p.delta_lbar == 0.0;
    const Matrix16c a_static = a0 + k_plus + k_minus;

    auto rhs = [&](const Vector16c& v, double t) -> Vector16c {
        if (resonant)
            return a_static * v;
        const cxd down = std::exp(-kI * p.delta_lbar * t);
        return a0 * v + down * (k_plus * v) + std::conj(down) * (k_minus * v);
    };

    auto store = [&](std::vector<TrajectorySample>& traj, double t, Vector16c v) {
        Matrix4c m = normalized_hermitian(unvectorize(v));
        try {
            traj.emplace_back(TrajectorySample{t, DensityMatrix4(m, Basis::Product, -1e-6)});
        } catch (const NonPhysicalError& e) {
            throw SolverError(std::string("time_evolve: state left the physical cone (") +
                              e.what() + "); reduce dt");
        }
    };

    Vector16c v = vectorize(rho0.matrix());
    std::vector<TrajectorySample> traj;
    store(traj, 0.0, v);

    const auto n_steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
    double t = 0.0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double h = std::min(dt, t_final - t);
        const Vector16c k1 = rhs(v, t);
        const Vector16c k2 = rhs(v + 0.5 * h * k1, t + 0.5 * h);
        const Vector16c k3 = rhs(v + 0.5 * h * k2, t + 0.5 * h);
        const Vector16c k4 = rhs(v + h * k3, t + h);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        // re-Hermitize every step; truncation drift is anti-Hermitian noise
        const Matrix4c m = unvectorize(v);
        v = vectorize(0.5 * (m + Matrix4c(m.adjoint())));
        if ((k + 1) % stride == 0 || k + 1 == n_steps)
            store(traj, t, v);
    }
    return traj;
}

SteadyStateSolution steady_state(const ModelParams& p, std::optional<double> p00) {
    const Liouvillian liou = build_liouvillian(p);
    const Spectrum spec = analyze(liou.matrix);

    Matrix4c rho;
    if (spec.zero_multiplicity <= 1) {
        rho = unique_steady_state(liou.matrix);
    } else if (spec.zero_multiplicity == 2) {
        if (!p00)
            throw ConfigurationError(
                "steady_state: x = 0 with equal drives conserves the |0,0> "
                "population; pass p00 to select the steady state");
        if (*p00 < 0.0 || *p00 > 1.0)
            throw ConfigurationError("steady_state: p00 must lie in [0, 1]");
        rho = degenerate_steady_state(spec, *p00);
    } else {
        throw SolverError("steady_state: nullspace dimension " +
                          std::to_string(spec.zero_multiplicity) + " unexpected");
    }

    const double residual = (liou.matrix * vectorize(rho)).cwiseAbs().maxCoeff();
    if (residual > kResidualTol)
        throw SolverError("steady_state: residual " + std::to_string(residual) +
                          " exceeds tolerance");
    return SteadyStateSolution{DensityMatrix4(rho, Basis::Product),
                               spec.zero_multiplicity, residual, spec.gap};
}

SpectralInfo spectral_gap(const ModelParams& p) {
    const Liouvillian liou = build_liouvillian(p);
    const Spectrum spec = analyze(liou.matrix);
    return SpectralInfo{spec.zero_multiplicity, spec.gap};
}

} // namespace qcorr
