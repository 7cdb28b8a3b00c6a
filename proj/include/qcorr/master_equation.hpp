#pragma once

#include <optional>
#include <vector>

#include "qcorr/qubit_algebra.hpp"

namespace qcorr {

/// Dimensionless parameters of the two-atom master equation.
///
/// Rates are measured in units of the single-atom spontaneous emission
/// rate (gamma_1 = 1) and time in its inverse. `x` is the scaled
/// separation omega_A |r1 - r2| / c, `dperp_ratio` the squared fraction of
/// the dipole moment perpendicular to the interatomic axis, and
/// `delta_lbar` the laser-atom detuning (must be zero for steady-state
/// queries; time evolution accepts any value).
struct ModelParams {
    double g1bar = 0.0;
    double g2bar = 0.0;
    double x = 0.0;
    double dperp_ratio = 1.0;
    double delta_lbar = 0.0;

    void validate() const;
};

/// Collective damping profile F as a function of scaled separation and
/// dipole orientation. F(0) = 2/3 for every orientation; near x = 0 the
/// series expansion is used to avoid cancellation.
double coupling_f(double x, double dperp_ratio);

/// True when f12 lies in the range attainable by coupling_f over physical
/// (x, dperp_ratio); the closed-form evaluators accept values slightly
/// outside it, so the check is advisory.
bool f12_in_physical_range(double f12);

/// The generator acting on column-stacked density matrices in the product
/// basis, for resonant drive. Trace-annihilating by construction.
struct Liouvillian {
    Matrix16c matrix;
    ModelParams params;
};

/// Column-stacking vectorization: vec(rho)[4j + i] = rho(i, j).
Vector16c vectorize(const Matrix4c& rho);
Matrix4c unvectorize(const Vector16c& v);

Liouvillian build_liouvillian(const ModelParams& p);

/// Right-hand side d(rho)/dt at time t, including the explicit detuning
/// phases. Output is traceless and Hermitian.
Matrix4c apply_generator(const ModelParams& p, const DensityMatrix4& rho, double t);

struct TrajectorySample {
    double t;
    DensityMatrix4 state;
};

/// Classical fixed-step RK4 integration of the master equation.
///
/// Every step re-Hermitizes the state; stored samples (every `stride`
/// steps plus the final time) are trace-renormalized and positivity
/// checked. An eigenvalue below -1e-6 in a stored sample aborts with a
/// SolverError suggesting a smaller dt.
std::vector<TrajectorySample> time_evolve(const ModelParams& p,
                                          const DensityMatrix4& rho0,
                                          double t_final, double dt,
                                          std::size_t stride = 1);

struct SteadyStateSolution {
    DensityMatrix4 rho;       // product basis
    int zero_multiplicity;    // 1, or 2 when x = 0 and g1bar = g2bar
    double residual;          // max |A vec(rho)|
    double spectral_gap;      // smallest nonzero |Re lambda| of the generator
};

/// Steady state of the generator.
///
/// The nullspace is generically one-dimensional and obtained by replacing
/// one row of the generator with the trace functional and solving the
/// square system. When two singular values vanish (x = 0 with equal
/// drives) the antisymmetric population is conserved and `p00` selects the
/// member of the steady-state family; omitting it is a ConfigurationError.
SteadyStateSolution steady_state(const ModelParams& p,
                                 std::optional<double> p00 = std::nullopt);

struct SpectralInfo {
    int zero_multiplicity;
    double gap;
};

/// Nullspace multiplicity (via singular values) and decay gap (via the
/// full spectrum) of the generator. Verifies that every nonzero
/// eigenvalue has negative real part.
SpectralInfo spectral_gap(const ModelParams& p);

} // namespace qcorr
