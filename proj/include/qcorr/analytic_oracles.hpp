#pragma once

#include "qcorr/master_equation.hpp"
#include "qcorr/qubit_algebra.hpp"

namespace qcorr {

/// Polynomial coefficients entering the single-driven-atom steady state.
/// kappa is the evaluated normalization; the others depend on f12 only.
struct G2ZeroCoefficients {
    double kappa;
    double mu_plus, mu_minus;
    double nu_plus, nu_minus;
    double eta_plus, eta_minus;
};

G2ZeroCoefficients g2zero_coefficients(double g1bar, double f12);

/// Normalizations of the equal-drive steady states: kappa2 for separated
/// atoms, kappa3 for the zero-separation family parameterized by p00.
struct EqualGCoefficients {
    double kappa2;
    double kappa3;
    double p00;
};

EqualGCoefficients equal_g_coefficients(double g1bar, double f12, double p00);

/// Closed-form steady state for g2bar = 0, in the triplet-singlet basis.
DensityMatrix4 steady_g2zero(const ModelParams& p);

/// Same closed form evaluated at an explicit coupling value.
DensityMatrix4 steady_g2zero_from_f(double g1bar, double f12);

/// Closed-form steady state for g1bar = g2bar, in the triplet-singlet
/// basis. For x > 0 the kappa2 form; at x = 0 the kappa3 family mixed with
/// singlet weight p00.
DensityMatrix4 steady_equal_g(const ModelParams& p, double p00 = 0.0);

DensityMatrix4 steady_equal_g_from_f(double g1bar, double f12);

/// Strong-drive limit of the g2bar = 0 steady state: an X-matrix in the
/// product basis, parameterized by the coupling value alone.
DensityMatrix4 limit_xstate_g2zero(double f12);

/// Infinite-separation limit of the g2bar = 0 steady state (product
/// basis): the driven atom saturates, the other decays to its ground
/// state, and the doubly excited population is exactly zero.
DensityMatrix4 limit_far_apart_g2zero(double g1bar);

/// Second-order weak-drive approximant. The matrix is Hermitian with unit
/// trace but, being a truncation, only approximately PSD; `valid` reports
/// whether g1bar is inside the approximation's validity bound.
struct WeakFieldState {
    DensityMatrix4 rho;  // triplet-singlet basis
    bool valid;
};

WeakFieldState weak_field_g2zero(double g1bar, double f12);
WeakFieldState weak_field_equal_g(double g1bar, double f12);

/// Strong-drive asymptotics of the g2bar = 0 configuration: mutual
/// information and right geometric discord of the X-limit, its linear
/// entropy, and the coefficient (3/2)|f12| that multiplies the
/// |0,0> + |1,0> populations in the weak-drive concurrence.
struct AsymptoticScalars {
    double qmi;
    double geo_discord_2;
    double linear_entropy;
    double weak_concurrence_coeff;
};

AsymptoticScalars asymptotic_scalars_g2zero(double f12);

/// Weak-drive concurrence of the equal-drive steady state,
/// (3/2)|f12| <1,0|rho|1,0> with the second-order population.
///
/// The magnitude |f12| covers both signs of the coupling: for f12 < 0 the
/// positive branch comes from the |+-><-+| coherence, for f12 > 0 from the
/// |++><--| one, with the same modulus at this order (the exact
/// concurrence confirms both branches).
double weak_concurrence_equal_g(double g1bar, double f12);

} // namespace qcorr
