#pragma once

#include <cstdint>

#include "qcorr/qubit_algebra.hpp"

namespace qcorr {

/// A complete pair of rank-one projectors on one qubit, parameterized by
/// the excited-state weight a = |alpha|^2 and the coherence phase.
struct ProjectorParams {
    double alpha_sq = 0.0;
    double phi = 0.0;
};

/// Post-measurement state of atom 1 given the projector outcome on atom 2.
/// `defined` is false when the outcome probability is below 1e-14; the
/// caller counts such branches as zero entropy.
struct ConditionalState {
    double probability = 0.0;
    Matrix2c state;
    bool defined = false;
};

/// -sum lambda log2 lambda, eigenvalues below 1e-14 treated as exact zeros.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// S(rho_1) + S(rho_2) - S(rho_12), in bits. Product basis.
double mutual_information(const DensityMatrix4& rho);

/// Wootters concurrence, computed through the Hermitian reformulation
/// R = sqrt(sqrt(rho) rho~ sqrt(rho)) with rho~ the spin-flipped complex
/// conjugate. Accepts the product basis or any orthogonally related one.
double concurrence(const DensityMatrix4& rho);

ConditionalState conditional_state(const BlochDecomposition& b,
                                   const ProjectorParams& proj);

/// Average post-measurement entropy p_psi S(rho_psi) + p_phi S(rho_phi)
/// for the projector pair determined by `proj`, in closed form.
double conditional_entropy_objective(const BlochDecomposition& b,
                                     const ProjectorParams& proj);

struct ClassicalCorrelation {
    double value = 0.0;
    ProjectorParams argmin;
    std::int64_t evals = 0;
};

/// Entropy reduction of the unmeasured atom minimized over projective
/// measurements on atom `side`. Deterministic 65 x 129 grid over
/// (a, phi) in [0,1] x [0,pi] (the projector pair is invariant under
/// (a, phi) -> (1-a, phi+pi)), refined by Nelder-Mead from the best
/// grid cells until the improvement drops below 1e-10.
ClassicalCorrelation classical_correlation(const DensityMatrix4& rho, int side);

/// Mutual information minus the side's classical correlation; values in
/// [-1e-9, 0) are clamped to zero.
double quantum_discord(const DensityMatrix4& rho, int side);

/// Hilbert-Schmidt distance to the nearest zero-discord state:
/// (1/4)(|x|^2 + |T|_F^2 - k_max), k_max the top eigenvalue of
/// x x^T + T T^T. Side 2 is evaluated after reordering the qubits.
double geometric_discord(const DensityMatrix4& rho, int side);

/// 1 - Tr(rho^2), in [0, 3/4].
double linear_entropy(const DensityMatrix4& rho);

/// Every correlation measure of one state, with optimizer diagnostics.
struct CorrelationReport {
    double concurrence = 0.0;
    double qmi = 0.0;
    double entropy_a = 0.0;
    double entropy_b = 0.0;
    double entropy_ab = 0.0;
    double ccl_1 = 0.0;
    double ccl_2 = 0.0;
    double discord_1 = 0.0;
    double discord_2 = 0.0;
    double geo_discord_1 = 0.0;
    double geo_discord_2 = 0.0;
    double linear_entropy = 0.0;
    ProjectorParams argmin_1;
    ProjectorParams argmin_2;
    std::int64_t optimizer_evals = 0;
};

CorrelationReport full_report(const DensityMatrix4& rho);

} // namespace qcorr
