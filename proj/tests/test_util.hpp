#pragma once

#include <random>

#include "qcorr/qubit_algebra.hpp"

namespace qcorr::test {

inline DensityMatrix4 ginibre_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Matrix4c g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g(i, j) = cxd(gauss(rng), gauss(rng));
    Matrix4c rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + Matrix4c(rho.adjoint()));
    return DensityMatrix4(rho, Basis::Product);
}

inline Matrix2c ginibre_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Matrix2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            g(i, j) = cxd(gauss(rng), gauss(rng));
    Matrix2c rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

inline Vector4c random_ket(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector4c v;
    for (int i = 0; i < 4; ++i)
        v(i) = cxd(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

// |+-> + |-+> Bell pair as a product-basis density matrix
inline DensityMatrix4 bell_psi_plus() {
    Matrix4c m = Matrix4c::Zero();
    m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = 0.5;
    return DensityMatrix4(m, Basis::Product);
}

inline double max_abs_diff(const Matrix4c& a, const Matrix4c& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace qcorr::test
