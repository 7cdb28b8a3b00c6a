#include <doctest.h>

#include <random>

#include "qcorr/analytic_oracles.hpp"
#include "qcorr/qubit_algebra.hpp"
#include "test_util.hpp"

using namespace qcorr;
using test::ginibre_qubit;
using test::ginibre_state;
using test::max_abs_diff;

TEST_CASE("tensor_product basic identities") {
    CHECK(max_abs_diff(tensor_product(identity2(), identity2()),
                       Matrix4c::Identity()) == 0.0);

    Matrix4c zz = Matrix4c::Zero();
    zz(0, 0) = 1; zz(1, 1) = -1; zz(2, 2) = -1; zz(3, 3) = 1;
    CHECK(max_abs_diff(tensor_product(pauli_z(), pauli_z()), zz) == 0.0);

    // sigma_y (x) sigma_y expanded by hand: antidiagonal (-1, 1, 1, -1)
    Matrix4c yy = Matrix4c::Zero();
    yy(0, 3) = -1; yy(1, 2) = 1; yy(2, 1) = 1; yy(3, 0) = -1;
    CHECK(max_abs_diff(tensor_product(pauli_y(), pauli_y()), yy) == 0.0);
    CHECK(max_abs_diff(spin_flip_matrix(), yy) == 0.0);
}

TEST_CASE("partial_trace factorizes product states exactly") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        const Matrix2c a = ginibre_qubit(rng);
        const Matrix2c b = ginibre_qubit(rng);
        Matrix4c prod = Matrix4c::Zero();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                prod.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        prod = 0.5 * (prod + Matrix4c(prod.adjoint()));
        const DensityMatrix4 rho(prod, Basis::Product);
        CHECK((partial_trace(rho, 1) - a).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((partial_trace(rho, 2) - b).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("partial_trace of maximally entangled and X states") {
    const Matrix2c half = 0.5 * Matrix2c::Identity();
    CHECK((partial_trace(test::bell_psi_plus(), 2) - half).cwiseAbs().maxCoeff() < 1e-15);

    const DensityMatrix4 x = limit_xstate_g2zero(2.0 / 3.0);
    CHECK((partial_trace(x, 1) - half).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial_trace rejects the coupled basis") {
    const DensityMatrix4 rho(0.25 * Matrix4c::Identity(), Basis::TripletSinglet);
    CHECK_THROWS_AS(partial_trace(rho, 1), BasisError);
    const DensityMatrix4 ok(0.25 * Matrix4c::Identity(), Basis::Product);
    CHECK_THROWS_AS(partial_trace(ok, 3), DimensionError);
}

TEST_CASE("change_basis maps the symmetric state onto the central block") {
    Matrix4c sym = Matrix4c::Zero();
    sym(1, 1) = 1.0;  // |1,0><1,0| in the coupled basis
    const DensityMatrix4 ts(sym, Basis::TripletSinglet);
    const Matrix4c prod = change_basis(ts, Basis::Product).matrix();
    Matrix4c expected = Matrix4c::Zero();
    expected(1, 1) = expected(1, 2) = expected(2, 1) = expected(2, 2) = 0.5;
    CHECK(max_abs_diff(prod, expected) < 1e-15);
}

TEST_CASE("change_basis fixes the maximally mixed state") {
    const DensityMatrix4 rho(0.25 * Matrix4c::Identity(), Basis::Product);
    CHECK(max_abs_diff(change_basis(rho, Basis::TripletSinglet).matrix(),
                       0.25 * Matrix4c::Identity()) < 1e-15);
}

TEST_CASE("undriven equal-drive state is the two-atom ground state") {
    const DensityMatrix4 ts = weak_field_equal_g(0.0, 0.3).rho;
    const Matrix4c prod = change_basis(ts, Basis::Product).matrix();
    Matrix4c expected = Matrix4c::Zero();
    expected(3, 3) = 1.0;
    CHECK(max_abs_diff(prod, expected) < 1e-15);
}

TEST_CASE("change_basis is involutive and spectrum preserving") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 1000; ++k) {
        const DensityMatrix4 rho = ginibre_state(rng);
        const DensityMatrix4 there = change_basis(rho, Basis::TripletSinglet);
        const DensityMatrix4 back = change_basis(there, Basis::Product);
        CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-14);
        const EigenSystem e1 = hermitian_eigen(rho.matrix());
        const EigenSystem e2 = hermitian_eigen(there.matrix());
        CHECK((e1.values - e2.values).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("reorder_qubits swaps atom labels") {
    // equal drives put the atoms in equivalent positions: exchange-symmetric
    const DensityMatrix4 sym =
        change_basis(steady_equal_g_from_f(0.7, 0.4), Basis::Product);
    CHECK(max_abs_diff(reorder_qubits(sym).matrix(), sym.matrix()) < 1e-15);
    const DensityMatrix4 singlet(singlet_projector(), Basis::Product);
    CHECK(max_abs_diff(reorder_qubits(singlet).matrix(), singlet.matrix()) < 1e-15);

    Matrix4c pm = Matrix4c::Zero();
    pm(1, 1) = 1.0;  // |+-><+-|
    Matrix4c mp = Matrix4c::Zero();
    mp(2, 2) = 1.0;  // |-+><-+|
    CHECK(max_abs_diff(reorder_qubits(DensityMatrix4(pm, Basis::Product)).matrix(), mp) ==
          0.0);

    // the far-apart coherence moves from the (2,4) to the (3,4) slot
    const DensityMatrix4 far = limit_far_apart_g2zero(0.8);
    const Matrix4c r = reorder_qubits(far).matrix();
    CHECK(std::abs(far(1, 3)) > 1e-3);
    CHECK(r(2, 3) == far(1, 3));
    CHECK(std::abs(r(1, 3)) == 0.0);
}

TEST_CASE("reorder_qubits involution and Bloch transposition") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 200; ++k) {
        const DensityMatrix4 rho = ginibre_state(rng);
        const DensityMatrix4 swapped = reorder_qubits(rho);
        CHECK(max_abs_diff(reorder_qubits(swapped).matrix(), rho.matrix()) == 0.0);
        const BlochDecomposition b = bloch_decompose(rho);
        const BlochDecomposition bs = bloch_decompose(swapped);
        CHECK((bs.x - b.y).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((bs.y - b.x).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((bs.t - b.t.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("bloch_decompose on reference states") {
    const DensityMatrix4 mixed(0.25 * Matrix4c::Identity(), Basis::Product);
    const BlochDecomposition bm = bloch_decompose(mixed);
    CHECK(bm.x.norm() == 0.0);
    CHECK(bm.y.norm() == 0.0);
    CHECK(bm.t.norm() == 0.0);

    // singlet: no local polarization, T = -identity (all nine traces)
    const DensityMatrix4 singlet(singlet_projector(), Basis::Product);
    const BlochDecomposition bs = bloch_decompose(singlet);
    CHECK(bs.x.norm() < 1e-14);
    CHECK(bs.y.norm() < 1e-14);
    CHECK((bs.t + Matrix3r::Identity()).cwiseAbs().maxCoeff() < 1e-14);

    Matrix4c pp = Matrix4c::Zero();
    pp(0, 0) = 1.0;
    const BlochDecomposition bp = bloch_decompose(DensityMatrix4(pp, Basis::Product));
    CHECK((bp.x - Vector3r(0, 0, 1)).norm() < 1e-14);
    CHECK((bp.y - Vector3r(0, 0, 1)).norm() < 1e-14);
    Matrix3r tz = Matrix3r::Zero();
    tz(2, 2) = 1.0;
    CHECK((bp.t - tz).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("bloch_reconstruct inverts the decomposition") {
    BlochDecomposition flat{Vector3r::Zero(), Vector3r::Zero(), Matrix3r::Zero()};
    CHECK(max_abs_diff(bloch_reconstruct(flat).matrix(), 0.25 * Matrix4c::Identity()) <
          1e-15);

    BlochDecomposition sing{Vector3r::Zero(), Vector3r::Zero(), -Matrix3r::Identity()};
    CHECK(max_abs_diff(bloch_reconstruct(sing).matrix(), singlet_projector()) < 1e-15);

    std::mt19937_64 rng(14);
    for (int k = 0; k < 200; ++k) {
        const DensityMatrix4 rho = ginibre_state(rng);
        const DensityMatrix4 back = bloch_reconstruct(bloch_decompose(rho));
        CHECK(max_abs_diff(back.matrix(), rho.matrix()) < 1e-13);
    }

    BlochDecomposition bad{Vector3r(2.0, 0, 0), Vector3r::Zero(), Matrix3r::Zero()};
    CHECK_THROWS_AS(bloch_reconstruct(bad), NonPhysicalError);
}

TEST_CASE("hermitian_eigen reference spectra") {
    const EigenSystem ez = hermitian_eigen(pauli_z());
    CHECK(ez.values(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ez.values(1) == doctest::Approx(-1.0).epsilon(1e-14));

    // X-form state: two 2x2 blocks give eigenvalues 1/4 +- 1/sqrt(20), twice each
    const DensityMatrix4 x = limit_xstate_g2zero(2.0 / 3.0);
    const EigenSystem ex = hermitian_eigen(x.matrix());
    const double hi = 0.25 + 1.0 / std::sqrt(20.0);
    const double lo = 0.25 - 1.0 / std::sqrt(20.0);
    CHECK(std::abs(ex.values(0) - hi) < 1e-14);
    CHECK(std::abs(ex.values(1) - hi) < 1e-14);
    CHECK(std::abs(ex.values(2) - lo) < 1e-14);
    CHECK(std::abs(ex.values(3) - lo) < 1e-14);

    const EigenSystem em = hermitian_eigen(Eigen::MatrixXcd::Identity(4, 4) * 0.25);
    CHECK((em.values.array() - 0.25).abs().maxCoeff() < 1e-15);
}

TEST_CASE("hermitian_eigen residuals and input validation") {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd g(16, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            g(i, j) = cxd(gauss(rng), gauss(rng));
    const Eigen::MatrixXcd h = g + g.adjoint();
    const EigenSystem es = hermitian_eigen(h);
    const double scale = h.cwiseAbs().maxCoeff();
    for (int k = 0; k < 16; ++k) {
        const Eigen::VectorXcd r = h * es.vectors.col(k) - es.values(k) * es.vectors.col(k);
        CHECK(r.cwiseAbs().maxCoeff() < 1e-10 * scale);
    }
    CHECK((es.vectors.adjoint() * es.vectors - Eigen::MatrixXcd::Identity(16, 16))
              .cwiseAbs()
              .maxCoeff() < 1e-10);

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigen(bad), HermiticityError);
    CHECK_THROWS_AS(hermitian_eigen(Eigen::MatrixXcd::Identity(5, 5)), DimensionError);
}

TEST_CASE("psd_sqrt on diagonal and idempotent inputs") {
    CHECK(max_abs_diff(psd_sqrt(Matrix4c::Identity()), Matrix4c::Identity()) < 1e-14);

    Matrix4c d = Matrix4c::Zero();
    d(0, 0) = 4.0; d(1, 1) = 1.0;
    Matrix4c ds = Matrix4c::Zero();
    ds(0, 0) = 2.0; ds(1, 1) = 1.0;
    CHECK(max_abs_diff(psd_sqrt(d), ds) < 1e-14);

    CHECK(max_abs_diff(psd_sqrt(singlet_projector()), singlet_projector()) < 1e-14);

    Matrix4c neg = Matrix4c::Identity();
    neg(3, 3) = -1e-4;
    CHECK_THROWS_AS(psd_sqrt(neg), NotPsdError);
}

TEST_CASE("psd_sqrt squares back to the input") {
    std::mt19937_64 rng(16);
    for (int k = 0; k < 100; ++k) {
        const Matrix4c h = 3.7 * ginibre_state(rng).matrix();
        const Matrix4c s = psd_sqrt(h);
        CHECK(max_abs_diff(s * s, h) < 1e-9);
    }
}

TEST_CASE("density matrix invariants are enforced") {
    Matrix4c nonherm = 0.25 * Matrix4c::Identity();
    nonherm(0, 1) = 1e-3;
    CHECK_THROWS_AS(DensityMatrix4(nonherm, Basis::Product), HermiticityError);

    CHECK_THROWS_AS(DensityMatrix4(0.5 * Matrix4c::Identity(), Basis::Product),
                    NonPhysicalError);

    Matrix4c neg = Matrix4c::Zero();
    neg(0, 0) = 1.001;
    neg(1, 1) = -0.001;
    CHECK_THROWS_AS(DensityMatrix4(neg, Basis::Product), NonPhysicalError);
}

TEST_CASE("trace_distance separates orthogonal pure states") {
    Matrix4c a = Matrix4c::Zero();
    a(0, 0) = 1.0;
    Matrix4c b = Matrix4c::Zero();
    b(3, 3) = 1.0;
    CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(trace_distance(a, a) < 1e-15);
}
