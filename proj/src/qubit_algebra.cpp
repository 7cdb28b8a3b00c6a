#include "qcorr/qubit_algebra.hpp"

#include <cmath>

namespace qcorr {

namespace {

constexpr cxd kI{0.0, 1.0};

Matrix4c make_coupled_basis_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    Matrix4c o = Matrix4c::Zero();
    // columns: |1,1>, |1,0>, |1,-1>, |0,0> in product coordinates
    o(0, 0) = 1.0;
    o(1, 1) = r;
    o(2, 1) = r;
    o(3, 2) = 1.0;
    o(1, 3) = r;
    o(2, 3) = -r;
    return o;
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace

const char* to_string(Basis b) {
    return b == Basis::Product ? "product" : "triplet-singlet";
}

const Matrix2c& pauli_x() {
    static const Matrix2c m = (Matrix2c() << 0, 1, 1, 0).finished();
    return m;
}

const Matrix2c& pauli_y() {
    static const Matrix2c m = (Matrix2c() << 0, -kI, kI, 0).finished();
    return m;
}

const Matrix2c& pauli_z() {
    static const Matrix2c m = (Matrix2c() << 1, 0, 0, -1).finished();
    return m;
}

const Matrix2c& identity2() {
    static const Matrix2c m = Matrix2c::Identity();
    return m;
}

const Matrix2c& sigma_plus() {
    static const Matrix2c m = (Matrix2c() << 0, 1, 0, 0).finished();
    return m;
}

const Matrix2c& sigma_minus() {
    static const Matrix2c m = (Matrix2c() << 0, 0, 1, 0).finished();
    return m;
}

const Matrix4c& coupled_basis_matrix() {
    static const Matrix4c m = make_coupled_basis_matrix();
    return m;
}

const Matrix4c& spin_flip_matrix() {
    static const Matrix4c m = tensor_product(pauli_y(), pauli_y());
    return m;
}

const Matrix4c& singlet_projector() {
    static const Matrix4c m = [] {
        Vector4c s = Vector4c::Zero();
        const double r = 1.0 / std::sqrt(2.0);
        s(1) = r;
        s(2) = -r;
        return Matrix4c(s * s.adjoint());
    }();
    return m;
}

Matrix4c tensor_product(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

DensityMatrix4::DensityMatrix4(const Matrix4c& m, Basis basis, double eigenvalue_floor)
    : m_(m), basis_(basis) {
    const double herm = hermiticity_defect(m);
    if (herm > kHermiticityTol)
        throw HermiticityError("density matrix is not Hermitian (defect " +
                               std::to_string(herm) + ")");
    const double tr = std::abs(m.trace() - cxd(1.0, 0.0));
    if (tr > kTraceTol)
        throw NonPhysicalError("density matrix trace differs from 1 by " +
                               std::to_string(tr));
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < eigenvalue_floor)
        throw NonPhysicalError("density matrix has eigenvalue " + std::to_string(lo) +
                               " below the floor " + std::to_string(eigenvalue_floor));
}

Matrix2c partial_trace(const DensityMatrix4& rho, int keep) {
    if (rho.basis() != Basis::Product)
        throw BasisError("partial_trace requires the product basis; convert first");
    if (keep != 1 && keep != 2)
        throw DimensionError("partial_trace: keep must be 1 or 2");
    const Matrix4c& m = rho.matrix();
    Matrix2c out = Matrix2c::Zero();
    // product index: 2*a1 + a2
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                out(i, j) += (keep == 1) ? m(2 * i + k, 2 * j + k)
                                         : m(2 * k + i, 2 * k + j);
    return out;
}

DensityMatrix4 change_basis(const DensityMatrix4& rho, Basis target) {
    if (rho.basis() == target)
        return rho;
    const Matrix4c& o = coupled_basis_matrix();
    Matrix4c out;
    if (target == Basis::TripletSinglet)
        out = o.transpose() * rho.matrix() * o;
    else
        out = o * rho.matrix() * o.transpose();
    return DensityMatrix4(out, target);
}

DensityMatrix4 reorder_qubits(const DensityMatrix4& rho) {
    if (rho.basis() != Basis::Product)
        throw BasisError("reorder_qubits requires the product basis");
    Matrix4c m = rho.matrix();
    m.row(1).swap(m.row(2));
    m.col(1).swap(m.col(2));
    return DensityMatrix4(m, Basis::Product);
}

BlochDecomposition bloch_decompose(const DensityMatrix4& rho) {
    if (rho.basis() != Basis::Product)
        throw BasisError("bloch_decompose requires the product basis");
    const Matrix2c* s[3] = {&pauli_x(), &pauli_y(), &pauli_z()};
    const Matrix4c& m = rho.matrix();
    BlochDecomposition b;
    double worst_imag = 0.0;
    auto real_trace = [&](const Matrix4c& op) {
        const cxd t = (m * op).trace();
        worst_imag = std::max(worst_imag, std::abs(t.imag()));
        return t.real();
    };
    for (int i = 0; i < 3; ++i) {
        b.x(i) = real_trace(tensor_product(*s[i], identity2()));
        b.y(i) = real_trace(tensor_product(identity2(), *s[i]));
        for (int j = 0; j < 3; ++j)
            b.t(i, j) = real_trace(tensor_product(*s[i], *s[j]));
    }
    if (worst_imag > 1e-10)
        throw HermiticityError("bloch_decompose: coefficient has imaginary part " +
                               std::to_string(worst_imag));
    return b;
}

DensityMatrix4 bloch_reconstruct(const BlochDecomposition& b) {
    const Matrix2c* s[3] = {&pauli_x(), &pauli_y(), &pauli_z()};
    Matrix4c m = Matrix4c::Identity();
    for (int i = 0; i < 3; ++i) {
        m += b.x(i) * tensor_product(*s[i], identity2());
        m += b.y(i) * tensor_product(identity2(), *s[i]);
        for (int j = 0; j < 3; ++j)
            m += b.t(i, j) * tensor_product(*s[i], *s[j]);
    }
    m *= 0.25;
    try {
        return DensityMatrix4(m, Basis::Product);
    } catch (const Error& e) {
        throw NonPhysicalError(std::string("bloch_reconstruct: ") + e.what());
    }
}

EigenSystem hermitian_eigen(const Eigen::MatrixXcd& h) {
    const auto n = h.rows();
    if (h.cols() != n || (n != 2 && n != 3 && n != 4 && n != 16))
        throw DimensionError("hermitian_eigen supports square dimensions 2, 3, 4, 16");
    if (hermiticity_defect(h) > 1e-10)
        throw HermiticityError("hermitian_eigen: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw SolverError("hermitian_eigen: eigensolver did not converge");
    EigenSystem out;
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();
    return out;
}

Matrix4c psd_sqrt(const Matrix4c& h) {
    EigenSystem es = hermitian_eigen(h);
    if (es.values.minCoeff() < -1e-8)
        throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(es.values.minCoeff()) +
                          " below -1e-8");
    Eigen::Vector4d roots;
    for (int i = 0; i < 4; ++i)
        roots(i) = std::sqrt(std::max(es.values(i), 0.0));
    return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

double trace_distance(const Matrix4c& a, const Matrix4c& b) {
    Matrix4c d = a - b;
    d = 0.5 * (d + Matrix4c(d.adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace qcorr
