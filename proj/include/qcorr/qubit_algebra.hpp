#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qcorr/error.hpp"

namespace qcorr {

using cxd = std::complex<double>;

// Dense fixed-size matrices, row-major entry order.
using Matrix2c = Eigen::Matrix<cxd, 2, 2, Eigen::RowMajor>;
using Matrix4c = Eigen::Matrix<cxd, 4, 4, Eigen::RowMajor>;
using Matrix16c = Eigen::Matrix<cxd, 16, 16, Eigen::RowMajor>;
using Vector4c = Eigen::Matrix<cxd, 4, 1>;
using Vector16c = Eigen::Matrix<cxd, 16, 1>;
using Vector3r = Eigen::Vector3d;
using Matrix3r = Eigen::Matrix3d;

/// Which ordered basis a two-qubit matrix is expressed in.
///
/// Product:        |++>, |+->, |-+>, |-->
/// TripletSinglet: |1,1>, |1,0>, |1,-1>, |0,0>
enum class Basis { Product, TripletSinglet };

const char* to_string(Basis b);

// Single-qubit constants in the {|+>, |->} basis (|+> = excited).
const Matrix2c& pauli_x();
const Matrix2c& pauli_y();
const Matrix2c& pauli_z();
const Matrix2c& identity2();
const Matrix2c& sigma_plus();   // |+><-|
const Matrix2c& sigma_minus();  // |-><+|

/// Orthogonal matrix whose columns are the triplet-singlet states in
/// product coordinates: rho_ts = O^T rho_prod O.
const Matrix4c& coupled_basis_matrix();

/// sigma_y (x) sigma_y, the spin-flip conjugation matrix (product basis).
const Matrix4c& spin_flip_matrix();

/// |0,0><0,0| in the product basis.
const Matrix4c& singlet_projector();

/// Kronecker product of two single-qubit operators, atom 1 factor first.
Matrix4c tensor_product(const Matrix2c& a, const Matrix2c& b);

/// Two-atom density matrix with its basis carried as a tag.
///
/// Construction validates Hermiticity (1e-12), unit trace (1e-12) and
/// positivity (eigenvalues >= -1e-10 by default; integrators may pass a
/// looser floor to tolerate truncation dust).
class DensityMatrix4 {
public:
    static constexpr double kHermiticityTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kEigenvalueFloor = -1e-10;

    DensityMatrix4(const Matrix4c& m, Basis basis,
                   double eigenvalue_floor = kEigenvalueFloor);

    const Matrix4c& matrix() const { return m_; }
    Basis basis() const { return basis_; }
    cxd operator()(int i, int j) const { return m_(i, j); }

private:
    Matrix4c m_;
    Basis basis_;
};

/// Local Bloch vectors and correlation tensor of a two-qubit state:
/// x_i = Tr(rho s_i (x) I), y_j = Tr(rho I (x) s_j), T_ij = Tr(rho s_i (x) s_j).
struct BlochDecomposition {
    Vector3r x;
    Vector3r y;
    Matrix3r t;
};

/// Reduced state of atom `keep` (1 or 2). Requires the product basis.
Matrix2c partial_trace(const DensityMatrix4& rho, int keep);

/// Re-express the state in `target` coordinates (involutive, spectrum-preserving).
DensityMatrix4 change_basis(const DensityMatrix4& rho, Basis target);

/// Swap the roles of the two atoms: exchange rows 2<->3 and columns 2<->3
/// of the product-basis matrix. Involutive.
DensityMatrix4 reorder_qubits(const DensityMatrix4& rho);

BlochDecomposition bloch_decompose(const DensityMatrix4& rho);

/// Rebuild the state from a Bloch decomposition; throws NonPhysicalError if
/// the result is not a valid density matrix.
DensityMatrix4 bloch_reconstruct(const BlochDecomposition& b);

struct EigenSystem {
    Eigen::VectorXd values;    // descending
    Eigen::MatrixXcd vectors;  // columns, matching order
};

/// Eigendecomposition of a Hermitian matrix of dimension 2, 3, 4 or 16.
EigenSystem hermitian_eigen(const Eigen::MatrixXcd& h);

/// Square root of a Hermitian PSD matrix; eigenvalues in [-1e-8, 0) are
/// clamped to zero, below -1e-8 a NotPsdError is thrown.
Matrix4c psd_sqrt(const Matrix4c& h);

/// 1/2 * sum |eigenvalues of (a - b)| for Hermitian a, b.
double trace_distance(const Matrix4c& a, const Matrix4c& b);

} // namespace qcorr
