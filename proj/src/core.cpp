#include "pitchcatch/core.hpp"

#include <cmath>

namespace pitchcatch {

char pauli_label(Pauli p) {
    switch (p) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

int basis_index(int q_a, int n_a, int n_b, int q_b) {
    return ((q_a * 2 + n_a) * 2 + n_b) * 2 + q_b;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

namespace {

Matrix lowering2() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;  // |0><1| (qubits: |g><e|)
    return m;
}

Matrix embed(const Matrix& op, int factor) {
    Matrix out = factor == 0 ? op : Matrix(Matrix::Identity(2, 2));
    for (int k = 1; k < 4; ++k)
        out = kron(out, k == factor ? op : Matrix(Matrix::Identity(2, 2)));
    return out;
}

}  // namespace

Matrix mode_operator(Mode which) {
    return embed(lowering2(), static_cast<int>(which));
}

Matrix number_operator(Mode which) {
    Matrix n = Matrix::Zero(2, 2);
    n(1, 1) = 1.0;
    return embed(n, static_cast<int>(which));
}

Matrix pauli_matrix(Pauli p) {
    Matrix m = Matrix::Zero(2, 2);
    switch (p) {
        case Pauli::I:
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case Pauli::X:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case Pauli::Y:
            m(0, 1) = Complex(0.0, -1.0);
            m(1, 0) = Complex(0.0, 1.0);
            break;
        case Pauli::Z:
            m(0, 0) = -1.0;
            m(1, 1) = 1.0;
            break;
    }
    return m;
}

Matrix two_qubit_pauli(Pauli alpha, Pauli beta) {
    return kron(kron(pauli_matrix(alpha), Matrix(Matrix::Identity(4, 4))),
                pauli_matrix(beta));
}

double hermiticity_error(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
    return solver.eigenvalues().minCoeff();
}

DensityMatrix16 DensityMatrix16::pure(const Vector& psi) {
    if (psi.size() != kDim)
        throw ConfigError("DensityMatrix16::pure: state vector must have dim 16");
    Vector normed = psi / psi.norm();
    return DensityMatrix16{normed * normed.adjoint()};
}

DensityMatrix16 DensityMatrix16::basis(int q_a, int n_a, int n_b, int q_b) {
    Vector psi = Vector::Zero(kDim);
    psi(basis_index(q_a, n_a, n_b, q_b)) = 1.0;
    return pure(psi);
}

double DensityMatrix16::trace_error() const {
    return std::abs(rho.trace().real() - 1.0);
}

double DensityMatrix16::trace_imag() const { return std::abs(rho.trace().imag()); }

double DensityMatrix16::hermiticity() const { return hermiticity_error(rho); }

double DensityMatrix16::smallest_eigenvalue() const { return min_eigenvalue(rho); }

void DensityMatrix16::validate() const {
    if (rho.rows() != kDim || rho.cols() != kDim)
        throw NumericalError("density matrix is not 16x16");
    if (trace_error() > 1e-9)
        throw NumericalError("density matrix trace deviates from 1 by " +
                             std::to_string(trace_error()));
    if (trace_imag() > 1e-12)
        throw NumericalError("density matrix trace has imaginary part " +
                             std::to_string(trace_imag()));
    if (hermiticity() > 1e-10)
        throw NumericalError("density matrix is not Hermitian: " +
                             std::to_string(hermiticity()));
    if (smallest_eigenvalue() < -1e-8)
        throw NumericalError("density matrix has negative eigenvalue " +
                             std::to_string(smallest_eigenvalue()));
}

}  // namespace pitchcatch
