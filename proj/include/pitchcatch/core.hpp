#pragma once

#include <array>

#include "pitchcatch/types.hpp"

namespace pitchcatch {

// Two-node truncated Hilbert space: every mode holds at most one excitation,
// so the joint space is 2x2x2x2 = 16 dimensional. Fixed factor order
//   qubit A (x) cavity A (x) cavity B (x) qubit B
// with single-factor basis {|g>,|e>} for qubits and {|0>,|1>} for cavities.
// Basis index of |qA nA nB qB> is ((qA*2 + nA)*2 + nB)*2 + qB.
inline constexpr int kDim = 16;

enum class Mode { qubit_a = 0, cavity_a = 1, cavity_b = 2, qubit_b = 3 };

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kPaulis = {Pauli::I, Pauli::X, Pauli::Y,
                                                 Pauli::Z};

char pauli_label(Pauli p);

/// Basis index of the product state |qA nA nB qB| (each argument 0 or 1).
int basis_index(int q_a, int n_a, int n_b, int q_b);

/// Annihilation operator of one mode, embedded in the 16-dim space by tensor
/// product with identities on the other three factors. Qubit operators lower
/// |e> to |g>. Nilpotent of order 2 by the one-excitation truncation.
Matrix mode_operator(Mode which);

/// q^dag q (or c^dag c) of one mode, embedded in the 16-dim space.
Matrix number_operator(Mode which);

/// Single-qubit Pauli in the {|g>,|e>} basis. Z = 2|e><e| - 1, so
/// Z|g> = -|g> and Z|e> = +|e>.
Matrix pauli_matrix(Pauli p);

/// alpha on Alice's qubit factor (x) identity on both cavities (x) beta on
/// Bob's qubit factor.
Matrix two_qubit_pauli(Pauli alpha, Pauli beta);

/// Kronecker product helper (row-major factor order, left factor slowest).
Matrix kron(const Matrix& a, const Matrix& b);

/// max_ij |M - M^dag|_ij
double hermiticity_error(const Matrix& m);

/// Smallest eigenvalue of a (nearly) Hermitian matrix.
double min_eigenvalue(const Matrix& m);

/// Two-node density matrix on the 16-dim truncated space. Wraps a raw matrix
/// together with the physicality checks used across the toolkit.
struct DensityMatrix16 {
    Matrix rho;

    static DensityMatrix16 pure(const Vector& psi);
    /// |qA nA nB qB><qA nA nB qB|
    static DensityMatrix16 basis(int q_a, int n_a, int n_b, int q_b);

    double trace_error() const;        // |Re tr - 1| and |Im tr| combined
    double trace_imag() const;         // |Im tr|
    double hermiticity() const;        // max |rho - rho^dag|
    double smallest_eigenvalue() const;

    /// Throws NumericalError unless trace within 1e-9 of 1 (imaginary part
    /// within 1e-12), Hermitian within 1e-10, and min eigenvalue >= -1e-8.
    void validate() const;
};

}  // namespace pitchcatch
