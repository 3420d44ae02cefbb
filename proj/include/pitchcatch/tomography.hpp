#pragma once

#include <iosfwd>

#include "pitchcatch/core.hpp"
#include "pitchcatch/model.hpp"

namespace pitchcatch {

/// Sixteen two-qubit Pauli expectation values <alpha_A beta_B>.
struct PauliTable {
    double values[4][4] = {};

    double& at(Pauli a, Pauli b) {
        return values[static_cast<int>(a)][static_cast<int>(b)];
    }
    double at(Pauli a, Pauli b) const {
        return values[static_cast<int>(a)][static_cast<int>(b)];
    }
    /// Row-per-operator CSV: label,value (16 rows, II first).
    void write_csv(std::ostream& os) const;
};

/// Readout fidelities of both qubits.
struct ReadoutModel {
    double f_g_a = 1.0;
    double f_e_a = 1.0;
    double f_g_b = 1.0;
    double f_e_b = 1.0;

    static ReadoutModel from_nodes(const NodeParams& a, const NodeParams& b);
    static ReadoutModel perfect() { return ReadoutModel{}; }
    void validate() const;
};

/// Partial trace over the two cavity factors: 16x16 -> 4x4 two-qubit state
/// (Alice qubit first).
Matrix qubit_reduction(const Matrix& rho16);

/// All sixteen <alpha_A beta_B> = tr(P rho). Throws NumericalError if any
/// imaginary residue exceeds 1e-8.
PauliTable pauli_expectations(const Matrix& rho16);

/// Finite-fidelity readout map on an excited-state probability:
/// P -> f_e P + (1 - f_g)(1 - P).
double apply_readout_error(double p_sim, double f_g, double f_e);

/// Linear-inversion reconstruction rho = (1/4) sum <ab> a (x) b. Hermitian by
/// construction, deliberately not projected to positive semidefinite.
Matrix reconstruct_density_matrix(const PauliTable& t);

/// <Phi+| rho |Phi+> with Phi+ = (|gg> + |ee>)/sqrt(2) on a 4x4 two-qubit
/// state.
double bell_fidelity(const Matrix& rho2q);

/// What tomography would report: ideal expectations, a frame rotation of
/// Bob's (X, Y) basis by frame_angle, then the per-qubit readout map applied
/// to every population entering each expectation.
PauliTable measured_table(const Matrix& rho16, const ReadoutModel& rm,
                          double frame_angle);

/// Frame rotation alone (exposed for tests and reporting).
PauliTable rotate_bob_frame(const PauliTable& t, double frame_angle);

/// Readout map alone, applied to a full table.
PauliTable apply_readout_to_table(const PauliTable& t, const ReadoutModel& rm);

/// Deterministic differential phase of the |gg><ee| coherence of the
/// qubit-reduced state; the simulated analogue of the phase the experiment
/// calibrates away before reconstruction.
double differential_phase(const Matrix& rho16);

}  // namespace pitchcatch
