#pragma once

#include "pitchcatch/types.hpp"

namespace pitchcatch {

/// Physical constants of one qubit-cavity node. All angular frequencies and
/// rates are stored in rad/us; times in us. Config files take MHz / us and
/// convert on load.
struct NodeParams {
    double omega_q = 0.0;   ///< bare qubit frequency (rad/us)
    double omega_c = 0.0;   ///< bare cavity frequency (rad/us)
    double kappa = 0.0;     ///< cavity decay rate (rad/us)
    double chi_cq = 0.0;    ///< dispersive shift (rad/us)
    double chi_qq = 0.0;    ///< transmon anharmonicity (rad/us)
    double chi_cc = 0.0;    ///< cavity self-Kerr (rad/us)
    double T1 = 1.0;        ///< qubit relaxation time (us)
    double T2 = 1.0;        ///< qubit coherence time (us)
    double readout_fidelity_g = 1.0;
    double readout_fidelity_e = 1.0;

    double gamma1() const { return 1.0 / T1; }
    /// Pure dephasing rate 1/T2 - 1/(2 T1).
    double gamma_phi() const { return 1.0 / T2 - 0.5 / T1; }

    /// Throws ConfigError on kappa <= 0, T1 <= 0, T2 outside (0, 2 T1], or
    /// readout fidelities outside (0.5, 1].
    void validate(const std::string& name = "node") const;
};

/// Effective (dimensionless) pump displacements of the qubit and cavity
/// sidebands.
struct PumpAmplitudes {
    Complex xi1;  ///< qubit sideband
    Complex xi2;  ///< cavity sideband
};

struct StarkShifts {
    double delta_q;  ///< qubit dressed-frequency shift (rad/us)
    double delta_c;  ///< cavity dressed-frequency shift (rad/us)
};

/// Pump-induced Stark shifts of the dressed qubit and cavity frequencies:
/// delta_q = -2 chi_qq |xi1|^2 - chi_cq |xi2|^2,  delta_c = -chi_cq |xi1|^2.
StarkShifts stark_shifts(const NodeParams& p, const PumpAmplitudes& amps);

/// Frequency pull of the cavity from its own weak anharmonicity,
/// -2 chi_cc |xi2|^2. Reported for diagnostics; deliberately not fed into
/// the dynamics.
double cavity_self_kerr_shift(const NodeParams& p, const PumpAmplitudes& amps);

struct DriveStrengths {
    Complex g_s;  ///< squeezing (blue sideband) strength, chi_cq xi1 xi2
    Complex g_c;  ///< conversion (red sideband) strength, chi_cq xi1 xi2*
};

DriveStrengths drive_strengths(const NodeParams& p, const PumpAmplitudes& amps);

enum class SidebandBranch { squeeze, convert };

/// Cavity-pump frequency omega_2 that puts the chosen two-photon process on
/// resonance for a given qubit-pump frequency omega_1, using the Stark-shifted
/// dressed frequencies:
///   squeeze:  wq~ + wc~ - chi_cq = omega_1 + omega_2
///   convert:  wq~ - wc~          = omega_1 - omega_2
double resonance_pump_frequency(const NodeParams& p, const PumpAmplitudes& amps,
                                double omega_1, SidebandBranch branch);

/// Built-in "paper-defaults" parameter presets for the two nodes. T2 values
/// are the ones measured with the sideband pump on, which is the condition
/// during every protocol.
NodeParams alice_paper_defaults();
NodeParams bob_paper_defaults();

}  // namespace pitchcatch
