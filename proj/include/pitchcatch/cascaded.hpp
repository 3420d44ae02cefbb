#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "pitchcatch/core.hpp"
#include "pitchcatch/model.hpp"
#include "pitchcatch/pulse_synthesis.hpp"

namespace pitchcatch {

/// Directional line between the nodes. Propagation delay is identically zero
/// in this model.
struct ChannelParams {
    double transmission = 1.0;       ///< power transmission T in [0, 1]
    double propagation_delay = 0.0;  ///< us, must stay 0

    void validate() const;
};

/// Qubit relaxation / pure-dephasing rates with per-channel enable switches
/// for ablation studies.
struct ImperfectionSet {
    double gamma1_a = 0.0;    ///< 1/T1 of Alice (1/us)
    double gamma1_b = 0.0;
    double gammaphi_a = 0.0;  ///< 1/T2 - 1/(2 T1) of Alice (1/us)
    double gammaphi_b = 0.0;
    bool relaxation_a_enabled = true;
    bool relaxation_b_enabled = true;
    bool dephasing_a_enabled = true;
    bool dephasing_b_enabled = true;

    static ImperfectionSet from_nodes(const NodeParams& a, const NodeParams& b);
    static ImperfectionSet none() { return ImperfectionSet{}; }

    void validate() const;
    double eff_gamma1_a() const { return relaxation_a_enabled ? gamma1_a : 0.0; }
    double eff_gamma1_b() const { return relaxation_b_enabled ? gamma1_b : 0.0; }
    double eff_gammaphi_a() const { return dephasing_a_enabled ? gammaphi_a : 0.0; }
    double eff_gammaphi_b() const { return dephasing_b_enabled ? gammaphi_b : 0.0; }
};

struct SimulationConfig {
    double dt = 1e-3;       ///< integrator step (us)
    int sample_every = 10;  ///< record every k-th step
    NodeParams node_a;
    NodeParams node_b;
    ChannelParams channel;
    ControlSequence controls_a;  ///< pitch-role control (node detuning rides along)
    ControlSequence controls_b;  ///< catch-role control
    ImperfectionSet imperfections;
    Matrix initial_state;  ///< 16x16 density matrix

    void validate() const;
};

/// Right-hand side of the cascaded master equation at a fixed time, usable as
/// a superoperator action on 16x16 density matrices.
class LiouvillianAction {
  public:
    LiouvillianAction(const SimulationConfig& cfg);

    /// d(rho)/dt at time t.
    Matrix apply(const Matrix& rho, double t) const;
    /// Same with explicit control values (integrator stages).
    Matrix apply_controls(const Matrix& rho, Complex g_a, Complex g_b) const;

    /// Hamiltonian at time t (Hermitian, 16x16).
    Matrix hamiltonian(double t) const;

    /// Instantaneous total outward photon flux sum_k <J_k^dag J_k> over the
    /// three cavity jump channels (line + local losses), for excitation
    /// bookkeeping.
    double cavity_loss_flux(const Matrix& rho) const;
    /// Same for the qubit relaxation channels.
    double qubit_loss_flux(const Matrix& rho) const;

  private:
    struct JumpEntry {
        int r1, c1, r2, c2;
        Complex w;
    };

    const SimulationConfig* cfg_;
    Matrix h_const_;        // detunings + cascade coupling
    Matrix pitch_a_;        // q_A^dag c_A^dag   (g_A multiplies this + h.c.)
    Matrix catch_a_;        // q_A^dag c_A
    Matrix catch_b_;        // q_B^dag c_B
    Matrix k_sum_;          // sum_k J_k^dag J_k
    std::vector<JumpEntry> jump_table_;
    Matrix cavity_loss_op_;  // sum over cavity channels of J^dag J
    Matrix qubit_loss_op_;
};

/// Convenience wrapper matching the operation-level contract: the
/// superoperator action at time t for the given configuration.
std::function<Matrix(const Matrix&)> build_liouvillian(const SimulationConfig& cfg,
                                                       double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;  ///< sampled 16x16 density matrices
    std::vector<double> p_e_a;
    std::vector<double> p_e_b;
    std::vector<double> n_cav_a;
    std::vector<double> n_cav_b;
    std::vector<double> zz;              ///< <Z_A Z_B>
    std::vector<Complex> mean_c_a;
    std::vector<Complex> mean_c_b;
    std::vector<Complex> a_out;          ///< mean field after Bob
    std::vector<double> trace_err;
    std::vector<double> lost_flux;       ///< cumulative cavity-channel flux
    std::vector<double> qubit_lost_flux; ///< cumulative qubit-relaxation flux

    const Matrix& final_state() const { return states.back(); }
    double max_trace_err() const;

    /// CSV columns: t_us, P_eA, P_eB, n_cavA, n_cavB, ZZ, re_aout, im_aout,
    /// trace_err (12 significant digits).
    void write_csv(std::ostream& os) const;
};

/// Fixed-step RK4 integration of the cascaded master equation over the
/// control window. Throws NumericalError if the trace drifts by more than
/// 1e-6 over the run.
Trajectory evolve(const SimulationConfig& cfg);

}  // namespace pitchcatch
