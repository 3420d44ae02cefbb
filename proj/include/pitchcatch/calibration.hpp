#pragma once

#include <vector>

#include "pitchcatch/model.hpp"

namespace pitchcatch {

/// Continuous dressing tone bouncing off a cavity, used as a power probe.
struct DressingDrive {
    double omega = 0.0;  ///< drive angular frequency (rad/us)
    double power = 0.0;  ///< photon flux scale P (photons/us), >= 0
};

struct DephasingStark {
    double gamma_d;  ///< measurement-induced dephasing (1/us), >= 0
    double delta_q;  ///< qubit Stark shift (rad/us)
};

/// Steady-state cavity fields under the dressing tone for qubit in |e> / |g>
/// give Gamma_d = chi_cq Im(alpha_g alpha_e*) and
/// delta_q = chi_cq Re(alpha_e alpha_g*). The conjugation order of the
/// dephasing term is fixed by requiring Gamma_d >= 0 at all frequencies.
DephasingStark dephasing_and_stark(const NodeParams& p, const DressingDrive& d);

/// Normalized dressed-Ramsey curves for one node: Gamma_d / P0 and
/// delta_q / P0 sampled across frequencies.
struct TransmissionCurves {
    std::vector<double> omega;            ///< rad/us
    std::vector<double> gamma_d_per_p0;   ///< (1/us) per unit input power
    std::vector<double> delta_q_per_p0;   ///< (rad/us) per unit input power
};

struct NodeLineFit {
    double chi_cq;
    double kappa;
    double power_ratio;  ///< fitted P / P0
    double residual;     ///< rms residual relative to the signal scale
};

struct TransmissionFit {
    double transmission;  ///< (P/P0)_B / (P/P0)_A
    NodeLineFit alice;
    NodeLineFit bob;
    bool ill_conditioned = false;  ///< frequency span below kappa
};

/// Nonlinear least squares of the dephasing/Stark forward model per node,
/// three parameters each (chi_cq, kappa, P/P0); the line transmission is the
/// ratio of the fitted power scales. Throws NumericalError with residual
/// diagnostics when the fit does not converge.
TransmissionFit fit_transmission(const TransmissionCurves& curves_a,
                                 const TransmissionCurves& curves_b);

/// Generate noiseless forward-model curves (test/synthetic-data helper).
TransmissionCurves synthesize_line_curves(const NodeParams& p,
                                          double power_ratio,
                                          const std::vector<double>& omegas);

struct RabiSample {
    double t;    ///< us
    double p_e;  ///< measured excited-state population
};

struct RabiFit {
    double g;              ///< fitted drive strength (rad/us)
    double residual;       ///< rms residual
    bool flat_landscape;   ///< residuals indistinguishable from g = 0
};

/// One-parameter least squares of the two-photon Rabi population against
/// sampled (t, P_e) data.
RabiFit fit_rabi_strength(const std::vector<RabiSample>& samples, double kappa,
                          double delta);

}  // namespace pitchcatch
