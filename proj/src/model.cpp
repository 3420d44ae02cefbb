#include "pitchcatch/model.hpp"

#include <cmath>

namespace pitchcatch {

void NodeParams::validate(const std::string& name) const {
    if (kappa <= 0.0) throw ConfigError(name + ": kappa must be > 0");
    if (T1 <= 0.0) throw ConfigError(name + ": T1 must be > 0");
    if (T2 <= 0.0) throw ConfigError(name + ": T2 must be > 0");
    if (T2 > 2.0 * T1) throw ConfigError(name + ": T2 exceeds 2*T1");
    for (double f : {readout_fidelity_g, readout_fidelity_e}) {
        if (!(f > 0.5 && f <= 1.0))
            throw ConfigError(name + ": readout fidelities must lie in (0.5, 1]");
    }
}

StarkShifts stark_shifts(const NodeParams& p, const PumpAmplitudes& amps) {
    const double n1 = std::norm(amps.xi1);
    const double n2 = std::norm(amps.xi2);
    return {-2.0 * p.chi_qq * n1 - p.chi_cq * n2, -p.chi_cq * n1};
}

double cavity_self_kerr_shift(const NodeParams& p, const PumpAmplitudes& amps) {
    return -2.0 * p.chi_cc * std::norm(amps.xi2);
}

DriveStrengths drive_strengths(const NodeParams& p, const PumpAmplitudes& amps) {
    return {p.chi_cq * amps.xi1 * amps.xi2,
            p.chi_cq * amps.xi1 * std::conj(amps.xi2)};
}

double resonance_pump_frequency(const NodeParams& p, const PumpAmplitudes& amps,
                                double omega_1, SidebandBranch branch) {
    const StarkShifts s = stark_shifts(p, amps);
    const double wq = p.omega_q + s.delta_q;
    const double wc = p.omega_c + s.delta_c;
    switch (branch) {
        case SidebandBranch::squeeze:
            return wq + wc - p.chi_cq - omega_1;
        case SidebandBranch::convert:
            return wc - wq + omega_1;
    }
    throw ConfigError("unknown sideband branch");
}

NodeParams alice_paper_defaults() {
    NodeParams p;
    p.omega_q = mhz(4510.0);
    p.omega_c = mhz(7611.8);
    p.kappa = mhz(1.0);
    p.chi_cq = mhz(8.3);
    p.chi_qq = mhz(200.0);
    p.chi_cc = mhz(0.085);
    p.T1 = 100.0;
    p.T2 = 10.0;
    p.readout_fidelity_g = 0.955;
    p.readout_fidelity_e = 0.94;
    return p;
}

NodeParams bob_paper_defaults() {
    NodeParams p;
    p.omega_q = mhz(4751.0);
    p.omega_c = mhz(7602.9);
    p.kappa = mhz(1.0);
    p.chi_cq = mhz(3.3);
    p.chi_qq = mhz(240.0);
    p.chi_cc = mhz(0.010);
    p.T1 = 96.0;
    p.T2 = 17.5;
    p.readout_fidelity_g = 0.985;
    p.readout_fidelity_e = 0.96;
    return p;
}

}  // namespace pitchcatch
