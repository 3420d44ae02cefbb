#pragma once

#include <utility>
#include <vector>

#include "pitchcatch/types.hpp"

namespace pitchcatch {

/// Parameters of the two-photon Rabi problem for a single driven node in the
/// coherent-state (scalar Langevin) picture. gamma and lambda are derived on
/// construction; lambda takes the principal square-root branch (Re >= 0).
/// The dynamics is even in lambda, so the branch cannot change results.
struct RabiParams {
    double g = 0.0;      ///< drive strength magnitude (rad/us), taken real
    double kappa = 0.0;  ///< cavity decay (rad/us)
    double delta = 0.0;  ///< detuning from the resonance condition (rad/us)
    Complex gamma;       ///< kappa + 2 i delta
    Complex lambda;      ///< sqrt(gamma^2 - 16 g^2)

    static RabiParams make(double g, double kappa, double delta);
};

/// Qubit/cavity coherent amplitudes (alpha, beta) at one time.
struct CoherentPoint {
    Complex alpha;
    Complex beta;
};

/// Decaying-oscillation kernel f(t) = e^{-gamma t/4} (cosh(lambda t/4)
/// + (gamma/lambda) sinh(lambda t/4)); switches to a series limit when
/// |lambda| t < 1e-6 to avoid 0/0 at the critical point lambda = 0.
Complex rabi_amplitude_kernel(Complex gamma, Complex lambda, double t);

/// Excited-state population |f(t)|^2 of a node under a constant two-photon
/// drive, starting from the excited state with the cavity empty.
/// Throws ConfigError for negative t.
double rabi_excited_population(const RabiParams& rp, double t);

/// Closed-form coherent trajectory (alpha(t), beta(t)) from alpha(0) = alpha0,
/// beta(0) = 0. t_grid must be ascending and nonnegative.
std::vector<CoherentPoint> coherent_trajectory(const RabiParams& rp,
                                               Complex alpha0,
                                               const std::vector<double>& t_grid);

}  // namespace pitchcatch
