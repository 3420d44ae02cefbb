#include "pitchcatch/semiclassical.hpp"

#include <cmath>

namespace pitchcatch {

RabiParams RabiParams::make(double g, double kappa, double delta) {
    RabiParams rp;
    rp.g = g;
    rp.kappa = kappa;
    rp.delta = delta;
    rp.gamma = Complex(kappa, 2.0 * delta);
    Complex lam = std::sqrt(rp.gamma * rp.gamma - 16.0 * g * g);
    if (lam.real() < 0.0) lam = -lam;
    rp.lambda = lam;
    return rp;
}

Complex rabi_amplitude_kernel(Complex gamma, Complex lambda, double t) {
    const Complex pre = std::exp(-gamma * t / 4.0);
    if (std::abs(lambda) * t < 1e-6) {
        // second-order expansion about lambda = 0:
        // cosh(x) + (gamma t/4) sinh(x)/x with x = lambda t / 4
        const Complex x2 = lambda * lambda * t * t / 16.0;
        return pre * (1.0 + gamma * t / 4.0 + x2 * (0.5 + gamma * t / 24.0));
    }
    const Complex x = lambda * t / 4.0;
    return pre * (std::cosh(x) + (gamma / lambda) * std::sinh(x));
}

double rabi_excited_population(const RabiParams& rp, double t) {
    if (t < 0.0) throw ConfigError("rabi_excited_population: t must be >= 0");
    return std::norm(rabi_amplitude_kernel(rp.gamma, rp.lambda, t));
}

std::vector<CoherentPoint> coherent_trajectory(const RabiParams& rp,
                                               Complex alpha0,
                                               const std::vector<double>& t_grid) {
    std::vector<CoherentPoint> out;
    out.reserve(t_grid.size());
    double prev = 0.0;
    for (double t : t_grid) {
        if (t < 0.0 || t < prev)
            throw ConfigError("coherent_trajectory: t_grid must be ascending and nonnegative");
        prev = t;
        const Complex alpha = alpha0 * rabi_amplitude_kernel(rp.gamma, rp.lambda, t);
        Complex beta;
        const Complex pre = std::exp(-std::conj(rp.gamma) * t / 4.0);
        if (std::abs(rp.lambda) * t < 1e-6) {
            const Complex x2 = rp.lambda * rp.lambda * t * t / 16.0;
            beta = alpha0 * Complex(0.0, -1.0) * rp.g * t * pre * (1.0 + x2 / 6.0);
        } else {
            beta = alpha0 * (-4.0 * Complex(0.0, 1.0) * rp.g / rp.lambda) * pre *
                   std::sinh(rp.lambda * t / 4.0);
        }
        out.push_back({alpha, beta});
    }
    return out;
}

}  // namespace pitchcatch
