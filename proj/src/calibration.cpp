#include "pitchcatch/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "pitchcatch/semiclassical.hpp"

namespace pitchcatch {

DephasingStark dephasing_and_stark(const NodeParams& p, const DressingDrive& d) {
    if (d.power < 0.0) throw ConfigError("dressing drive power must be >= 0");
    const double amp = 2.0 * std::sqrt(p.kappa * d.power);
    const Complex alpha_e =
        amp / Complex(p.kappa, 2.0 * (d.omega - p.omega_c + p.chi_cq));
    const Complex alpha_g = amp / Complex(p.kappa, 2.0 * (d.omega - p.omega_c));
    return {p.chi_cq * std::imag(alpha_g * std::conj(alpha_e)),
            p.chi_cq * std::real(alpha_e * std::conj(alpha_g))};
}

TransmissionCurves synthesize_line_curves(const NodeParams& p,
                                          double power_ratio,
                                          const std::vector<double>& omegas) {
    TransmissionCurves c;
    c.omega = omegas;
    for (double w : omegas) {
        const DephasingStark ds = dephasing_and_stark(p, {w, power_ratio});
        c.gamma_d_per_p0.push_back(ds.gamma_d);
        c.delta_q_per_p0.push_back(ds.delta_q);
    }
    return c;
}

namespace {

// Forward model of one node's normalized curves, stacked
// [gamma_d/P0..., delta_q/P0...], for parameters (chi, kappa, s = P/P0).
// Both observables are linear in the power, so the model is evaluated at
// unit power and scaled; trial steps with negative s stay well defined.
Eigen::VectorXd line_model(const TransmissionCurves& c, double chi, double kappa,
                           double s) {
    NodeParams p;
    p.kappa = kappa;
    p.chi_cq = chi;
    p.omega_c = 0.0;  // curves are stored relative to the bare cavity
    const auto n = static_cast<Eigen::Index>(c.omega.size());
    Eigen::VectorXd out(2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const DephasingStark ds =
            dephasing_and_stark(p, {c.omega[static_cast<std::size_t>(k)], 1.0});
        out(k) = s * ds.gamma_d;
        out(n + k) = s * ds.delta_q;
    }
    return out;
}

Eigen::VectorXd stack_data(const TransmissionCurves& c) {
    const auto n = static_cast<Eigen::Index>(c.omega.size());
    Eigen::VectorXd d(2 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        d(k) = c.gamma_d_per_p0[static_cast<std::size_t>(k)];
        d(n + k) = c.delta_q_per_p0[static_cast<std::size_t>(k)];
    }
    return d;
}

// Levenberg-Marquardt on (chi, kappa, s) with forward differences. The scale
// s enters linearly, so the grid seed solves it in closed form per (chi,
// kappa) candidate.
NodeLineFit fit_one_node(const TransmissionCurves& curves) {
    if (curves.omega.size() < 10)
        throw ConfigError("fit_transmission: need at least 10 frequency samples");
    const Eigen::VectorXd data = stack_data(curves);
    const double data_scale = data.cwiseAbs().maxCoeff();
    if (data_scale <= 0.0)
        throw NumericalError("fit_transmission: curves are identically zero");

    const double wmin = *std::min_element(curves.omega.begin(), curves.omega.end());
    const double wmax = *std::max_element(curves.omega.begin(), curves.omega.end());
    const double span = wmax - wmin;

    // Coarse grid seed over (chi, kappa); s solved linearly.
    double best_chi = span / 2.0, best_kappa = span / 8.0, best_s = 1.0;
    double best_ssr = std::numeric_limits<double>::infinity();
    for (int ic = 1; ic <= 24; ++ic) {
        const double chi = span * ic / 16.0;
        for (int ik = 1; ik <= 24; ++ik) {
            const double kappa = span * ik / 48.0;
            const Eigen::VectorXd m = line_model(curves, chi, kappa, 1.0);
            const double mm = m.squaredNorm();
            if (mm <= 0.0) continue;
            const double s = m.dot(data) / mm;
            const double ssr = (data - s * m).squaredNorm();
            if (ssr < best_ssr) {
                best_ssr = ssr;
                best_chi = chi;
                best_kappa = kappa;
                best_s = s;
            }
        }
    }

    Eigen::Vector3d x(best_chi, best_kappa, best_s);
    double lambda = 1e-3;
    double ssr = (data - line_model(curves, x(0), x(1), x(2))).squaredNorm();
    for (int it = 0; it < 200; ++it) {
        const Eigen::VectorXd r = data - line_model(curves, x(0), x(1), x(2));
        Eigen::MatrixXd jac(data.size(), 3);
        for (int j = 0; j < 3; ++j) {
            Eigen::Vector3d xp = x;
            const double h = std::max(1e-8, 1e-7 * std::abs(x(j)));
            xp(j) += h;
            jac.col(j) =
                (line_model(curves, xp(0), xp(1), xp(2)) -
                 line_model(curves, x(0), x(1), x(2))) /
                h;
        }
        const Eigen::Matrix3d jtj = jac.transpose() * jac;
        const Eigen::Vector3d jtr = jac.transpose() * r;
        bool stepped = false;
        for (int tries = 0; tries < 12 && !stepped; ++tries) {
            Eigen::Matrix3d a = jtj;
            a.diagonal() += lambda * jtj.diagonal();
            const Eigen::Vector3d dx = a.ldlt().solve(jtr);
            Eigen::Vector3d xn = x + dx;
            xn(1) = std::abs(xn(1));  // kappa sign is a gauge of the model
            const double ssr_n =
                (data - line_model(curves, xn(0), xn(1), xn(2))).squaredNorm();
            if (ssr_n < ssr) {
                x = xn;
                ssr = ssr_n;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!stepped) break;
        if (jtr.norm() < 1e-14 * data_scale) break;
    }

    const double rms = std::sqrt(ssr / static_cast<double>(data.size()));
    if (rms > 0.25 * data_scale)
        throw NumericalError(
            "fit_transmission: no convergence (relative rms residual " +
            std::to_string(rms / data_scale) + ")");
    return NodeLineFit{x(0), x(1), x(2), rms / data_scale};
}

}  // namespace

TransmissionFit fit_transmission(const TransmissionCurves& curves_a,
                                 const TransmissionCurves& curves_b) {
    TransmissionFit fit;
    fit.alice = fit_one_node(curves_a);
    fit.bob = fit_one_node(curves_b);
    fit.transmission = fit.bob.power_ratio / fit.alice.power_ratio;
    for (const auto* c : {&curves_a, &curves_b}) {
        const double span =
            *std::max_element(c->omega.begin(), c->omega.end()) -
            *std::min_element(c->omega.begin(), c->omega.end());
        if (span < fit.alice.kappa || span < fit.bob.kappa)
            fit.ill_conditioned = true;
    }
    return fit;
}

RabiFit fit_rabi_strength(const std::vector<RabiSample>& samples, double kappa,
                          double delta) {
    if (samples.size() < 8)
        throw ConfigError("fit_rabi_strength: need at least 8 samples");
    double t_max = 0.0;
    for (const RabiSample& s : samples) t_max = std::max(t_max, s.t);
    if (t_max <= 0.0) throw ConfigError("fit_rabi_strength: empty time span");

    auto ssr_of = [&](double g) {
        const RabiParams rp = RabiParams::make(g, kappa, delta);
        double ssr = 0.0;
        for (const RabiSample& s : samples) {
            const double d = rabi_excited_population(rp, s.t) - s.p_e;
            ssr += d * d;
        }
        return ssr;
    };

    // One full Rabi flop over the span corresponds to 4 g t_max = 2 pi; scan
    // well past that so under-sampled fast oscillations still seed correctly.
    const double g_hi = std::max(4.0 * kTwoPi / (4.0 * t_max) * 8.0, 2.0 * kappa);
    const int n_grid = 600;
    double best_g = 0.0, best_ssr = ssr_of(0.0);
    const double ssr0 = best_ssr;
    for (int k = 1; k <= n_grid; ++k) {
        const double g = g_hi * k / n_grid;
        const double ssr = ssr_of(g);
        if (ssr < best_ssr) {
            best_ssr = ssr;
            best_g = g;
        }
    }
    // golden-section refinement around the grid minimum
    double lo = std::max(0.0, best_g - g_hi / n_grid);
    double hi = best_g + g_hi / n_grid;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = ssr_of(x1), f2 = ssr_of(x2);
    for (int it = 0; it < 90; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = ssr_of(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = ssr_of(x2);
        }
    }
    const double g_fit = 0.5 * (lo + hi);
    const double ssr_fit = ssr_of(g_fit);
    RabiFit fit;
    fit.g = ssr_fit < best_ssr ? g_fit : best_g;
    fit.residual = std::sqrt(std::min(ssr_fit, best_ssr) /
                             static_cast<double>(samples.size()));
    // flat landscape: the best fit does not improve on g = 0 in any
    // distinguishable way
    fit.flat_landscape = (ssr0 - std::min(ssr_fit, best_ssr)) <=
                         1e-12 + 1e-9 * std::max(1.0, ssr0);
    if (fit.flat_landscape) fit.g = 0.0;
    return fit;
}

}  // namespace pitchcatch
