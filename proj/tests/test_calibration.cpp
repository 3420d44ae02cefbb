#include <doctest.h>

#include <cmath>
#include <random>

#include "pitchcatch/calibration.hpp"
#include "pitchcatch/semiclassical.hpp"

using namespace pitchcatch;

namespace {

NodeParams cavity_frame_node(double chi_mhz, double kappa_mhz) {
    NodeParams p;
    p.omega_c = 0.0;  // frequencies relative to the bare cavity
    p.chi_cq = mhz(chi_mhz);
    p.kappa = mhz(kappa_mhz);
    p.T1 = p.T2 = 1.0;
    return p;
}

std::vector<double> freq_grid(const NodeParams& p, int n, double span) {
    std::vector<double> w;
    for (int k = 0; k < n; ++k)
        w.push_back(-0.5 * span - p.chi_cq + (span + p.chi_cq) * k / (n - 1));
    return w;
}

}  // namespace

TEST_CASE("no drive, no dephasing, no shift") {
    const NodeParams p = cavity_frame_node(8.3, 1.0);
    const DephasingStark ds = dephasing_and_stark(p, {mhz(2.0), 0.0});
    CHECK(ds.gamma_d == 0.0);
    CHECK(ds.delta_q == 0.0);
}

TEST_CASE("dephasing and Stark shift are linear in the drive power") {
    const NodeParams p = cavity_frame_node(8.3, 1.0);
    for (double w_mhz : {-9.0, -4.15, -1.0, 0.4}) {
        const DephasingStark d1 = dephasing_and_stark(p, {mhz(w_mhz), 1.0});
        const DephasingStark d3 = dephasing_and_stark(p, {mhz(w_mhz), 3.0});
        CHECK(d3.gamma_d == doctest::Approx(3.0 * d1.gamma_d).epsilon(1e-12));
        CHECK(d3.delta_q == doctest::Approx(3.0 * d1.delta_q).epsilon(1e-12));
    }
}

TEST_CASE("frequency-grid oracle: extrema and symmetry of the exact model") {
    // evaluate the forward model on a dense grid and locate its features:
    // Gamma_d is nonnegative, symmetric about the midpoint between the two
    // dressed cavity lines, and (for kappa << chi) peaks near both lines
    // rather than at the midpoint; delta_q is symmetric with its most
    // negative value at the midpoint.
    const NodeParams p = cavity_frame_node(8.3, 0.4);
    const double mid = -0.5 * p.chi_cq;
    const int n = 2001;
    std::vector<double> gd(n), dq(n), w(n);
    double gd_max = -1.0, dq_min = 1e300;
    int k_dqmin = 0;
    for (int k = 0; k < n; ++k) {
        w[k] = mid + mhz(30.0) * (k - (n - 1) / 2) / (n - 1);
        const DephasingStark ds = dephasing_and_stark(p, {w[k], 1.0});
        gd[k] = ds.gamma_d;
        dq[k] = ds.delta_q;
        CHECK(ds.gamma_d >= 0.0);
        gd_max = std::max(gd_max, ds.gamma_d);
        if (ds.delta_q < dq_min) {
            dq_min = ds.delta_q;
            k_dqmin = k;
        }
    }
    // symmetry about the midpoint
    for (int k = 0; k < n / 2; k += 37) {
        CHECK(gd[k] == doctest::Approx(gd[n - 1 - k]).epsilon(1e-9));
        CHECK(dq[k] == doctest::Approx(dq[n - 1 - k]).epsilon(1e-9));
    }
    // delta_q is negative between the two lines and positive far outside;
    // its symmetric minimum pair sits where kappa^2 + 4 x^2 - chi^2 =
    // -2 kappa chi (x measured from the midpoint)
    CHECK(dephasing_and_stark(p, {mid, 1.0}).delta_q < 0.0);
    CHECK(dephasing_and_stark(p, {mid + mhz(15.0), 1.0}).delta_q > 0.0);
    CHECK(dephasing_and_stark(p, {mid - mhz(15.0), 1.0}).delta_q > 0.0);
    const double x_min_expected =
        0.5 * std::sqrt(p.chi_cq * p.chi_cq - p.kappa * p.kappa -
                        2.0 * p.kappa * p.chi_cq);
    CHECK(std::abs(std::abs(w[k_dqmin] - mid) - x_min_expected) < mhz(0.05));
    // Gamma_d peaks near the two cavity lines, and the midpoint is a dip
    const DephasingStark at_mid = dephasing_and_stark(p, {mid, 1.0});
    const DephasingStark at_g = dephasing_and_stark(p, {0.0, 1.0});
    const DephasingStark at_e = dephasing_and_stark(p, {-p.chi_cq, 1.0});
    CHECK(at_g.gamma_d > 10.0 * at_mid.gamma_d);
    CHECK(at_e.gamma_d > 10.0 * at_mid.gamma_d);
    CHECK(gd_max <= 1.05 * std::max(at_g.gamma_d, at_e.gamma_d));
}

TEST_CASE("transmission fit: exact recovery on noiseless curves") {
    const NodeParams a = cavity_frame_node(8.3, 1.0);
    const NodeParams b = cavity_frame_node(3.3, 1.0);
    const auto wa = freq_grid(a, 41, mhz(30.0));
    const auto wb = freq_grid(b, 41, mhz(30.0));
    const TransmissionCurves ca = synthesize_line_curves(a, 1.0, wa);
    const TransmissionCurves cb = synthesize_line_curves(b, 0.85, wb);
    const TransmissionFit fit = fit_transmission(ca, cb);
    CHECK(std::abs(fit.transmission - 0.85) < 1e-6);
    CHECK(std::abs(fit.alice.chi_cq - a.chi_cq) < 1e-5 * a.chi_cq);
    CHECK(std::abs(fit.bob.kappa - b.kappa) < 1e-5 * b.kappa);
    CHECK(fit.alice.residual < 1e-10);
    CHECK_FALSE(fit.ill_conditioned);
}

TEST_CASE("identical curves fit to T = 1") {
    const NodeParams a = cavity_frame_node(8.3, 1.0);
    const auto w = freq_grid(a, 25, mhz(25.0));
    const TransmissionCurves c = synthesize_line_curves(a, 0.7, w);
    const TransmissionFit fit = fit_transmission(c, c);
    CHECK(fit.transmission == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transmission fit under 2 percent multiplicative noise") {
    const NodeParams a = cavity_frame_node(8.3, 1.0);
    const NodeParams b = cavity_frame_node(3.3, 1.0);
    const auto wa = freq_grid(a, 41, mhz(30.0));
    const auto wb = freq_grid(b, 41, mhz(30.0));
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> noise(0.0, 0.02);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        TransmissionCurves ca = synthesize_line_curves(a, 1.0, wa);
        TransmissionCurves cb = synthesize_line_curves(b, 0.85, wb);
        for (auto* curves : {&ca, &cb})
            for (auto* v : {&curves->gamma_d_per_p0, &curves->delta_q_per_p0})
                for (double& x : *v) x *= 1.0 + noise(rng);
        const TransmissionFit fit = fit_transmission(ca, cb);
        worst = std::max(worst, std::abs(fit.transmission - 0.85));
    }
    CHECK(worst < 0.05);
}

TEST_CASE("ill-conditioning flagged when the span is below kappa") {
    const NodeParams a = cavity_frame_node(2.0, 8.0);
    std::vector<double> w;
    for (int k = 0; k < 12; ++k) w.push_back(mhz(-2.0) + mhz(4.0) * k / 11.0);
    const TransmissionCurves c = synthesize_line_curves(a, 1.0, w);
    const TransmissionFit fit = fit_transmission(c, c);
    CHECK(fit.ill_conditioned);
}

TEST_CASE("too few frequency samples are rejected") {
    const NodeParams a = cavity_frame_node(8.3, 1.0);
    const auto w = freq_grid(a, 5, mhz(30.0));
    const TransmissionCurves c = synthesize_line_curves(a, 1.0, w);
    CHECK_THROWS_AS(fit_transmission(c, c), ConfigError);
}

TEST_CASE("rabi fit: noiseless round trip at 1e-6 relative") {
    const double kappa = mhz(1.0);
    const double g_true = mhz(0.23);
    const RabiParams rp = RabiParams::make(g_true, kappa, 0.0);
    std::vector<RabiSample> samples;
    for (int k = 0; k <= 60; ++k) {
        const double t = 4.0 * k / 60.0;
        samples.push_back({t, rabi_excited_population(rp, t)});
    }
    const RabiFit fit = fit_rabi_strength(samples, kappa, 0.0);
    CHECK_FALSE(fit.flat_landscape);
    CHECK(std::abs(fit.g - g_true) < 1e-6 * g_true);
    CHECK(fit.residual < 1e-9);
}

TEST_CASE("rabi fit: flat data returns zero with a flag") {
    std::vector<RabiSample> samples;
    for (int k = 0; k <= 20; ++k) samples.push_back({0.2 * k, 1.0});
    const RabiFit fit = fit_rabi_strength(samples, mhz(1.0), 0.0);
    CHECK(fit.flat_landscape);
    CHECK(fit.g == 0.0);
}

TEST_CASE("fitted g depends linearly on xi2 with slope chi_cq xi1") {
    // sweep the cavity-pump amplitude, synthesize the population curves from
    // the analytic law via the model's drive strengths, refit each curve
    const NodeParams alice = alice_paper_defaults();
    const double xi1 = 0.11;
    const double slope_expected = alice.chi_cq * xi1;
    double max_rel_err = 0.0;
    for (double xi2 : {0.05, 0.10, 0.15, 0.20, 0.25}) {
        const DriveStrengths d = drive_strengths(alice, {xi1, xi2});
        const RabiParams rp =
            RabiParams::make(std::abs(d.g_s), alice.kappa, 0.0);
        std::vector<RabiSample> samples;
        for (int k = 0; k <= 80; ++k) {
            const double t = 6.0 * k / 80.0;
            samples.push_back({t, rabi_excited_population(rp, t)});
        }
        const RabiFit fit = fit_rabi_strength(samples, alice.kappa, 0.0);
        const double slope = fit.g / xi2;
        max_rel_err = std::max(max_rel_err,
                               std::abs(slope - slope_expected) / slope_expected);
    }
    CHECK(max_rel_err < 0.01);
}

TEST_CASE("non-convergence on model-free data raises a diagnostic") {
    TransmissionCurves junk;
    for (int k = 0; k < 16; ++k) {
        junk.omega.push_back(mhz(-20.0 + 2.5 * k));
        // alternating spikes no Lorentzian pair can follow
        junk.gamma_d_per_p0.push_back(k % 2 ? 5.0 : -5.0);
        junk.delta_q_per_p0.push_back(k % 3 ? -4.0 : 4.0);
    }
    CHECK_THROWS_AS(fit_transmission(junk, junk), NumericalError);
}
