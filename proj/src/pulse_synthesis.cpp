#include "pitchcatch/pulse_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pitchcatch/csv.hpp"

namespace pitchcatch {

void WavepacketSpec::validate() const {
    if (!(sigma_or_gamma > 0.0))
        throw ConfigError("wavepacket: width parameter must be > 0");
    if (!(duration > 0.0)) throw ConfigError("wavepacket: duration must be > 0");
    if (!(n_phot > 0.0 && n_phot <= 1.0))
        throw ConfigError("wavepacket: n_phot must lie in (0, 1]");
}

double SampledEnvelope::integrated_flux() const {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < amplitude.size(); ++k)
        s += 0.5 * (amplitude[k] * amplitude[k] + amplitude[k + 1] * amplitude[k + 1]);
    return s * dt;
}

namespace {

struct EnvelopeFn {
    const WavepacketSpec& w;
    double center;
    double scale = 1.0;

    double value(double t) const {
        const double u = t - center;
        if (w.shape == WavepacketShape::gaussian) {
            const double sig = w.sigma_or_gamma;
            return scale * std::exp(-u * u / (4.0 * sig * sig));
        }
        return scale * std::exp(-w.sigma_or_gamma * std::abs(u));
    }

    double deriv(double t) const {
        const double u = t - center;
        if (w.shape == WavepacketShape::gaussian)
            return value(t) * (-u / (2.0 * w.sigma_or_gamma * w.sigma_or_gamma));
        if (u == 0.0) return 0.0;  // kink of the exponential shape
        return value(t) * (u > 0.0 ? -w.sigma_or_gamma : w.sigma_or_gamma);
    }
};

}  // namespace

SampledEnvelope sample_envelope(const WavepacketSpec& w, double dt) {
    w.validate();
    if (!(dt > 0.0)) throw ConfigError("sample_envelope: dt must be > 0");
    if (dt > 1e-3 * w.duration)
        throw ConfigError("sample_envelope: dt must not exceed 1e-3 * duration");
    const auto n = static_cast<std::size_t>(std::lround(w.duration / dt)) + 1;

    SampledEnvelope env;
    env.dt = dt;
    env.amplitude.resize(n);
    env.derivative.resize(n);
    EnvelopeFn fn{w, 0.5 * env.dt * static_cast<double>(n - 1)};
    for (std::size_t k = 0; k < n; ++k) env.amplitude[k] = fn.value(k * dt);
    double flux = env.integrated_flux();
    fn.scale = std::sqrt(w.n_phot / flux);
    for (std::size_t k = 0; k < n; ++k) {
        env.amplitude[k] = fn.value(k * dt);
        env.derivative[k] = fn.deriv(k * dt);
    }
    env.scale = fn.scale;
    return env;
}

Complex ControlSequence::at(double t) const {
    if (samples.empty() || t < 0.0) return 0.0;
    const double x = t / dt;
    const auto k = static_cast<std::size_t>(x);
    if (k + 1 >= samples.size())
        return k < samples.size() ? samples.back() : Complex(0.0);
    const double w = x - static_cast<double>(k);
    return (1.0 - w) * samples[k] + w * samples[k + 1];
}

double ControlSequence::peak_magnitude() const {
    double p = 0.0;
    for (const Complex& g : samples) p = std::max(p, std::abs(g));
    return p;
}

void ControlSequence::write_csv(std::ostream& os) const {
    os << "t_us,re_g_radperus,im_g_radperus\n";
    for (std::size_t k = 0; k < samples.size(); ++k) {
        os << csv_num(k * dt) << ',' << csv_num(samples[k].real()) << ','
           << csv_num(samples[k].imag()) << '\n';
    }
}

namespace {

// Scalar synthesis core. Both roles reduce to stepping
//     dq/dt = -conj(N(t)) E(t) / (kappa conj(q))
// with N = dE/dt + i delta E -+ (kappa/2) E (catch: -, pitch: +), after which
// the control is read off as
//     catch: g = i conj(N) / (sqrt(kappa) conj(q))
//     pitch: g = i N / (sqrt(kappa) q)        (squeeze-frame conjugate)
struct ScalarSynth {
    double kappa;
    double delta;
    double half_kappa_sign;  // -0.5 catch, +0.5 pitch

    Complex n_of(double e, double ed) const {
        return Complex(ed + half_kappa_sign * kappa * e, delta * e);
    }
    Complex qdot(double e, double ed, Complex q) const {
        return -std::conj(n_of(e, ed)) * e / (kappa * std::conj(q));
    }
};

}  // namespace

static ControlSequence synthesize(const WavepacketSpec& w, double kappa,
                                  double delta, double dt, ControlRole role,
                                  double fraction, const SynthesisOptions& opts) {
    if (!(kappa > 0.0)) throw ConfigError("synthesize: kappa must be > 0");
    const SampledEnvelope env = sample_envelope(w, dt);
    const std::size_t n = env.amplitude.size();
    const double n_phot = env.integrated_flux();

    // Target envelope scale and initial scalar amplitude. The catch leaves the
    // envelope untouched and regularizes the startup with q0 = sqrt(n/ratio);
    // the full pitch trims the emitted flux to 0.99 n so the control stays
    // bounded as the qubit empties, and a partial pitch emits fraction * n.
    double env_scale = 1.0;
    Complex q;
    if (role == ControlRole::catch_) {
        q = std::sqrt(n_phot / opts.q0_ratio);
    } else {
        env_scale = (fraction == 1.0) ? std::sqrt(0.99) : std::sqrt(fraction);
        q = std::sqrt(n_phot);
    }

    // The envelope is analytic, so midpoint values are evaluated exactly.
    EnvelopeFn fn{w, 0.5 * env.duration(), env_scale * env.scale};

    ScalarSynth sys{kappa, delta,
                    role == ControlRole::catch_ ? -0.5 : 0.5};
    const double sqk = std::sqrt(kappa);
    const double q_floor = 1e-3 * std::sqrt(n_phot);

    ControlSequence cs;
    cs.dt = dt;
    cs.delta = delta;
    cs.role = role;
    cs.fraction = role == ControlRole::catch_ ? 1.0 : fraction;
    cs.samples.resize(n);

    for (std::size_t k = 0; k < n; ++k) {
        const double t = k * dt;
        const double e = env_scale * env.amplitude[k];
        const double ed = env_scale * env.derivative[k];
        if (std::abs(q) < q_floor)
            throw NumericalError(
                "synthesis: scalar amplitude q crossed zero at t = " +
                std::to_string(t) + " us (control divergence)");
        const Complex nk = sys.n_of(e, ed);
        Complex g;
        if (role == ControlRole::catch_)
            g = Complex(0.0, 1.0) * std::conj(nk) / (sqk * std::conj(q));
        else
            g = Complex(0.0, 1.0) * nk / (sqk * q);
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
            throw NumericalError("synthesis: non-finite control sample at t = " +
                                 std::to_string(t) + " us");
        if (std::abs(g) > opts.g_max)
            throw NumericalError(
                "synthesis: |g| = " + std::to_string(std::abs(g)) +
                " rad/us at t = " + std::to_string(t) +
                " us exceeds g_max = " + std::to_string(opts.g_max) +
                " rad/us (wavepacket too fast for the cavity linewidth)");
        cs.samples[k] = g;
        if (k + 1 == n) break;

        const double tm = t + 0.5 * dt;
        const double em = fn.value(tm), edm = fn.deriv(tm);
        const double e1 = env_scale * env.amplitude[k + 1];
        const double ed1 = env_scale * env.derivative[k + 1];
        const Complex k1 = sys.qdot(e, ed, q);
        const Complex k2 = sys.qdot(em, edm, q + 0.5 * dt * k1);
        const Complex k3 = sys.qdot(em, edm, q + 0.5 * dt * k2);
        const Complex k4 = sys.qdot(e1, ed1, q + dt * k3);
        q += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return cs;
}

ControlSequence synthesize_catch(const WavepacketSpec& w, double kappa,
                                 double delta, double dt,
                                 const SynthesisOptions& opts) {
    return synthesize(w, kappa, delta, dt, ControlRole::catch_, 1.0, opts);
}

ControlSequence synthesize_pitch(const WavepacketSpec& w, double kappa,
                                 double delta, double fraction, double dt,
                                 const SynthesisOptions& opts) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw ConfigError("synthesize_pitch: fraction must lie in (0, 1]");
    return synthesize(w, kappa, delta, dt, ControlRole::pitch, fraction, opts);
}

std::vector<Complex> emitted_waveform(const ControlSequence& cs, double kappa,
                                      Complex initial_q) {
    if (cs.role != ControlRole::pitch)
        throw ConfigError("emitted_waveform: control sequence must be a pitch");
    const double dt = cs.dt;
    const double sqk = std::sqrt(kappa);
    Complex u = initial_q;  // scalar qubit amplitude in the emission frame
    Complex v = 0.0;        // cavity amplitude
    std::vector<Complex> out(cs.samples.size());

    // du/dt = -i gt v ; dv/dt = -i delta v - i conj(gt) u - kappa/2 v,
    // with gt the emission-frame control, the conjugate of the stored
    // squeeze-strength samples.
    auto rhs = [&](Complex uu, Complex vv, Complex gt) {
        return std::pair<Complex, Complex>{
            Complex(0.0, -1.0) * gt * vv,
            Complex(0.0, -1.0) * (cs.delta * vv + std::conj(gt) * uu) -
                0.5 * kappa * vv};
    };
    for (std::size_t k = 0; k < cs.samples.size(); ++k) {
        out[k] = sqk * v;
        if (k + 1 == cs.samples.size()) break;
        const Complex g1 = std::conj(cs.samples[k]);
        const Complex gm = std::conj(cs.at((k + 0.5) * dt));
        const Complex g2 = std::conj(cs.samples[k + 1]);
        const auto [a1, b1] = rhs(u, v, g1);
        const auto [a2, b2] = rhs(u + 0.5 * dt * a1, v + 0.5 * dt * b1, gm);
        const auto [a3, b3] = rhs(u + 0.5 * dt * a2, v + 0.5 * dt * b2, gm);
        const auto [a4, b4] = rhs(u + dt * a3, v + dt * b3, g2);
        u += (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        v += (dt / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    }
    return out;
}

}  // namespace pitchcatch
