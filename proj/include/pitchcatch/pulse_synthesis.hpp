#pragma once

#include <iosfwd>
#include <vector>

#include "pitchcatch/types.hpp"

namespace pitchcatch {

enum class WavepacketShape { gaussian, symmetric_exponential };

/// Target traveling-mode shape. The *photon flux* |envelope|^2 carries the
/// shape: a Gaussian flux with standard deviation sigma, or a symmetric
/// exponential flux with amplitude rate gamma, centered at duration/2 and
/// normalized so the integrated flux equals n_phot.
struct WavepacketSpec {
    WavepacketShape shape = WavepacketShape::gaussian;
    double sigma_or_gamma = 0.8;     ///< us (gaussian sigma) or 1/us (exponential)
    double duration = 6.4;           ///< total window T (us)
    double n_phot = 1.0;             ///< integrated photon number, in (0, 1]
    double carrier_detuning = 0.0;   ///< rad/us, relative to the node's dressed cavity

    void validate() const;
};

/// Real envelope samples on a uniform grid together with the analytic
/// time derivative (the synthesis equations need dE/dt pointwise).
struct SampledEnvelope {
    double dt = 0.0;
    std::vector<double> amplitude;
    std::vector<double> derivative;
    double scale = 1.0;  ///< normalization factor applied to the raw shape

    double duration() const { return dt * (amplitude.size() - 1); }
    /// Trapezoidal integral of |amplitude|^2.
    double integrated_flux() const;
};

/// Sample and renormalize a wavepacket envelope; integrated flux matches
/// w.n_phot to 1e-9 after truncation to the window.
SampledEnvelope sample_envelope(const WavepacketSpec& w, double dt);

enum class ControlRole { pitch, catch_ };

/// Sampled complex drive strength g(t). For a catch this is the conversion
/// strength; for a pitch the squeezing strength, both in the interaction
/// frame used by the cascaded simulation.
struct ControlSequence {
    double dt = 0.0;
    std::vector<Complex> samples;
    double delta = 0.0;      ///< node detuning used during synthesis (rad/us)
    ControlRole role = ControlRole::pitch;
    double fraction = 1.0;   ///< released fraction (1 full, 0.5 half)

    double duration() const { return dt * (samples.size() - 1); }
    /// Linear interpolation; zero outside the window.
    Complex at(double t) const;
    double peak_magnitude() const;

    /// CSV columns: t_us, re_g_radperus, im_g_radperus.
    void write_csv(std::ostream& os) const;
};

struct SynthesisOptions {
    /// Ceiling on |g|; synthesis fails with a diagnostic above it.
    double g_max = 0.25 * kTwoPi;
    /// Divergence regularization n_phot / q0^2 for the catch startup (and,
    /// mirrored, the residual left by a full pitch).
    double q0_ratio = 100.0;
};

/// Control g(t) that absorbs a traveling wavepacket of the given shape into
/// a node with cavity linewidth kappa, imposing zero reflected field at every
/// step. Scale-invariant in n_phot: only the shape matters.
ControlSequence synthesize_catch(const WavepacketSpec& w, double kappa,
                                 double delta, double dt,
                                 const SynthesisOptions& opts = {});

/// Control g(t) that releases a wavepacket of the given shape. fraction = 1
/// emits 0.99 n_phot (residual regularizes the end-of-pitch divergence);
/// fraction = 0.5 emits n_phot / 2 and leaves the qubit in an equal
/// superposition.
ControlSequence synthesize_pitch(const WavepacketSpec& w, double kappa,
                                 double delta, double fraction, double dt,
                                 const SynthesisOptions& opts = {});

/// Integrate the single-node scalar dynamics under a pitch control and return
/// the emitted field c_out(t) = sqrt(kappa) c(t), for round-trip checks of the
/// synthesized pulse against its target envelope.
std::vector<Complex> emitted_waveform(const ControlSequence& cs, double kappa,
                                      Complex initial_q);

}  // namespace pitchcatch
