#include "pitchcatch/experiments.hpp"

#include <cmath>

namespace pitchcatch {

namespace {

ExperimentSetup paper_common() {
    ExperimentSetup s;
    s.alice = alice_paper_defaults();
    s.bob = bob_paper_defaults();
    s.channel.transmission = 0.85;
    s.delta_a = kTwoPi * 0.6;
    s.imperfections = ImperfectionSet::from_nodes(s.alice, s.bob);
    // The detuned pitch compensating the 600 kHz cavity mismatch peaks near
    // 2pi x 0.5 rad/us, so the presets raise the guard above the generic
    // default while staying inside the measured drive-strength range.
    s.synth.g_max = kTwoPi * 0.6;
    return s;
}

}  // namespace

ExperimentSetup transfer_paper_setup() {
    ExperimentSetup s = paper_common();
    s.wavepacket.shape = WavepacketShape::gaussian;
    s.wavepacket.sigma_or_gamma = 0.8;
    s.wavepacket.duration = 8.0 * 0.8;
    s.wavepacket.n_phot = 1.0;
    s.pitch_fraction = 1.0;
    return s;
}

ExperimentSetup entangle_paper_setup() {
    ExperimentSetup s = paper_common();
    s.wavepacket.shape = WavepacketShape::gaussian;
    s.wavepacket.sigma_or_gamma = 0.45;
    s.wavepacket.duration = 8.0 * 0.45;
    s.wavepacket.n_phot = 1.0;
    s.pitch_fraction = 0.5;
    return s;
}

SimulationConfig build_simulation(const ExperimentSetup& setup) {
    SimulationConfig cfg;
    cfg.dt = setup.dt_sim;
    cfg.sample_every = setup.sample_every;
    cfg.node_a = setup.alice;
    cfg.node_b = setup.bob;
    cfg.channel = setup.channel;
    cfg.imperfections = setup.imperfections;
    cfg.controls_a =
        synthesize_pitch(setup.wavepacket, setup.alice.kappa, setup.delta_a,
                         setup.pitch_fraction, setup.dt_synth, setup.synth);
    cfg.controls_b = synthesize_catch(setup.wavepacket, setup.bob.kappa, 0.0,
                                      setup.dt_synth, setup.synth);
    cfg.initial_state = DensityMatrix16::basis(0, 0, 0, 0).rho;
    return cfg;
}

TransferResult transfer_experiment(const ExperimentSetup& setup) {
    SimulationConfig cfg = build_simulation(setup);
    TransferResult res{0.0, 0.0, 0.0, evolve(cfg), cfg.controls_a, cfg.controls_b};
    res.final_p_e_a = res.trajectory.p_e_a.back();
    res.final_p_e_b = res.trajectory.p_e_b.back();
    res.detected_p_e_b =
        setup.readout_enabled
            ? apply_readout_error(res.final_p_e_b, setup.bob.readout_fidelity_g,
                                  setup.bob.readout_fidelity_e)
            : res.final_p_e_b;
    return res;
}

EntangleResult entangle_experiment(const ExperimentSetup& setup) {
    SimulationConfig cfg = build_simulation(setup);
    EntangleResult res;
    res.trajectory = evolve(cfg);
    res.pitch = cfg.controls_a;
    res.catch_control = cfg.controls_b;
    const Matrix& rho = res.trajectory.final_state();

    res.final_p_e_a = res.trajectory.p_e_a.back();
    res.final_p_e_b = res.trajectory.p_e_b.back();
    res.table_ideal = pauli_expectations(rho);
    res.frame_angle = std::isnan(setup.frame_angle) ? differential_phase(rho)
                                                    : setup.frame_angle;
    res.table_rotated = rotate_bob_frame(res.table_ideal, res.frame_angle);
    const ReadoutModel rm = setup.readout_enabled
                                ? ReadoutModel::from_nodes(setup.alice, setup.bob)
                                : ReadoutModel::perfect();
    res.table_measured = apply_readout_to_table(res.table_rotated, rm);
    res.rho2q = reconstruct_density_matrix(res.table_measured);
    res.bell_fidelity_measured = bell_fidelity(res.rho2q);
    res.bell_fidelity_perfect_readout =
        bell_fidelity(reconstruct_density_matrix(res.table_rotated));
    return res;
}

}  // namespace pitchcatch
