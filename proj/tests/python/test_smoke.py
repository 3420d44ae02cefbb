"""Python-facing smoke tests: the bindings load and the main operations give
the same numbers the C++ suites pin down."""

import math

import numpy as np
import pytest

import pitchcatch as pc


def test_import_and_version():
    assert pc.__version__
    assert hasattr(pc, "transfer_experiment")


def test_stark_shift_value():
    alice = pc.alice_paper_defaults()
    dq, dc = pc.stark_shifts(alice, pc.PumpAmplitudes(0.11, 0.0))
    assert pc.to_mhz(dq) == pytest.approx(-4.84, abs=1e-9)
    assert dc == pytest.approx(pc.mhz(-8.3) * 0.11**2, abs=1e-12)


def test_drive_strengths_and_resonance():
    alice = pc.alice_paper_defaults()
    g_s, g_c = pc.drive_strengths(alice, pc.PumpAmplitudes(0.11, 0.25))
    assert abs(g_s) == pytest.approx(alice.chi_cq * 0.11 * 0.25)
    w2 = pc.resonance_pump_frequency(
        alice, pc.PumpAmplitudes(0.0, 0.0), alice.omega_q - pc.mhz(100.0),
        pc.SidebandBranch.squeeze)
    assert w2 == pytest.approx(alice.omega_c - alice.chi_cq + pc.mhz(100.0))


def test_rabi_critical_point():
    kappa = pc.TWO_PI
    rp = pc.RabiParams.make(kappa / 4.0, kappa, 0.0)
    assert pc.rabi_excited_population(rp, 4.0 / kappa) == pytest.approx(
        4.0 * math.exp(-2.0), rel=1e-9)
    with pytest.raises(ValueError):
        pc.rabi_excited_population(rp, -1.0)


def test_operators_are_numpy():
    ca = pc.mode_operator(pc.Mode.cavity_a)
    assert ca.shape == (16, 16)
    assert np.max(np.abs(ca @ ca)) == 0.0
    zz = pc.two_qubit_pauli(pc.Pauli.Z, pc.Pauli.Z)
    assert np.trace(zz @ zz).real == pytest.approx(16.0)


def test_synthesis_round_trip():
    w = pc.WavepacketSpec()
    w.sigma_or_gamma = 0.45
    w.duration = 3.6
    opts = pc.SynthesisOptions()
    opts.g_max = pc.TWO_PI * 0.6
    pitch = pc.synthesize_pitch(w, pc.TWO_PI, 0.0, 1.0, 1e-3, opts)
    wf = np.array(pc.emitted_waveform(pitch, pc.TWO_PI, 1.0))
    flux = np.sum(np.abs(wf) ** 2) * pitch.dt
    assert flux == pytest.approx(0.99, abs=2e-3)


def test_tomography_bell():
    gg = pc.basis_state(0, 0, 0, 0)
    table = pc.pauli_expectations(gg)
    assert table["ZZ"] == pytest.approx(1.0)
    assert table["ZI"] == pytest.approx(-1.0)
    rho2q = pc.reconstruct_density_matrix(table)
    assert pc.bell_fidelity(rho2q) == pytest.approx(0.5)
    assert pc.apply_readout_error(1.0, 0.955, 0.94) == pytest.approx(0.94)


def test_small_cascaded_transfer():
    # quick end-to-end sanity run: short packet, ideal channel
    setup = pc.transfer_paper_setup()
    setup.wavepacket.sigma_or_gamma = 0.3
    setup.wavepacket.duration = 2.4
    setup.synth.g_max = pc.TWO_PI * 2.0
    setup.channel.transmission = 1.0
    setup.imperfections = pc.ImperfectionSet.none()
    setup.readout_enabled = False
    setup.sample_every = 40
    res = pc.transfer_experiment(setup)
    assert res.final_p_e_b > 0.9
    assert res.trajectory.max_trace_err() < 1e-9


def test_calibration_fit_round_trip():
    node = pc.NodeParams()
    node.omega_c = 0.0
    node.chi_cq = pc.mhz(8.3)
    node.kappa = pc.mhz(1.0)
    node.T1 = node.T2 = 1.0
    omegas = [-pc.mhz(15.0) - node.chi_cq +
              (pc.mhz(30.0) + node.chi_cq) * k / 40.0 for k in range(41)]
    curves_a = pc.synthesize_line_curves(node, 1.0, omegas)
    curves_b = pc.synthesize_line_curves(node, 0.85, omegas)
    fit = pc.fit_transmission(curves_a, curves_b)
    assert fit.transmission == pytest.approx(0.85, abs=1e-6)
