#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pitchcatch/calibration.hpp"
#include "pitchcatch/cascaded.hpp"
#include "pitchcatch/core.hpp"
#include "pitchcatch/experiments.hpp"
#include "pitchcatch/model.hpp"
#include "pitchcatch/pulse_synthesis.hpp"
#include "pitchcatch/semiclassical.hpp"
#include "pitchcatch/tomography.hpp"

namespace py = pybind11;
using namespace pitchcatch;

namespace {

py::dict table_to_dict(const PauliTable& t) {
    py::dict d;
    for (Pauli a : kPaulis)
        for (Pauli b : kPaulis) {
            const std::string label{pauli_label(a), pauli_label(b)};
            d[py::str(label)] = t.at(a, b);
        }
    return d;
}

PauliTable table_from_dict(const py::dict& d) {
    PauliTable t;
    auto index = [](char c) {
        switch (c) {
            case 'I': return Pauli::I;
            case 'X': return Pauli::X;
            case 'Y': return Pauli::Y;
            case 'Z': return Pauli::Z;
        }
        throw ConfigError("bad Pauli label");
    };
    for (const auto& item : d) {
        const std::string key = py::cast<std::string>(item.first);
        if (key.size() != 2) throw ConfigError("bad Pauli label '" + key + "'");
        t.at(index(key[0]), index(key[1])) = py::cast<double>(item.second);
    }
    return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "shaped-photon pitch-and-catch simulator between two cascaded "
              "qubit-cavity nodes";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError",
                                           PyExc_RuntimeError);

    m.attr("TWO_PI") = kTwoPi;
    m.def("mhz", &mhz, "angular frequency (rad/us) from MHz");
    m.def("to_mhz", &to_mhz, "MHz from angular frequency (rad/us)");

    // ---- core ----
    py::enum_<Mode>(m, "Mode")
        .value("qubit_a", Mode::qubit_a)
        .value("cavity_a", Mode::cavity_a)
        .value("cavity_b", Mode::cavity_b)
        .value("qubit_b", Mode::qubit_b);
    py::enum_<Pauli>(m, "Pauli")
        .value("I", Pauli::I)
        .value("X", Pauli::X)
        .value("Y", Pauli::Y)
        .value("Z", Pauli::Z);
    m.def("basis_index", &basis_index, py::arg("q_a"), py::arg("n_a"),
          py::arg("n_b"), py::arg("q_b"));
    m.def("mode_operator", &mode_operator);
    m.def("number_operator", &number_operator);
    m.def("pauli_matrix", &pauli_matrix);
    m.def("two_qubit_pauli", &two_qubit_pauli);
    m.def("basis_state",
          [](int qa, int na, int nb, int qb) {
              return DensityMatrix16::basis(qa, na, nb, qb).rho;
          },
          py::arg("q_a"), py::arg("n_a"), py::arg("n_b"), py::arg("q_b"));

    // ---- model ----
    py::class_<NodeParams>(m, "NodeParams")
        .def(py::init<>())
        .def_readwrite("omega_q", &NodeParams::omega_q)
        .def_readwrite("omega_c", &NodeParams::omega_c)
        .def_readwrite("kappa", &NodeParams::kappa)
        .def_readwrite("chi_cq", &NodeParams::chi_cq)
        .def_readwrite("chi_qq", &NodeParams::chi_qq)
        .def_readwrite("chi_cc", &NodeParams::chi_cc)
        .def_readwrite("T1", &NodeParams::T1)
        .def_readwrite("T2", &NodeParams::T2)
        .def_readwrite("readout_fidelity_g", &NodeParams::readout_fidelity_g)
        .def_readwrite("readout_fidelity_e", &NodeParams::readout_fidelity_e)
        .def("gamma1", &NodeParams::gamma1)
        .def("gamma_phi", &NodeParams::gamma_phi)
        .def("validate", &NodeParams::validate, py::arg("name") = "node");
    m.def("alice_paper_defaults", &alice_paper_defaults);
    m.def("bob_paper_defaults", &bob_paper_defaults);

    py::class_<PumpAmplitudes>(m, "PumpAmplitudes")
        .def(py::init([](Complex xi1, Complex xi2) {
                 return PumpAmplitudes{xi1, xi2};
             }),
             py::arg("xi1"), py::arg("xi2"))
        .def_readwrite("xi1", &PumpAmplitudes::xi1)
        .def_readwrite("xi2", &PumpAmplitudes::xi2);
    m.def("stark_shifts",
          [](const NodeParams& p, const PumpAmplitudes& a) {
              const StarkShifts s = stark_shifts(p, a);
              return py::make_tuple(s.delta_q, s.delta_c);
          });
    m.def("drive_strengths",
          [](const NodeParams& p, const PumpAmplitudes& a) {
              const DriveStrengths d = drive_strengths(p, a);
              return py::make_tuple(d.g_s, d.g_c);
          });
    m.def("cavity_self_kerr_shift", &cavity_self_kerr_shift);
    py::enum_<SidebandBranch>(m, "SidebandBranch")
        .value("squeeze", SidebandBranch::squeeze)
        .value("convert", SidebandBranch::convert);
    m.def("resonance_pump_frequency", &resonance_pump_frequency);

    // ---- semiclassical ----
    py::class_<RabiParams>(m, "RabiParams")
        .def_static("make", &RabiParams::make, py::arg("g"), py::arg("kappa"),
                    py::arg("delta"))
        .def_readonly("g", &RabiParams::g)
        .def_readonly("kappa", &RabiParams::kappa)
        .def_readonly("delta", &RabiParams::delta)
        .def_readonly("gamma", &RabiParams::gamma)
        .def_readonly("lambda_", &RabiParams::lambda);
    m.def("rabi_excited_population", &rabi_excited_population);
    m.def("coherent_trajectory",
          [](const RabiParams& rp, Complex alpha0,
             const std::vector<double>& grid) {
              std::vector<std::pair<Complex, Complex>> out;
              for (const CoherentPoint& p :
                   coherent_trajectory(rp, alpha0, grid))
                  out.emplace_back(p.alpha, p.beta);
              return out;
          });

    // ---- pulse synthesis ----
    py::enum_<WavepacketShape>(m, "WavepacketShape")
        .value("gaussian", WavepacketShape::gaussian)
        .value("symmetric_exponential", WavepacketShape::symmetric_exponential);
    py::class_<WavepacketSpec>(m, "WavepacketSpec")
        .def(py::init<>())
        .def_readwrite("shape", &WavepacketSpec::shape)
        .def_readwrite("sigma_or_gamma", &WavepacketSpec::sigma_or_gamma)
        .def_readwrite("duration", &WavepacketSpec::duration)
        .def_readwrite("n_phot", &WavepacketSpec::n_phot)
        .def_readwrite("carrier_detuning", &WavepacketSpec::carrier_detuning)
        .def("validate", &WavepacketSpec::validate);
    py::enum_<ControlRole>(m, "ControlRole")
        .value("pitch", ControlRole::pitch)
        .value("catch_", ControlRole::catch_);
    py::class_<ControlSequence>(m, "ControlSequence")
        .def(py::init<>())
        .def_readwrite("dt", &ControlSequence::dt)
        .def_readwrite("samples", &ControlSequence::samples)
        .def_readwrite("delta", &ControlSequence::delta)
        .def_readwrite("role", &ControlSequence::role)
        .def_readwrite("fraction", &ControlSequence::fraction)
        .def("duration", &ControlSequence::duration)
        .def("at", &ControlSequence::at)
        .def("peak_magnitude", &ControlSequence::peak_magnitude);
    py::class_<SynthesisOptions>(m, "SynthesisOptions")
        .def(py::init<>())
        .def_readwrite("g_max", &SynthesisOptions::g_max)
        .def_readwrite("q0_ratio", &SynthesisOptions::q0_ratio);
    m.def("synthesize_catch", &synthesize_catch, py::arg("wavepacket"),
          py::arg("kappa"), py::arg("delta"), py::arg("dt"),
          py::arg("options") = SynthesisOptions{});
    m.def("synthesize_pitch", &synthesize_pitch, py::arg("wavepacket"),
          py::arg("kappa"), py::arg("delta"), py::arg("fraction"),
          py::arg("dt"), py::arg("options") = SynthesisOptions{});
    m.def("emitted_waveform", &emitted_waveform, py::arg("control"),
          py::arg("kappa"), py::arg("initial_q"));
    m.def("sample_envelope",
          [](const WavepacketSpec& w, double dt) {
              const SampledEnvelope env = sample_envelope(w, dt);
              return py::make_tuple(env.dt, env.amplitude, env.derivative);
          });

    // ---- cascaded ----
    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init<>())
        .def_readwrite("transmission", &ChannelParams::transmission)
        .def_readwrite("propagation_delay", &ChannelParams::propagation_delay);
    py::class_<ImperfectionSet>(m, "ImperfectionSet")
        .def(py::init<>())
        .def_static("from_nodes", &ImperfectionSet::from_nodes)
        .def_static("none", &ImperfectionSet::none)
        .def_readwrite("gamma1_a", &ImperfectionSet::gamma1_a)
        .def_readwrite("gamma1_b", &ImperfectionSet::gamma1_b)
        .def_readwrite("gammaphi_a", &ImperfectionSet::gammaphi_a)
        .def_readwrite("gammaphi_b", &ImperfectionSet::gammaphi_b)
        .def_readwrite("relaxation_a_enabled",
                       &ImperfectionSet::relaxation_a_enabled)
        .def_readwrite("relaxation_b_enabled",
                       &ImperfectionSet::relaxation_b_enabled)
        .def_readwrite("dephasing_a_enabled",
                       &ImperfectionSet::dephasing_a_enabled)
        .def_readwrite("dephasing_b_enabled",
                       &ImperfectionSet::dephasing_b_enabled);
    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init<>())
        .def_readwrite("dt", &SimulationConfig::dt)
        .def_readwrite("sample_every", &SimulationConfig::sample_every)
        .def_readwrite("node_a", &SimulationConfig::node_a)
        .def_readwrite("node_b", &SimulationConfig::node_b)
        .def_readwrite("channel", &SimulationConfig::channel)
        .def_readwrite("controls_a", &SimulationConfig::controls_a)
        .def_readwrite("controls_b", &SimulationConfig::controls_b)
        .def_readwrite("imperfections", &SimulationConfig::imperfections)
        .def_readwrite("initial_state", &SimulationConfig::initial_state);
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("p_e_a", &Trajectory::p_e_a)
        .def_readonly("p_e_b", &Trajectory::p_e_b)
        .def_readonly("n_cav_a", &Trajectory::n_cav_a)
        .def_readonly("n_cav_b", &Trajectory::n_cav_b)
        .def_readonly("zz", &Trajectory::zz)
        .def_readonly("a_out", &Trajectory::a_out)
        .def_readonly("trace_err", &Trajectory::trace_err)
        .def_readonly("lost_flux", &Trajectory::lost_flux)
        .def("final_state", &Trajectory::final_state,
             py::return_value_policy::copy)
        .def("max_trace_err", &Trajectory::max_trace_err);
    m.def("evolve", &evolve);

    // ---- experiments ----
    py::class_<ExperimentSetup>(m, "ExperimentSetup")
        .def(py::init<>())
        .def_readwrite("alice", &ExperimentSetup::alice)
        .def_readwrite("bob", &ExperimentSetup::bob)
        .def_readwrite("channel", &ExperimentSetup::channel)
        .def_readwrite("wavepacket", &ExperimentSetup::wavepacket)
        .def_readwrite("delta_a", &ExperimentSetup::delta_a)
        .def_readwrite("pitch_fraction", &ExperimentSetup::pitch_fraction)
        .def_readwrite("synth", &ExperimentSetup::synth)
        .def_readwrite("dt_synth", &ExperimentSetup::dt_synth)
        .def_readwrite("dt_sim", &ExperimentSetup::dt_sim)
        .def_readwrite("sample_every", &ExperimentSetup::sample_every)
        .def_readwrite("imperfections", &ExperimentSetup::imperfections)
        .def_readwrite("readout_enabled", &ExperimentSetup::readout_enabled)
        .def_readwrite("frame_angle", &ExperimentSetup::frame_angle);
    m.def("transfer_paper_setup", &transfer_paper_setup);
    m.def("entangle_paper_setup", &entangle_paper_setup);
    m.def("build_simulation", &build_simulation);
    py::class_<TransferResult>(m, "TransferResult")
        .def_readonly("final_p_e_a", &TransferResult::final_p_e_a)
        .def_readonly("final_p_e_b", &TransferResult::final_p_e_b)
        .def_readonly("detected_p_e_b", &TransferResult::detected_p_e_b)
        .def_readonly("trajectory", &TransferResult::trajectory)
        .def_readonly("pitch", &TransferResult::pitch)
        .def_readonly("catch_control", &TransferResult::catch_control);
    m.def("transfer_experiment", &transfer_experiment);
    py::class_<EntangleResult>(m, "EntangleResult")
        .def_readonly("trajectory", &EntangleResult::trajectory)
        .def_readonly("frame_angle", &EntangleResult::frame_angle)
        .def_property_readonly("table_ideal",
                               [](const EntangleResult& r) {
                                   return table_to_dict(r.table_ideal);
                               })
        .def_property_readonly("table_rotated",
                               [](const EntangleResult& r) {
                                   return table_to_dict(r.table_rotated);
                               })
        .def_property_readonly("table_measured",
                               [](const EntangleResult& r) {
                                   return table_to_dict(r.table_measured);
                               })
        .def_readonly("rho2q", &EntangleResult::rho2q)
        .def_readonly("bell_fidelity_measured",
                      &EntangleResult::bell_fidelity_measured)
        .def_readonly("bell_fidelity_perfect_readout",
                      &EntangleResult::bell_fidelity_perfect_readout)
        .def_readonly("final_p_e_a", &EntangleResult::final_p_e_a)
        .def_readonly("final_p_e_b", &EntangleResult::final_p_e_b);
    m.def("entangle_experiment", &entangle_experiment);

    // ---- tomography ----
    py::class_<ReadoutModel>(m, "ReadoutModel")
        .def(py::init<>())
        .def_static("from_nodes", &ReadoutModel::from_nodes)
        .def_static("perfect", &ReadoutModel::perfect)
        .def_readwrite("f_g_a", &ReadoutModel::f_g_a)
        .def_readwrite("f_e_a", &ReadoutModel::f_e_a)
        .def_readwrite("f_g_b", &ReadoutModel::f_g_b)
        .def_readwrite("f_e_b", &ReadoutModel::f_e_b);
    m.def("pauli_expectations", [](const Matrix& rho) {
        return table_to_dict(pauli_expectations(rho));
    });
    m.def("apply_readout_error", &apply_readout_error, py::arg("p_sim"),
          py::arg("f_g"), py::arg("f_e"));
    m.def("reconstruct_density_matrix", [](const py::dict& table) {
        return reconstruct_density_matrix(table_from_dict(table));
    });
    m.def("bell_fidelity", &bell_fidelity);
    m.def("measured_table",
          [](const Matrix& rho, const ReadoutModel& rm, double angle) {
              return table_to_dict(measured_table(rho, rm, angle));
          });
    m.def("qubit_reduction", &qubit_reduction);
    m.def("differential_phase", &differential_phase);

    // ---- calibration ----
    py::class_<DressingDrive>(m, "DressingDrive")
        .def(py::init([](double omega, double power) {
                 return DressingDrive{omega, power};
             }),
             py::arg("omega"), py::arg("power"))
        .def_readwrite("omega", &DressingDrive::omega)
        .def_readwrite("power", &DressingDrive::power);
    m.def("dephasing_and_stark",
          [](const NodeParams& p, const DressingDrive& d) {
              const DephasingStark ds = dephasing_and_stark(p, d);
              return py::make_tuple(ds.gamma_d, ds.delta_q);
          });
    py::class_<TransmissionCurves>(m, "TransmissionCurves")
        .def(py::init<>())
        .def_readwrite("omega", &TransmissionCurves::omega)
        .def_readwrite("gamma_d_per_p0", &TransmissionCurves::gamma_d_per_p0)
        .def_readwrite("delta_q_per_p0", &TransmissionCurves::delta_q_per_p0);
    m.def("synthesize_line_curves", &synthesize_line_curves);
    py::class_<NodeLineFit>(m, "NodeLineFit")
        .def_readonly("chi_cq", &NodeLineFit::chi_cq)
        .def_readonly("kappa", &NodeLineFit::kappa)
        .def_readonly("power_ratio", &NodeLineFit::power_ratio)
        .def_readonly("residual", &NodeLineFit::residual);
    py::class_<TransmissionFit>(m, "TransmissionFit")
        .def_readonly("transmission", &TransmissionFit::transmission)
        .def_readonly("alice", &TransmissionFit::alice)
        .def_readonly("bob", &TransmissionFit::bob)
        .def_readonly("ill_conditioned", &TransmissionFit::ill_conditioned);
    m.def("fit_transmission", &fit_transmission);
    m.def("fit_rabi_strength",
          [](const std::vector<std::pair<double, double>>& samples,
             double kappa, double delta) {
              std::vector<RabiSample> s;
              s.reserve(samples.size());
              for (const auto& [t, p] : samples) s.push_back({t, p});
              const RabiFit fit = fit_rabi_strength(s, kappa, delta);
              return py::make_tuple(fit.g, fit.flat_landscape, fit.residual);
          });
}
