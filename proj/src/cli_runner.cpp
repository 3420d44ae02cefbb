#include "pitchcatch/cli_runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pitchcatch/calibration.hpp"
#include "pitchcatch/csv.hpp"
#include "pitchcatch/experiments.hpp"
#include "pitchcatch/semiclassical.hpp"
#include "pitchcatch/svg_plot.hpp"

namespace pitchcatch {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kExperiments = {"rabi", "synthesize", "transfer",
                                            "entangle", "calibrate-line"};

const std::set<std::string> kTopLevelKeys = {
    "experiment", "preset", "overrides", "output_dir", "seed", "plot"};

const std::set<std::string> kNodeKeys = {
    "omega_q_mhz", "omega_c_mhz", "kappa_mhz",  "chi_cq_mhz",
    "chi_qq_mhz",  "chi_cc_mhz",  "t1_us",      "t2_us",
    "readout_fidelity_g", "readout_fidelity_e"};

const std::set<std::string> kOverrideKeys = {
    "channel.transmission",
    "imperfections.enabled",
    "imperfections.relaxation_a",
    "imperfections.relaxation_b",
    "imperfections.dephasing_a",
    "imperfections.dephasing_b",
    "readout.enabled",
    "wavepacket.shape",
    "wavepacket.sigma_us",
    "wavepacket.gamma_per_us",
    "wavepacket.duration_us",
    "wavepacket.n_phot",
    "alice.delta_mhz",
    "controls.g_max_mhz",
    "controls.dt_ns",
    "sim.dt_ns",
    "sim.sample_every",
    "entangle.frame_angle_rad",
    "rabi.node",
    "rabi.g_mhz",
    "rabi.kappa_mhz",
    "rabi.delta_mhz",
    "rabi.t_max_us",
    "rabi.n_points",
    "rabi.readout",
    "calibrate.true_transmission",
    "calibrate.noise_fraction",
    "calibrate.n_freq",
    "calibrate.span_mhz",
    "calibrate.curves_alice_csv",
    "calibrate.curves_bob_csv",
};

struct ResolvedConfig {
    std::string experiment;
    std::string preset_name;  // empty for inline nodes
    json raw;                 // resolved config for the manifest
    ExperimentSetup setup;    // transfer / entangle / synthesize
    std::string output_dir = ".";
    unsigned long long seed = 1;
    bool plot = false;
    json overrides;
};

NodeParams node_from_json(const json& j, const std::string& name) {
    if (!j.is_object()) throw ConfigError(name + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (!kNodeKeys.count(k)) throw ConfigError(name + ": unknown key '" + k + "'");
    auto num = [&](const std::string& key) {
        if (!j.contains(key))
            throw ConfigError(name + ": missing key '" + key + "'");
        if (!j.at(key).is_number())
            throw ConfigError(name + "." + key + ": expected a number");
        return j.at(key).get<double>();
    };
    NodeParams p;
    p.omega_q = mhz(num("omega_q_mhz"));
    p.omega_c = mhz(num("omega_c_mhz"));
    p.kappa = mhz(num("kappa_mhz"));
    p.chi_cq = mhz(num("chi_cq_mhz"));
    p.chi_qq = mhz(num("chi_qq_mhz"));
    p.chi_cc = mhz(num("chi_cc_mhz"));
    p.T1 = num("t1_us");
    p.T2 = num("t2_us");
    p.readout_fidelity_g = num("readout_fidelity_g");
    p.readout_fidelity_e = num("readout_fidelity_e");
    p.validate(name);
    return p;
}

json node_to_json(const NodeParams& p) {
    json j;
    j["omega_q_mhz"] = to_mhz(p.omega_q);
    j["omega_c_mhz"] = to_mhz(p.omega_c);
    j["kappa_mhz"] = to_mhz(p.kappa);
    j["chi_cq_mhz"] = to_mhz(p.chi_cq);
    j["chi_qq_mhz"] = to_mhz(p.chi_qq);
    j["chi_cc_mhz"] = to_mhz(p.chi_cc);
    j["t1_us"] = p.T1;
    j["t2_us"] = p.T2;
    j["readout_fidelity_g"] = p.readout_fidelity_g;
    j["readout_fidelity_e"] = p.readout_fidelity_e;
    return j;
}

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ConfigError("override '" + key + "': expected a number");
    return v.get<double>();
}

bool as_bool(const json& v, const std::string& key) {
    if (!v.is_boolean()) throw ConfigError("override '" + key + "': expected a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("override '" + key + "': expected a string");
    return v.get<std::string>();
}

void apply_override(ResolvedConfig& rc, const std::string& key, const json& v) {
    if (!kOverrideKeys.count(key))
        throw ConfigError("unknown override key '" + key + "'");
    ExperimentSetup& s = rc.setup;
    if (key == "channel.transmission") {
        s.channel.transmission = as_number(v, key);
    } else if (key == "imperfections.enabled") {
        const bool on = as_bool(v, key);
        s.imperfections.relaxation_a_enabled = on;
        s.imperfections.relaxation_b_enabled = on;
        s.imperfections.dephasing_a_enabled = on;
        s.imperfections.dephasing_b_enabled = on;
    } else if (key == "imperfections.relaxation_a") {
        s.imperfections.relaxation_a_enabled = as_bool(v, key);
    } else if (key == "imperfections.relaxation_b") {
        s.imperfections.relaxation_b_enabled = as_bool(v, key);
    } else if (key == "imperfections.dephasing_a") {
        s.imperfections.dephasing_a_enabled = as_bool(v, key);
    } else if (key == "imperfections.dephasing_b") {
        s.imperfections.dephasing_b_enabled = as_bool(v, key);
    } else if (key == "readout.enabled") {
        s.readout_enabled = as_bool(v, key);
    } else if (key == "wavepacket.shape") {
        const std::string sh = as_string(v, key);
        if (sh == "gaussian")
            s.wavepacket.shape = WavepacketShape::gaussian;
        else if (sh == "symmetric_exponential")
            s.wavepacket.shape = WavepacketShape::symmetric_exponential;
        else
            throw ConfigError("wavepacket.shape: unknown shape '" + sh + "'");
    } else if (key == "wavepacket.sigma_us" || key == "wavepacket.gamma_per_us") {
        s.wavepacket.sigma_or_gamma = as_number(v, key);
    } else if (key == "wavepacket.duration_us") {
        s.wavepacket.duration = as_number(v, key);
    } else if (key == "wavepacket.n_phot") {
        s.wavepacket.n_phot = as_number(v, key);
    } else if (key == "alice.delta_mhz") {
        s.delta_a = mhz(as_number(v, key));
    } else if (key == "controls.g_max_mhz") {
        s.synth.g_max = mhz(as_number(v, key));
    } else if (key == "controls.dt_ns") {
        s.dt_synth = as_number(v, key) * 1e-3;
    } else if (key == "sim.dt_ns") {
        s.dt_sim = as_number(v, key) * 1e-3;
    } else if (key == "sim.sample_every") {
        s.sample_every = static_cast<int>(as_number(v, key));
    } else if (key == "entangle.frame_angle_rad") {
        s.frame_angle = as_number(v, key);
    }
    // rabi.* and calibrate.* keys are read directly from rc.overrides when the
    // experiment runs; their types are checked here.
    else if (key == "rabi.node") {
        const std::string n = as_string(v, key);
        if (n != "alice" && n != "bob")
            throw ConfigError("rabi.node: expected 'alice' or 'bob'");
    } else if (key == "rabi.readout") {
        as_bool(v, key);
    } else if (key == "rabi.n_points" || key == "calibrate.n_freq") {
        as_number(v, key);
    } else if (key == "calibrate.curves_alice_csv" ||
               key == "calibrate.curves_bob_csv") {
        as_string(v, key);
    } else {
        as_number(v, key);
    }
}

ResolvedConfig resolve_config(const RunOptions& opts) {
    std::ifstream in(opts.config_path);
    if (!in) throw ConfigError("cannot read config file '" + opts.config_path + "'");
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config root must be an object");
    for (const auto& [k, v] : cfg.items())
        if (!kTopLevelKeys.count(k))
            throw ConfigError("unknown top-level key '" + k + "'");

    ResolvedConfig rc;
    if (!cfg.contains("experiment") || !cfg.at("experiment").is_string())
        throw ConfigError("config: missing string key 'experiment'");
    rc.experiment = cfg.at("experiment").get<std::string>();
    if (!kExperiments.count(rc.experiment))
        throw ConfigError("unknown experiment '" + rc.experiment + "'");

    // preset: a name, or an inline {"alice": {...}, "bob": {...}} pair
    json preset = cfg.value("preset", json("paper-defaults"));
    if (!opts.preset.empty()) preset = opts.preset;
    rc.setup = rc.experiment == "entangle" ? entangle_paper_setup()
                                           : transfer_paper_setup();
    if (preset.is_string()) {
        rc.preset_name = preset.get<std::string>();
        if (rc.preset_name != "paper-defaults")
            throw ConfigError("unknown preset '" + rc.preset_name + "'");
    } else if (preset.is_object()) {
        for (const auto& [k, v] : preset.items())
            if (k != "alice" && k != "bob")
                throw ConfigError("preset: unknown key '" + k + "'");
        if (!preset.contains("alice") || !preset.contains("bob"))
            throw ConfigError("inline preset must define both 'alice' and 'bob'");
        rc.setup.alice = node_from_json(preset.at("alice"), "alice");
        rc.setup.bob = node_from_json(preset.at("bob"), "bob");
        rc.setup.imperfections =
            ImperfectionSet::from_nodes(rc.setup.alice, rc.setup.bob);
    } else {
        throw ConfigError("preset: expected a name or an inline node pair");
    }

    rc.overrides = cfg.value("overrides", json::object());
    if (!rc.overrides.is_object()) throw ConfigError("overrides must be an object");
    for (const auto& [k, v] : rc.overrides.items()) apply_override(rc, k, v);

    rc.output_dir = cfg.value("output_dir", std::string("."));
    if (!opts.out_dir.empty()) rc.output_dir = opts.out_dir;
    if (cfg.contains("seed")) {
        if (!cfg.at("seed").is_number_integer())
            throw ConfigError("seed must be an integer");
        rc.seed = cfg.at("seed").get<unsigned long long>();
    }
    rc.plot = cfg.value("plot", false) || opts.plot;
    if (opts.dt_ns > 0.0) rc.setup.dt_sim = opts.dt_ns * 1e-3;

    rc.setup.channel.validate();
    rc.setup.imperfections.validate();
    rc.setup.wavepacket.validate();

    // resolved config snapshot for the manifest
    json resolved;
    resolved["experiment"] = rc.experiment;
    if (!rc.preset_name.empty()) resolved["preset"] = rc.preset_name;
    resolved["nodes"]["alice"] = node_to_json(rc.setup.alice);
    resolved["nodes"]["bob"] = node_to_json(rc.setup.bob);
    resolved["overrides"] = rc.overrides;
    resolved["output_dir"] = rc.output_dir;
    resolved["seed"] = rc.seed;
    resolved["plot"] = rc.plot;
    rc.raw = resolved;
    return rc;
}

double override_num(const ResolvedConfig& rc, const std::string& key,
                    double fallback) {
    if (rc.overrides.contains(key)) return rc.overrides.at(key).get<double>();
    return fallback;
}

bool override_bool(const ResolvedConfig& rc, const std::string& key,
                   bool fallback) {
    if (rc.overrides.contains(key)) return rc.overrides.at(key).get<bool>();
    return fallback;
}

std::string override_str(const ResolvedConfig& rc, const std::string& key,
                         const std::string& fallback) {
    if (rc.overrides.contains(key))
        return rc.overrides.at(key).get<std::string>();
    return fallback;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

void write_json(const fs::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

// Gaussian deviates via Box-Muller on a seeded mt19937_64; implementation-
// independent so seeded outputs are byte-identical everywhere.
class Gauss {
  public:
    explicit Gauss(unsigned long long seed) : rng_(seed) {}
    double operator()() {
        const double u1 =
            (static_cast<double>(rng_()) + 0.5) / 18446744073709551616.0;
        const double u2 =
            (static_cast<double>(rng_()) + 0.5) / 18446744073709551616.0;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

  private:
    std::mt19937_64 rng_;
};

std::string control_csv(const ControlSequence& cs) {
    std::ostringstream os;
    cs.write_csv(os);
    return os.str();
}

json summary_transfer(const TransferResult& r) {
    json s;
    s["final_P_eA"] = r.final_p_e_a;
    s["final_P_eB"] = r.final_p_e_b;
    s["detected_P_eB"] = r.detected_p_e_b;
    s["max_trace_err"] = r.trajectory.max_trace_err();
    return s;
}

json table_json(const PauliTable& t) {
    json out;
    for (Pauli a : kPaulis)
        for (Pauli b : kPaulis)
            out[std::string{pauli_label(a), pauli_label(b)}] = t.at(a, b);
    return out;
}

// One experiment run into a directory; returns the summary payload.
json run_into(const ResolvedConfig& rc, const fs::path& dir) {
    fs::create_directories(dir);
    json summary;
    std::vector<std::string> artifacts;

    auto emit = [&](const std::string& name, const std::string& text) {
        write_text(dir / name, text);
        artifacts.push_back(name);
    };

    if (rc.experiment == "transfer" || rc.experiment == "entangle" ||
        rc.experiment == "synthesize") {
        if (rc.experiment == "synthesize") {
            SimulationConfig sim = build_simulation(rc.setup);
            emit("pitch_control.csv", control_csv(sim.controls_a));
            emit("catch_control.csv", control_csv(sim.controls_b));
            const auto wf = emitted_waveform(
                sim.controls_a, rc.setup.alice.kappa,
                std::sqrt(rc.setup.wavepacket.n_phot));
            std::ostringstream os;
            os << "t_us,re_cout,im_cout\n";
            for (std::size_t k = 0; k < wf.size(); ++k)
                os << csv_num(k * sim.controls_a.dt) << ','
                   << csv_num(wf[k].real()) << ',' << csv_num(wf[k].imag())
                   << '\n';
            emit("emitted_waveform.csv", os.str());
            double flux = 0.0;
            for (std::size_t k = 0; k + 1 < wf.size(); ++k)
                flux += 0.5 * (std::norm(wf[k]) + std::norm(wf[k + 1])) *
                        sim.controls_a.dt;
            summary["pitch_peak_g_mhz"] = to_mhz(sim.controls_a.peak_magnitude());
            summary["catch_peak_g_mhz"] = to_mhz(sim.controls_b.peak_magnitude());
            summary["emitted_flux"] = flux;
            if (rc.plot) {
                SvgPlot plot("Synthesized controls", "t (us)", "|g|/2pi (MHz)");
                std::vector<double> t, ga, gb;
                for (std::size_t k = 0; k < sim.controls_a.samples.size(); ++k) {
                    t.push_back(k * sim.controls_a.dt);
                    ga.push_back(to_mhz(std::abs(sim.controls_a.samples[k])));
                    gb.push_back(to_mhz(std::abs(sim.controls_b.samples[k])));
                }
                plot.add_series("pitch", t, ga);
                plot.add_series("catch", t, gb);
                std::ostringstream os2;
                plot.write(os2);
                emit("plot.svg", os2.str());
            }
        } else if (rc.experiment == "transfer") {
            const TransferResult r = transfer_experiment(rc.setup);
            std::ostringstream os;
            r.trajectory.write_csv(os);
            emit("trajectory.csv", os.str());
            emit("pitch_control.csv", control_csv(r.pitch));
            emit("catch_control.csv", control_csv(r.catch_control));
            summary = summary_transfer(r);
            if (rc.plot) {
                SvgPlot plot("Excitation transfer", "t (us)", "population");
                plot.add_series("P(e_A)", r.trajectory.times, r.trajectory.p_e_a);
                plot.add_series("P(e_B)", r.trajectory.times, r.trajectory.p_e_b);
                std::ostringstream os2;
                plot.write(os2);
                emit("plot.svg", os2.str());
            }
        } else {
            const EntangleResult r = entangle_experiment(rc.setup);
            std::ostringstream os;
            r.trajectory.write_csv(os);
            emit("trajectory.csv", os.str());
            emit("pitch_control.csv", control_csv(r.pitch));
            emit("catch_control.csv", control_csv(r.catch_control));
            std::ostringstream ts;
            r.table_measured.write_csv(ts);
            emit("pauli_table.csv", ts.str());
            json recon;
            recon["bell_fidelity"] = r.bell_fidelity_measured;
            recon["bell_fidelity_perfect_readout"] =
                r.bell_fidelity_perfect_readout;
            recon["frame_angle_rad"] = r.frame_angle;
            Eigen::SelfAdjointEigenSolver<Matrix> es(r.rho2q);
            json eig = json::array();
            for (int k = 0; k < 4; ++k) eig.push_back(es.eigenvalues()(k));
            recon["eigenvalues"] = eig;
            recon["table"] = table_json(r.table_measured);
            write_json(dir / "reconstruction.json", recon);
            artifacts.push_back("reconstruction.json");
            summary["bell_fidelity"] = r.bell_fidelity_measured;
            summary["bell_fidelity_perfect_readout"] =
                r.bell_fidelity_perfect_readout;
            summary["final_P_eA"] = r.final_p_e_a;
            summary["final_P_eB"] = r.final_p_e_b;
            summary["frame_angle_rad"] = r.frame_angle;
            summary["max_trace_err"] = r.trajectory.max_trace_err();
            if (rc.plot) {
                SvgPlot plot("Remote entanglement", "t (us)", "population / correlator");
                plot.add_series("P(e_A)", r.trajectory.times, r.trajectory.p_e_a);
                plot.add_series("P(e_B)", r.trajectory.times, r.trajectory.p_e_b);
                plot.add_series("<Z_A Z_B>", r.trajectory.times, r.trajectory.zz);
                std::ostringstream os2;
                plot.write(os2);
                emit("plot.svg", os2.str());
            }
        }
    } else if (rc.experiment == "rabi") {
        const double g = mhz(override_num(rc, "rabi.g_mhz", 0.23));
        const double kappa = mhz(override_num(rc, "rabi.kappa_mhz", 1.0));
        const double delta = mhz(override_num(rc, "rabi.delta_mhz", 0.0));
        const double t_max = override_num(rc, "rabi.t_max_us", 4.0);
        const int n_points =
            static_cast<int>(override_num(rc, "rabi.n_points", 201));
        const bool use_readout = override_bool(rc, "rabi.readout", true);
        const std::string node = override_str(rc, "rabi.node", "bob");
        const NodeParams& np = node == "alice" ? rc.setup.alice : rc.setup.bob;
        if (n_points < 2) throw ConfigError("rabi.n_points must be >= 2");
        const RabiParams rp = RabiParams::make(g, kappa, delta);
        std::ostringstream os;
        os << "t_us,P_e\n";
        std::vector<double> ts, ps;
        std::vector<RabiSample> sim_samples;
        for (int k = 0; k < n_points; ++k) {
            const double t = t_max * k / (n_points - 1);
            double p = rabi_excited_population(rp, t);
            sim_samples.push_back({t, p});
            if (use_readout)
                p = apply_readout_error(p, np.readout_fidelity_g,
                                        np.readout_fidelity_e);
            os << csv_num(t) << ',' << csv_num(p) << '\n';
            ts.push_back(t);
            ps.push_back(p);
        }
        emit("rabi.csv", os.str());
        summary["g_mhz"] = to_mhz(g);
        summary["kappa_mhz"] = to_mhz(kappa);
        summary["delta_mhz"] = to_mhz(delta);
        summary["node"] = node;
        summary["readout"] = use_readout;
        if (n_points >= 8) {
            const RabiFit fit = fit_rabi_strength(sim_samples, kappa, delta);
            summary["fitted_g_mhz"] = to_mhz(fit.g);
        }
        if (rc.plot) {
            SvgPlot plot("Two-photon Rabi oscillation", "t (us)", "P(e)");
            plot.add_series("P(e)", ts, ps);
            std::ostringstream os2;
            plot.write(os2);
            emit("plot.svg", os2.str());
        }
    } else if (rc.experiment == "calibrate-line") {
        const double t_true = override_num(rc, "calibrate.true_transmission", 0.85);
        const double noise = override_num(rc, "calibrate.noise_fraction", 0.02);
        const int n_freq = static_cast<int>(override_num(rc, "calibrate.n_freq", 41));
        const double span = mhz(override_num(rc, "calibrate.span_mhz", 30.0));
        if (n_freq < 10) throw ConfigError("calibrate.n_freq must be >= 10");

        auto make_curves = [&](const NodeParams& p, double scale,
                               Gauss& gauss) {
            NodeParams rel = p;
            rel.omega_c = 0.0;  // curves stored relative to the cavity
            std::vector<double> omegas;
            for (int k = 0; k < n_freq; ++k)
                omegas.push_back(-0.5 * span - p.chi_cq +
                                 (span + p.chi_cq) * k / (n_freq - 1));
            TransmissionCurves c = synthesize_line_curves(rel, scale, omegas);
            for (auto* v : {&c.gamma_d_per_p0, &c.delta_q_per_p0})
                for (double& x : *v) x *= 1.0 + noise * gauss();
            return c;
        };
        Gauss gauss(rc.seed);
        TransmissionCurves ca, cb;
        const std::string file_a = override_str(rc, "calibrate.curves_alice_csv", "");
        const std::string file_b = override_str(rc, "calibrate.curves_bob_csv", "");
        if (!file_a.empty() || !file_b.empty()) {
            if (file_a.empty() || file_b.empty())
                throw ConfigError("calibrate: provide both curve CSVs or neither");
            auto load = [](const std::string& path) {
                std::ifstream in(path);
                if (!in) throw ConfigError("cannot read curves file '" + path + "'");
                std::string line;
                std::getline(in, line);
                if (line != "omega_mhz,gamma_d_per_P0,delta_q_per_P0")
                    throw ConfigError(path + ": unexpected CSV header '" + line + "'");
                TransmissionCurves c;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    std::istringstream ls(line);
                    double w, gd, dq;
                    char c1, c2;
                    if (!(ls >> w >> c1 >> gd >> c2 >> dq) || c1 != ',' || c2 != ',')
                        throw ConfigError(path + ": malformed CSV row '" + line + "'");
                    c.omega.push_back(mhz(w));
                    c.gamma_d_per_p0.push_back(gd);
                    c.delta_q_per_p0.push_back(dq);
                }
                return c;
            };
            ca = load(file_a);
            cb = load(file_b);
        } else {
            ca = make_curves(rc.setup.alice, 1.0, gauss);
            cb = make_curves(rc.setup.bob, t_true, gauss);
        }
        auto curves_csv = [](const TransmissionCurves& c) {
            std::ostringstream os;
            os << "omega_mhz,gamma_d_per_P0,delta_q_per_P0\n";
            for (std::size_t k = 0; k < c.omega.size(); ++k)
                os << csv_num(to_mhz(c.omega[k])) << ','
                   << csv_num(c.gamma_d_per_p0[k]) << ','
                   << csv_num(c.delta_q_per_p0[k]) << '\n';
            return os.str();
        };
        emit("curves_alice.csv", curves_csv(ca));
        emit("curves_bob.csv", curves_csv(cb));
        const TransmissionFit fit = fit_transmission(ca, cb);
        json report;
        report["transmission"] = fit.transmission;
        report["ill_conditioned"] = fit.ill_conditioned;
        for (auto [label, nf] :
             {std::pair{"alice", fit.alice}, std::pair{"bob", fit.bob}}) {
            report[label]["chi_cq_mhz"] = to_mhz(nf.chi_cq);
            report[label]["kappa_mhz"] = to_mhz(nf.kappa);
            report[label]["power_ratio"] = nf.power_ratio;
            report[label]["relative_residual"] = nf.residual;
        }
        write_json(dir / "fit_report.json", report);
        artifacts.push_back("fit_report.json");
        summary["fitted_transmission"] = fit.transmission;
        if (!file_a.empty()) summary["source"] = "csv";
        if (rc.plot) {
            SvgPlot plot("Line calibration curves", "omega/2pi (MHz)",
                         "Gamma_d / P0 (1/us)");
            std::vector<double> wa, wb;
            for (double w : ca.omega) wa.push_back(to_mhz(w));
            for (double w : cb.omega) wb.push_back(to_mhz(w));
            plot.add_series("alice", wa, ca.gamma_d_per_p0);
            plot.add_series("bob", wb, cb.gamma_d_per_p0);
            std::ostringstream os2;
            plot.write(os2);
            emit("plot.svg", os2.str());
        }
    }

    summary["artifacts"] = artifacts;
    write_json(dir / "summary.json", summary);
    return summary;
}

}  // namespace

int run_experiment(const RunOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    ResolvedConfig rc;
    try {
        rc = resolve_config(opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    const fs::path out_dir = rc.output_dir;
    json manifest;
    manifest["tool"] = "pitchcatch";
    manifest["version"] = "0.1.0";
    manifest["config"] = rc.raw;

    try {
        if (!opts.sweep_key.empty()) {
            // fan the sweep out across threads, merge in config order
            // (configs must outlive the futures that reference them)
            std::vector<ResolvedConfig> configs;
            std::vector<std::future<json>> futures;
            for (double v : opts.sweep_values) {
                ResolvedConfig rcv = rc;
                apply_override(rcv, opts.sweep_key, json(v));
                rcv.raw["overrides"][opts.sweep_key] = v;
                configs.push_back(std::move(rcv));
            }
            for (std::size_t k = 0; k < configs.size(); ++k) {
                const fs::path dir =
                    out_dir / ("sweep_" + std::to_string(k));
                futures.push_back(std::async(std::launch::async, [&, k, dir] {
                    return run_into(configs[k], dir);
                }));
            }
            json sweep = json::array();
            for (std::size_t k = 0; k < futures.size(); ++k) {
                json entry;
                entry["key"] = opts.sweep_key;
                entry["value"] = opts.sweep_values[k];
                entry["directory"] = "sweep_" + std::to_string(k);
                entry["summary"] = futures[k].get();
                sweep.push_back(entry);
            }
            fs::create_directories(out_dir);
            json top;
            top["sweep"] = sweep;
            top["artifacts"] = json::array();
            write_json(out_dir / "summary.json", top);
        } else {
            run_into(rc, out_dir);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        manifest["error"] = e.what();
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (!ec) write_json(out_dir / "manifest.json", manifest);
        return 2;
    }

    const auto t1 = std::chrono::steady_clock::now();
    manifest["wall_time_s"] =
        std::chrono::duration<double>(t1 - t0).count();
    write_json(out_dir / "manifest.json", manifest);
    return 0;
}

int validate_config(const std::string& config_path) {
    RunOptions opts;
    opts.config_path = config_path;
    try {
        ResolvedConfig rc = resolve_config(opts);
        if (rc.experiment == "transfer" || rc.experiment == "entangle" ||
            rc.experiment == "synthesize") {
            // control ceiling check: synthesize dry, no artifacts written
            SimulationConfig sim = build_simulation(rc.setup);
            std::cout << "controls: pitch peak "
                      << to_mhz(sim.controls_a.peak_magnitude())
                      << " MHz, catch peak "
                      << to_mhz(sim.controls_b.peak_magnitude())
                      << " MHz, ceiling " << to_mhz(rc.setup.synth.g_max)
                      << " MHz\n";
        }
        std::cout << "config OK: experiment '" << rc.experiment << "'\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "invalid config (numerical): " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pitchcatch
