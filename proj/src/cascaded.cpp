#include "pitchcatch/cascaded.hpp"

#include <cmath>
#include <memory>
#include <ostream>

#include "pitchcatch/csv.hpp"

namespace pitchcatch {

void ChannelParams::validate() const {
    if (!(transmission >= 0.0 && transmission <= 1.0))
        throw ConfigError("channel: transmission must lie in [0, 1]");
    if (propagation_delay != 0.0)
        throw ConfigError("channel: propagation delay must be exactly 0");
}

ImperfectionSet ImperfectionSet::from_nodes(const NodeParams& a,
                                            const NodeParams& b) {
    ImperfectionSet s;
    s.gamma1_a = a.gamma1();
    s.gamma1_b = b.gamma1();
    s.gammaphi_a = a.gamma_phi();
    s.gammaphi_b = b.gamma_phi();
    return s;
}

void ImperfectionSet::validate() const {
    for (double r : {gamma1_a, gamma1_b, gammaphi_a, gammaphi_b})
        if (r < 0.0) throw ConfigError("imperfections: rates must be >= 0");
}

void SimulationConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("simulation: dt must be > 0");
    if (sample_every < 1) throw ConfigError("simulation: sample_every must be >= 1");
    node_a.validate("node_a");
    node_b.validate("node_b");
    channel.validate();
    imperfections.validate();
    if (controls_a.samples.empty() && controls_b.samples.empty())
        throw ConfigError("simulation: at least one control sequence required");
    if (!controls_a.samples.empty() && !controls_b.samples.empty()) {
        if (controls_a.samples.size() != controls_b.samples.size() ||
            std::abs(controls_a.dt - controls_b.dt) > 1e-12)
            throw ConfigError("simulation: controls must share the same time grid");
    }
    DensityMatrix16{initial_state}.validate();
}

LiouvillianAction::LiouvillianAction(const SimulationConfig& cfg) : cfg_(&cfg) {
    const double kappa_a = cfg.node_a.kappa;
    const double kappa_b = cfg.node_b.kappa;
    const double t_line = cfg.channel.transmission;
    const double sqrt_t = std::sqrt(t_line);

    const Matrix c_a = mode_operator(Mode::cavity_a);
    const Matrix c_b = mode_operator(Mode::cavity_b);
    const Matrix q_a = mode_operator(Mode::qubit_a);
    const Matrix q_b = mode_operator(Mode::qubit_b);

    // Detunings ride with the control sequences (they were fixed at synthesis
    // time); the cascade coupling is the anti-Hermitian exchange term times i.
    h_const_ = cfg.controls_a.delta * number_operator(Mode::cavity_a) +
               cfg.controls_b.delta * number_operator(Mode::cavity_b) +
               Complex(0.0, 0.5) * std::sqrt(t_line * kappa_a * kappa_b) *
                   (c_a.adjoint() * c_b - c_a * c_b.adjoint());

    pitch_a_ = q_a.adjoint() * c_a.adjoint();
    catch_a_ = q_a.adjoint() * c_a;
    catch_b_ = q_b.adjoint() * c_b;

    std::vector<Matrix> jumps;
    jumps.push_back(std::sqrt(sqrt_t) *
                    (std::sqrt(kappa_a) * c_a + std::sqrt(kappa_b) * c_b));
    if (1.0 - sqrt_t > 0.0) {
        jumps.push_back(std::sqrt((1.0 - sqrt_t) * kappa_a) * c_a);
        jumps.push_back(std::sqrt((1.0 - sqrt_t) * kappa_b) * c_b);
    }
    cavity_loss_op_ = Matrix::Zero(kDim, kDim);
    for (const Matrix& j : jumps) cavity_loss_op_ += j.adjoint() * j;

    qubit_loss_op_ = Matrix::Zero(kDim, kDim);
    const ImperfectionSet& imp = cfg.imperfections;
    if (imp.eff_gamma1_a() > 0.0) {
        jumps.push_back(std::sqrt(imp.eff_gamma1_a()) * q_a);
        qubit_loss_op_ += jumps.back().adjoint() * jumps.back();
    }
    if (imp.eff_gamma1_b() > 0.0) {
        jumps.push_back(std::sqrt(imp.eff_gamma1_b()) * q_b);
        qubit_loss_op_ += jumps.back().adjoint() * jumps.back();
    }
    if (imp.eff_gammaphi_a() > 0.0)
        jumps.push_back(std::sqrt(imp.eff_gammaphi_a()) *
                        number_operator(Mode::qubit_a));
    if (imp.eff_gammaphi_b() > 0.0)
        jumps.push_back(std::sqrt(imp.eff_gammaphi_b()) *
                        number_operator(Mode::qubit_b));

    k_sum_ = Matrix::Zero(kDim, kDim);
    for (const Matrix& j : jumps) k_sum_ += j.adjoint() * j;

    // Sparse tabulation of rho -> sum_k J_k rho J_k^dag. Every jump operator
    // has only a handful of nonzero entries.
    for (const Matrix& j : jumps) {
        std::vector<std::pair<std::pair<int, int>, Complex>> nz;
        for (int r = 0; r < kDim; ++r)
            for (int c = 0; c < kDim; ++c)
                if (j(r, c) != Complex(0.0)) nz.push_back({{r, c}, j(r, c)});
        for (const auto& [rc1, v1] : nz)
            for (const auto& [rc2, v2] : nz)
                jump_table_.push_back(JumpEntry{rc1.first, rc1.second, rc2.first,
                                                rc2.second, v1 * std::conj(v2)});
    }
}

Matrix LiouvillianAction::hamiltonian(double t) const {
    const Complex g_a = cfg_->controls_a.at(t);
    const Complex g_b = cfg_->controls_b.at(t);
    const Matrix& p_a =
        cfg_->controls_a.role == ControlRole::pitch ? pitch_a_ : catch_a_;
    Matrix drive = g_a * p_a + g_b * catch_b_;
    return h_const_ + drive + drive.adjoint();
}

Matrix LiouvillianAction::apply_controls(const Matrix& rho, Complex g_a,
                                         Complex g_b) const {
    const Matrix& p_a =
        cfg_->controls_a.role == ControlRole::pitch ? pitch_a_ : catch_a_;
    Matrix drive = g_a * p_a + g_b * catch_b_;
    Matrix h = h_const_ + drive + drive.adjoint();
    Matrix a = Complex(0.0, -1.0) * h - 0.5 * k_sum_;
    Matrix out = a * rho + rho * a.adjoint();
    for (const JumpEntry& e : jump_table_)
        out(e.r1, e.r2) += e.w * rho(e.c1, e.c2);
    return out;
}

Matrix LiouvillianAction::apply(const Matrix& rho, double t) const {
    return apply_controls(rho, cfg_->controls_a.at(t), cfg_->controls_b.at(t));
}

double LiouvillianAction::cavity_loss_flux(const Matrix& rho) const {
    return (cavity_loss_op_ * rho).trace().real();
}

double LiouvillianAction::qubit_loss_flux(const Matrix& rho) const {
    return (qubit_loss_op_ * rho).trace().real();
}

std::function<Matrix(const Matrix&)> build_liouvillian(const SimulationConfig& cfg,
                                                       double t) {
    auto cfg_copy = std::make_shared<SimulationConfig>(cfg);
    auto action = std::make_shared<LiouvillianAction>(*cfg_copy);
    return [action, cfg_copy, t](const Matrix& rho) {
        return action->apply(rho, t);
    };
}

double Trajectory::max_trace_err() const {
    double m = 0.0;
    for (double e : trace_err) m = std::max(m, e);
    return m;
}

void Trajectory::write_csv(std::ostream& os) const {
    os << "t_us,P_eA,P_eB,n_cavA,n_cavB,ZZ,re_aout,im_aout,trace_err\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        os << csv_num(times[k]) << ',' << csv_num(p_e_a[k]) << ','
           << csv_num(p_e_b[k]) << ',' << csv_num(n_cav_a[k]) << ','
           << csv_num(n_cav_b[k]) << ',' << csv_num(zz[k]) << ','
           << csv_num(a_out[k].real()) << ',' << csv_num(a_out[k].imag()) << ','
           << csv_num(trace_err[k]) << '\n';
    }
}

Trajectory evolve(const SimulationConfig& cfg) {
    cfg.validate();
    const LiouvillianAction liou(cfg);
    const double dt = cfg.dt;
    const double duration = cfg.controls_a.samples.empty()
                                ? cfg.controls_b.duration()
                                : cfg.controls_a.duration();
    const auto n_steps = static_cast<long>(std::lround(duration / dt));

    const Matrix n_qa = number_operator(Mode::qubit_a);
    const Matrix n_qb = number_operator(Mode::qubit_b);
    const Matrix n_ca = number_operator(Mode::cavity_a);
    const Matrix n_cb = number_operator(Mode::cavity_b);
    const Matrix zz_op = two_qubit_pauli(Pauli::Z, Pauli::Z);
    const Matrix c_a = mode_operator(Mode::cavity_a);
    const Matrix c_b = mode_operator(Mode::cavity_b);
    const double out_wa =
        std::sqrt(cfg.channel.transmission * cfg.node_a.kappa);
    const double out_wb = std::sqrt(cfg.node_b.kappa);

    Trajectory traj;
    Matrix rho = cfg.initial_state;
    double lost = 0.0, qubit_lost = 0.0;
    double prev_cav_flux = liou.cavity_loss_flux(rho);
    double prev_qubit_flux = liou.qubit_loss_flux(rho);

    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.push_back(rho);
        traj.p_e_a.push_back((n_qa * rho).trace().real());
        traj.p_e_b.push_back((n_qb * rho).trace().real());
        traj.n_cav_a.push_back((n_ca * rho).trace().real());
        traj.n_cav_b.push_back((n_cb * rho).trace().real());
        traj.zz.push_back((zz_op * rho).trace().real());
        const Complex ca = (c_a * rho).trace();
        const Complex cb = (c_b * rho).trace();
        traj.mean_c_a.push_back(ca);
        traj.mean_c_b.push_back(cb);
        traj.a_out.push_back(out_wa * ca + out_wb * cb);
        const double terr = std::abs(rho.trace().real() - 1.0) +
                            std::abs(rho.trace().imag());
        traj.trace_err.push_back(terr);
        traj.lost_flux.push_back(lost);
        traj.qubit_lost_flux.push_back(qubit_lost);
        if (terr > 1e-6)
            throw NumericalError(
                "evolve: trace drifted by " + std::to_string(terr) + " at t = " +
                std::to_string(t) + " us; reduce the step size");
    };

    record(0.0);
    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const Complex ga1 = cfg.controls_a.at(t);
        const Complex gb1 = cfg.controls_b.at(t);
        const Complex gam = cfg.controls_a.at(t + 0.5 * dt);
        const Complex gbm = cfg.controls_b.at(t + 0.5 * dt);
        const Complex ga2 = cfg.controls_a.at(t + dt);
        const Complex gb2 = cfg.controls_b.at(t + dt);

        const Matrix k1 = liou.apply_controls(rho, ga1, gb1);
        const Matrix k2 = liou.apply_controls(rho + (0.5 * dt) * k1, gam, gbm);
        const Matrix k3 = liou.apply_controls(rho + (0.5 * dt) * k2, gam, gbm);
        const Matrix k4 = liou.apply_controls(rho + dt * k3, ga2, gb2);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        // trapezoidal accumulation of the outward flux records
        const double cav_flux = liou.cavity_loss_flux(rho);
        const double qubit_flux = liou.qubit_loss_flux(rho);
        lost += 0.5 * dt * (prev_cav_flux + cav_flux);
        qubit_lost += 0.5 * dt * (prev_qubit_flux + qubit_flux);
        prev_cav_flux = cav_flux;
        prev_qubit_flux = qubit_flux;

        if ((k + 1) % cfg.sample_every == 0 || k + 1 == n_steps)
            record(static_cast<double>(k + 1) * dt);
    }
    return traj;
}

}  // namespace pitchcatch
