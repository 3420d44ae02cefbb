#include "pitchcatch/tomography.hpp"

#include <cmath>
#include <ostream>

#include "pitchcatch/csv.hpp"

namespace pitchcatch {

void PauliTable::write_csv(std::ostream& os) const {
    os << "label,value\n";
    for (Pauli a : kPaulis)
        for (Pauli b : kPaulis)
            os << pauli_label(a) << pauli_label(b) << ',' << csv_num(at(a, b))
               << '\n';
}

ReadoutModel ReadoutModel::from_nodes(const NodeParams& a, const NodeParams& b) {
    return ReadoutModel{a.readout_fidelity_g, a.readout_fidelity_e,
                        b.readout_fidelity_g, b.readout_fidelity_e};
}

void ReadoutModel::validate() const {
    for (double f : {f_g_a, f_e_a, f_g_b, f_e_b})
        if (!(f > 0.5 && f <= 1.0))
            throw ConfigError("readout fidelities must lie in (0.5, 1]");
}

Matrix qubit_reduction(const Matrix& rho16) {
    Matrix out = Matrix::Zero(4, 4);
    for (int qa1 = 0; qa1 < 2; ++qa1)
        for (int qb1 = 0; qb1 < 2; ++qb1)
            for (int qa2 = 0; qa2 < 2; ++qa2)
                for (int qb2 = 0; qb2 < 2; ++qb2) {
                    Complex s = 0.0;
                    for (int na = 0; na < 2; ++na)
                        for (int nb = 0; nb < 2; ++nb)
                            s += rho16(basis_index(qa1, na, nb, qb1),
                                       basis_index(qa2, na, nb, qb2));
                    out(qa1 * 2 + qb1, qa2 * 2 + qb2) = s;
                }
    return out;
}

PauliTable pauli_expectations(const Matrix& rho16) {
    PauliTable t;
    for (Pauli a : kPaulis)
        for (Pauli b : kPaulis) {
            const Complex v = (two_qubit_pauli(a, b) * rho16).trace();
            if (std::abs(v.imag()) > 1e-8)
                throw NumericalError(
                    "pauli_expectations: imaginary residue " +
                    std::to_string(v.imag()) + " on " +
                    std::string{pauli_label(a), pauli_label(b)});
            t.at(a, b) = v.real();
        }
    return t;
}

double apply_readout_error(double p_sim, double f_g, double f_e) {
    return f_e * p_sim + (1.0 - f_g) * (1.0 - p_sim);
}

Matrix reconstruct_density_matrix(const PauliTable& t) {
    Matrix rho = Matrix::Zero(4, 4);
    for (Pauli a : kPaulis)
        for (Pauli b : kPaulis)
            rho += t.at(a, b) * kron(pauli_matrix(a), pauli_matrix(b));
    return 0.25 * rho;
}

double bell_fidelity(const Matrix& rho2q) {
    Vector phi = Vector::Zero(4);
    phi(0) = 1.0 / std::sqrt(2.0);  // |gg>
    phi(3) = 1.0 / std::sqrt(2.0);  // |ee>
    return (phi.adjoint() * rho2q * phi).value().real();
}

PauliTable rotate_bob_frame(const PauliTable& t, double frame_angle) {
    PauliTable out = t;
    const double c = std::cos(frame_angle);
    const double s = std::sin(frame_angle);
    for (Pauli a : kPaulis) {
        const double x = t.at(a, Pauli::X);
        const double y = t.at(a, Pauli::Y);
        out.at(a, Pauli::X) = c * x - s * y;
        out.at(a, Pauli::Y) = s * x + c * y;
    }
    return out;
}

PauliTable apply_readout_to_table(const PauliTable& t, const ReadoutModel& rm) {
    rm.validate();
    // The measured expectation substitutes, per qubit, P -> f_e P + (1-f_g)(1-P)
    // in every rotated-basis population. On Pauli components this is the
    // affine map sigma -> (f_e + f_g - 1) sigma + (f_e - f_g) I.
    const double ca = rm.f_e_a + rm.f_g_a - 1.0, ba = rm.f_e_a - rm.f_g_a;
    const double cb = rm.f_e_b + rm.f_g_b - 1.0, bb = rm.f_e_b - rm.f_g_b;
    PauliTable out;
    for (Pauli a : kPaulis)
        for (Pauli b : kPaulis) {
            const bool ia = a == Pauli::I, ib = b == Pauli::I;
            double v = (ia ? 1.0 : ca) * (ib ? 1.0 : cb) * t.at(a, b);
            if (!ia) v += ba * (ib ? 1.0 : cb) * t.at(Pauli::I, b);
            if (!ib) v += (ia ? 1.0 : ca) * bb * t.at(a, Pauli::I);
            if (!ia && !ib) v += ba * bb * t.at(Pauli::I, Pauli::I);
            out.at(a, b) = v;
        }
    return out;
}

PauliTable measured_table(const Matrix& rho16, const ReadoutModel& rm,
                          double frame_angle) {
    return apply_readout_to_table(
        rotate_bob_frame(pauli_expectations(rho16), frame_angle), rm);
}

double differential_phase(const Matrix& rho16) {
    const Matrix rho2q = qubit_reduction(rho16);
    return std::arg(rho2q(0, 3));
}

}  // namespace pitchcatch
