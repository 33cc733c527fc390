// hamiltonian.hpp — Biased Rabi Hamiltonian, its rotated-frame RWA (JC)
// counterpart, the frame parity operators, and the displaced-basis matrix.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "rabi/displaced.hpp"
#include "rabi/operators.hpp"
#include "rabi/params.hpp"

namespace rabi {

enum class ModelKind { rabi, jc };

inline Frame frame_of(ModelKind kind) {
    return kind == ModelKind::rabi ? Frame::rabi : Frame::jc_rotated;
}

// H = -(Delta/2) sigma_x⊗I + (eps/2) sigma_z⊗I + omega I⊗n + lambda sigma_z⊗(a+a†)
inline OperatorMatrix build_rabi(const ModelParams& p, const FockTruncation& trunc) {
    p.validate();
    trunc.validate();
    const BosonOps b = build_boson_ops(trunc);
    const int nb = trunc.n_max + 1;
    const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(nb, nb);

    OperatorMatrix H;
    H.frame = Frame::rabi;
    H.entries = -0.5 * p.delta * tensor_spin_boson(pauli::sigma_x(), id_b) +
                0.5 * p.epsilon * tensor_spin_boson(pauli::sigma_z(), id_b) +
                p.omega * tensor_spin_boson(pauli::identity(), b.n_op) +
                p.lambda * tensor_spin_boson(pauli::sigma_z(), b.a + b.a_dag);
    return H;
}

// Rotated-frame RWA counterpart:
// H = (Delta/2) sigma_z⊗I + (eps/2) sigma_x⊗I + omega I⊗n
//     + lambda (sigma_+⊗a + sigma_-⊗a†).
// The sign convention makes (spin-down, vacuum) the ground state below
// lambda_c = sqrt(omega Delta) for Delta > 0. The paper's population
// inversion <sigma_z> corresponds to sigma_x⊗I in this frame.
inline OperatorMatrix build_jc(const ModelParams& p, const FockTruncation& trunc) {
    p.validate();
    trunc.validate();
    const BosonOps b = build_boson_ops(trunc);
    const int nb = trunc.n_max + 1;
    const Eigen::MatrixXd id_b = Eigen::MatrixXd::Identity(nb, nb);

    Eigen::MatrixXd inter = tensor_spin_boson(pauli::sigma_plus(), b.a);
    inter += inter.transpose().eval();  // sigma_-⊗a† block

    OperatorMatrix H;
    H.frame = Frame::jc_rotated;
    H.entries = 0.5 * p.delta * tensor_spin_boson(pauli::sigma_z(), id_b) +
                0.5 * p.epsilon * tensor_spin_boson(pauli::sigma_x(), id_b) +
                p.omega * tensor_spin_boson(pauli::identity(), b.n_op) +
                p.lambda * inter;
    return H;
}

inline OperatorMatrix build_model(ModelKind kind, const ModelParams& p,
                                  const FockTruncation& trunc) {
    return kind == ModelKind::rabi ? build_rabi(p, trunc) : build_jc(p, trunc);
}

// Interaction operator, the lambda-coefficient of the Hamiltonian (dH/dlambda).
inline OperatorMatrix build_interaction(ModelKind kind, const FockTruncation& trunc) {
    trunc.validate();
    const BosonOps b = build_boson_ops(trunc);
    OperatorMatrix H1;
    H1.frame = frame_of(kind);
    if (kind == ModelKind::rabi) {
        H1.entries = tensor_spin_boson(pauli::sigma_z(), b.a + b.a_dag);
    } else {
        Eigen::MatrixXd inter = tensor_spin_boson(pauli::sigma_plus(), b.a);
        inter += inter.transpose().eval();
        H1.entries = inter;
    }
    return H1;
}

// Parity: Pi = sigma_x e^{i pi a†a} in the rabi frame,
//         Pi' = -sigma_z e^{i pi a†a} in the jc_rotated frame.
// Both real, symmetric, involutory.
inline OperatorMatrix build_parity(const FockTruncation& trunc, Frame frame) {
    trunc.validate();
    const BosonOps b = build_boson_ops(trunc);
    OperatorMatrix P;
    P.frame = frame;
    if (frame == Frame::rabi) {
        P.entries = tensor_spin_boson(pauli::sigma_x(), b.parity_phase);
    } else {
        P.entries = -tensor_spin_boson(pauli::sigma_z(), b.parity_phase);
    }
    return P;
}

// Hamiltonian in the displaced basis {c-sector, d-sector}: diagonal blocks
// omega (m - q^2) ± eps/2, off-diagonal block (Delta/2) D_{m,n}. Symmetric
// because D_{m,n} = D_{n,m}. Rows 0..n_max are the c-sector.
inline OperatorMatrix build_displaced_matrix(const ModelParams& p,
                                             const FockTruncation& trunc) {
    p.validate();
    trunc.validate();
    const int nb = trunc.n_max + 1;
    const double q = p.q();

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * nb, 2 * nb);
    for (int m = 0; m < nb; ++m) {
        const double base = p.omega * (m - q * q);
        H(m, m) = base + 0.5 * p.epsilon;
        H(nb + m, nb + m) = base - 0.5 * p.epsilon;
    }
    if (p.delta != 0.0) {
        for (int m = 0; m < nb; ++m) {
            for (int n = m; n < nb; ++n) {
                const double v = 0.5 * p.delta * overlap_D(m, n, q);
                H(m, nb + n) = v;
                H(n, nb + m) = v;
                H(nb + n, m) = v;
                H(nb + m, n) = v;
            }
        }
    }
    OperatorMatrix out;
    out.frame = Frame::rabi;  // same spectrum as build_rabi at matched truncation
    out.entries = std::move(H);
    return out;
}

// Frobenius norm of AB - BA.
inline double commutator_norm(const OperatorMatrix& A, const OperatorMatrix& B) {
    if (A.dim() != B.dim()) {
        throw std::invalid_argument("commutator_norm: dimension mismatch");
    }
    if (A.frame != B.frame) {
        throw std::invalid_argument("commutator_norm: frame mismatch");
    }
    return (A.entries * B.entries - B.entries * A.entries).norm();
}

}  // namespace rabi
