// operators.hpp — Elementary operators on the truncated spin ⊗ Fock space
//
// Every operator in this library is representable with real entries
// (sigma_y never appears), so matrices are dense real symmetric throughout.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "rabi/params.hpp"

namespace rabi {

enum class Frame { rabi, jc_rotated };

// Dense real matrix tagged with the basis/frame it lives in.
struct OperatorMatrix {
    Eigen::MatrixXd entries;
    Frame frame{Frame::rabi};
    bool hermitian{true};

    int dim() const { return static_cast<int>(entries.rows()); }
};

// Bosonic operators in the Fock sector alone (dimension n_max+1).
struct BosonOps {
    Eigen::MatrixXd a;             // sqrt(n+1) on the superdiagonal
    Eigen::MatrixXd a_dag;         // transpose of a
    Eigen::MatrixXd n_op;          // diag(0..n_max)
    Eigen::MatrixXd parity_phase;  // diag((-1)^n), real form of e^{i pi a†a}
};

inline BosonOps build_boson_ops(const FockTruncation& trunc) {
    trunc.validate();
    const int d = trunc.n_max + 1;
    BosonOps ops;
    ops.a = Eigen::MatrixXd::Zero(d, d);
    ops.n_op = Eigen::MatrixXd::Zero(d, d);
    ops.parity_phase = Eigen::MatrixXd::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        if (n + 1 < d) {
            ops.a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
        }
        ops.n_op(n, n) = static_cast<double>(n);
        ops.parity_phase(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    }
    ops.a_dag = ops.a.transpose();
    return ops;
}

namespace pauli {

inline Eigen::Matrix2d identity() { return Eigen::Matrix2d::Identity(); }

inline Eigen::Matrix2d sigma_x() {
    Eigen::Matrix2d m;
    m << 0, 1, 1, 0;
    return m;
}

inline Eigen::Matrix2d sigma_z() {
    Eigen::Matrix2d m;
    m << 1, 0, 0, -1;
    return m;
}

// sigma_+ raises |down> to |up> in the sigma_z eigenbasis
inline Eigen::Matrix2d sigma_plus() {
    Eigen::Matrix2d m;
    m << 0, 1, 0, 0;
    return m;
}

inline Eigen::Matrix2d sigma_minus() {
    Eigen::Matrix2d m;
    m << 0, 0, 1, 0;
    return m;
}

}  // namespace pauli

// Tensor product consistent with row = 2n + s: the Fock index is the slow one.
inline Eigen::MatrixXd tensor_spin_boson(const Eigen::Matrix2d& spin_op,
                                         const Eigen::MatrixXd& boson_op) {
    if (boson_op.rows() != boson_op.cols()) {
        throw std::invalid_argument("tensor_spin_boson: boson operator must be square");
    }
    const int nb = static_cast<int>(boson_op.rows());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * nb, 2 * nb);
    for (int n = 0; n < nb; ++n) {
        for (int m = 0; m < nb; ++m) {
            const double b = boson_op(n, m);
            if (b == 0.0) continue;
            for (int s = 0; s < 2; ++s) {
                for (int t = 0; t < 2; ++t) {
                    const double v = spin_op(s, t);
                    if (v == 0.0) continue;
                    out(2 * n + s, 2 * m + t) = v * b;
                }
            }
        }
    }
    return out;
}

}  // namespace rabi
