// eigensolver.hpp — Dense symmetric eigendecomposition with a verified
// residual/orthonormality contract.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "rabi/operators.hpp"

namespace rabi {

inline constexpr int kEighDimCap = 8192;
inline constexpr double kResidualBoundCap = 1e-9;

// Full spectrum: ascending eigenvalues, orthonormal eigenvector columns,
// and the measured relative residual max_i ||H v_i - E_i v_i|| / ||H||_F.
struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    double residual_bound{0.0};
    int dim{0};
};

namespace detail {

// Deterministic sign convention: largest-magnitude component positive
// (first such index on ties).
inline void fix_column_signs(Eigen::MatrixXd& V) {
    for (int j = 0; j < V.cols(); ++j) {
        int imax = 0;
        double amax = 0.0;
        for (int i = 0; i < V.rows(); ++i) {
            const double a = std::abs(V(i, j));
            if (a > amax) {
                amax = a;
                imax = i;
            }
        }
        if (V(imax, j) < 0.0) V.col(j) = -V.col(j);
    }
}

}  // namespace detail

inline Spectrum eigh(const Eigen::MatrixXd& H) {
    if (H.rows() != H.cols()) {
        throw std::invalid_argument("eigh: matrix must be square");
    }
    if (H.rows() > kEighDimCap) {
        throw std::invalid_argument("eigh: dimension exceeds cap");
    }
    if (H != H.transpose()) {
        throw std::invalid_argument("eigh: matrix must be symmetric as stored");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: eigendecomposition failed");
    }

    Spectrum s;
    s.dim = static_cast<int>(H.rows());
    s.values = solver.eigenvalues();
    s.vectors = solver.eigenvectors();
    detail::fix_column_signs(s.vectors);

    const double hnorm = H.norm();
    if (hnorm > 0.0) {
        double worst = 0.0;
        const Eigen::MatrixXd R = H * s.vectors - s.vectors * s.values.asDiagonal();
        for (int j = 0; j < s.dim; ++j) {
            worst = std::max(worst, R.col(j).norm());
        }
        s.residual_bound = worst / hnorm;
    }
    if (s.residual_bound > kResidualBoundCap) {
        throw std::runtime_error("eigh: residual bound contract violated");
    }
    return s;
}

inline Spectrum eigh(const OperatorMatrix& H) { return eigh(H.entries); }

struct GroundState {
    double energy{0.0};
    Eigen::VectorXd psi;
    bool near_degenerate{false};  // gap to the next level < 1e-10 * ||H||_F
};

inline GroundState ground(const Eigen::MatrixXd& H) {
    const Spectrum s = eigh(H);
    GroundState g;
    g.energy = s.values(0);
    g.psi = s.vectors.col(0);
    if (s.dim > 1) {
        g.near_degenerate = (s.values(1) - s.values(0)) < 1e-10 * H.norm();
    }
    return g;
}

inline GroundState ground(const OperatorMatrix& H) { return ground(H.entries); }

}  // namespace rabi
