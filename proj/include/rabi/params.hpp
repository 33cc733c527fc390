// params.hpp — Model parameters and truncated Fock-space indexing

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rabi {

// Parameters of the biased spin-boson Hamiltonian
//   H = -(Delta/2) sigma_x + (epsilon/2) sigma_z + omega a†a + lambda (a+a†) sigma_z
// All energies share one unit (omega = 1 in most uses).
struct ModelParams {
    double delta{0.0};     // tunneling
    double epsilon{0.0};   // local bias
    double omega{1.0};     // boson frequency, > 0
    double lambda{0.0};    // spin-boson coupling, >= 0

    void validate() const {
        if (!(omega > 0.0) || !std::isfinite(omega)) {
            throw std::invalid_argument("ModelParams: omega must be finite and > 0");
        }
        if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
            throw std::invalid_argument("ModelParams: lambda must be finite and >= 0");
        }
        if (!std::isfinite(delta) || !std::isfinite(epsilon)) {
            throw std::invalid_argument("ModelParams: delta and epsilon must be finite");
        }
    }

    // dimensionless displacement q = lambda / omega
    double q() const { return lambda / omega; }

    // beta = q^2
    double beta() const { return q() * q(); }

    // kappa = epsilon / delta; undefined at delta = 0
    double kappa() const {
        if (delta == 0.0) {
            throw std::domain_error("ModelParams: kappa = epsilon/delta undefined at delta = 0");
        }
        return epsilon / delta;
    }
};

enum class TruncationPolicy { fixed, adaptive };

// Highest retained Fock index; Hilbert dimension is 2*(n_max+1).
struct FockTruncation {
    int n_max{32};
    TruncationPolicy policy{TruncationPolicy::fixed};
    double tolerance{1e-10};   // used by the adaptive policy

    static FockTruncation fixed(int n_max) {
        FockTruncation t;
        t.n_max = n_max;
        t.policy = TruncationPolicy::fixed;
        t.validate();
        return t;
    }

    static FockTruncation adaptive(double tol = 1e-10) {
        FockTruncation t;
        t.policy = TruncationPolicy::adaptive;
        t.tolerance = tol;
        return t;
    }

    void validate() const {
        if (n_max < 1) {
            throw std::invalid_argument("FockTruncation: n_max must be >= 1");
        }
    }

    int dim() const { return 2 * (n_max + 1); }
};

enum class Spin { up, down };

// Basis ordering interleaves spin within Fock level: row = 2n + (0 up, 1 down).
// Fixed and never configurable; photon-number-parity blocks are contiguous
// under a simple even/odd permutation of Fock levels.
inline int basis_index(Spin s, int n, int n_max) {
    if (n < 0 || n > n_max) {
        throw std::out_of_range("basis_index: Fock index " + std::to_string(n) +
                                " outside [0, " + std::to_string(n_max) + "]");
    }
    return 2 * n + (s == Spin::up ? 0 : 1);
}

struct BasisIndex {
    Spin spin;
    int n;
};

inline BasisIndex basis_unindex(int row, int n_max) {
    if (row < 0 || row >= 2 * (n_max + 1)) {
        throw std::out_of_range("basis_unindex: row out of range");
    }
    return BasisIndex{(row % 2 == 0) ? Spin::up : Spin::down, row / 2};
}

}  // namespace rabi
