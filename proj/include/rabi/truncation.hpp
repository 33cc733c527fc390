// truncation.hpp — Convergence-controlled choice of the Fock cutoff.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rabi/eigensolver.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/params.hpp"

namespace rabi {

enum class TruncationTarget { ground, full_spectrum };

inline constexpr int kTruncationCap = 4096;

namespace detail {

// Probability mass of the ground state on the top two Fock levels.
inline double edge_mass(const Eigen::VectorXd& psi, int n_max) {
    double m = 0.0;
    for (int n = std::max(0, n_max - 1); n <= n_max; ++n) {
        m += psi(2 * n) * psi(2 * n) + psi(2 * n + 1) * psi(2 * n + 1);
    }
    return m;
}

}  // namespace detail

// Returns the smallest tested n_max for which (a) doubling it moves the
// tracked energies by less than tol*omega and (b) the ground state carries
// < 1e-12 probability on the top two Fock levels. Starting guess
// n_max0 = max(32, ceil(4(q^2 + 3q) + 20)). Throws instead of silently
// truncating when the cap is reached.
inline FockTruncation choose_truncation(const ModelParams& p,
                                        TruncationTarget target, double tol,
                                        ModelKind kind = ModelKind::rabi) {
    p.validate();
    const double q = p.q();
    int n = std::max(32, static_cast<int>(std::ceil(4.0 * (q * q + 3.0 * q) + 20.0)));

    const int levels = (target == TruncationTarget::ground) ? 1 : 8;

    while (n <= kTruncationCap) {
        const int n2 = 2 * n;
        const Spectrum s1 = eigh(build_model(kind, p, FockTruncation::fixed(n)));
        const Spectrum s2 = eigh(build_model(kind, p, FockTruncation::fixed(n2)));

        double dmax = 0.0;
        for (int k = 0; k < std::min(levels, s1.dim); ++k) {
            dmax = std::max(dmax, std::abs(s1.values(k) - s2.values(k)));
        }
        const double mass = detail::edge_mass(s1.vectors.col(0), n);
        if (dmax < tol * p.omega && mass < 1e-12) {
            FockTruncation t = FockTruncation::fixed(n);
            t.policy = TruncationPolicy::adaptive;
            t.tolerance = tol;
            return t;
        }
        n = n2;
    }
    throw std::runtime_error("choose_truncation: no convergence below n_max cap");
}

// Resolve a possibly-adaptive truncation request into a fixed cutoff.
inline FockTruncation resolve_truncation(const FockTruncation& t,
                                         const ModelParams& p, ModelKind kind,
                                         TruncationTarget target) {
    if (t.policy == TruncationPolicy::fixed) {
        t.validate();
        return t;
    }
    return choose_truncation(p, target, t.tolerance, kind);
}

}  // namespace rabi
