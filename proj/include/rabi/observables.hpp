// observables.hpp — Expectation values, gap and crossing detection, and
// fidelity susceptibility for both models.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabi/eigensolver.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/truncation.hpp"

namespace rabi {

// The paper's <sigma_z> is sigma_z⊗I in the rabi frame and its rotated
// image sigma_x⊗I in the jc frame.
inline double population_inversion(const Eigen::VectorXd& state, Frame frame) {
    const int nb = static_cast<int>(state.size()) / 2;
    double v = 0.0;
    if (frame == Frame::rabi) {
        for (int n = 0; n < nb; ++n) {
            v += state(2 * n) * state(2 * n) - state(2 * n + 1) * state(2 * n + 1);
        }
    } else {
        for (int n = 0; n < nb; ++n) {
            v += 2.0 * state(2 * n) * state(2 * n + 1);
        }
    }
    return v;
}

inline double parity_expectation(const Eigen::VectorXd& state, Frame frame) {
    const int nb = static_cast<int>(state.size()) / 2;
    double v = 0.0;
    if (frame == Frame::rabi) {
        // sigma_x ⊗ (-1)^n
        for (int n = 0; n < nb; ++n) {
            const double phase = (n % 2 == 0) ? 1.0 : -1.0;
            v += phase * 2.0 * state(2 * n) * state(2 * n + 1);
        }
    } else {
        // -sigma_z ⊗ (-1)^n
        for (int n = 0; n < nb; ++n) {
            const double phase = (n % 2 == 0) ? 1.0 : -1.0;
            v -= phase * (state(2 * n) * state(2 * n) -
                          state(2 * n + 1) * state(2 * n + 1));
        }
    }
    return v;
}

inline double ground_gap(const ModelParams& p, ModelKind kind,
                         const FockTruncation& trunc) {
    const FockTruncation t =
        resolve_truncation(trunc, p, kind, TruncationTarget::ground);
    const Spectrum s = eigh(build_model(kind, p, t));
    return s.values(1) - s.values(0);
}

enum class CrossingKind { crossing, avoided };

struct CrossingResult {
    double location{0.0};   // lambda minimizing the gap
    double min_gap{0.0};
    CrossingKind kind{CrossingKind::avoided};
    // ground-state parity just below/above the location (filled for crossings)
    double parity_below{0.0};
    double parity_above{0.0};
};

inline constexpr double kCrossingGapThreshold = 1e-8;  // in units of omega

// Grid scan over lambda followed by golden-section refinement of the gap
// minimum. Throws when the scan finds no interior minimum.
inline CrossingResult find_crossing(const ModelParams& params_template,
                                    ModelKind kind, double lambda_lo,
                                    double lambda_hi, int grid_points,
                                    FockTruncation trunc = FockTruncation::adaptive()) {
    if (!(lambda_lo >= 0.0) || !(lambda_hi > lambda_lo)) {
        throw std::invalid_argument("find_crossing: need 0 <= lambda_lo < lambda_hi");
    }
    if (grid_points < 16) {
        throw std::invalid_argument("find_crossing: need >= 16 grid points");
    }

    ModelParams p = params_template;
    p.lambda = lambda_hi;
    const FockTruncation t =
        resolve_truncation(trunc, p, kind, TruncationTarget::ground);

    auto gap_at = [&](double lam) {
        ModelParams pp = params_template;
        pp.lambda = lam;
        const Spectrum s = eigh(build_model(kind, pp, t));
        return s.values(1) - s.values(0);
    };

    std::vector<double> lam(grid_points), gap(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        lam[i] = lambda_lo +
                 (lambda_hi - lambda_lo) * i / static_cast<double>(grid_points - 1);
        gap[i] = gap_at(lam[i]);
    }
    int imin = 0;
    for (int i = 1; i < grid_points; ++i) {
        if (gap[i] < gap[imin]) imin = i;
    }
    if (imin == 0 || imin == grid_points - 1) {
        throw std::runtime_error("find_crossing: no interior gap minimum in range");
    }

    // golden-section on the bracketing interval
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lam[imin - 1], b = lam[imin + 1];
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = gap_at(x1), f2 = gap_at(x2);
    const double xtol = 1e-7 * params_template.omega;
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = gap_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = gap_at(x2);
        }
    }

    CrossingResult r;
    r.location = 0.5 * (a + b);
    r.min_gap = std::min(f1, f2);
    r.kind = (r.min_gap < kCrossingGapThreshold * params_template.omega)
                 ? CrossingKind::crossing
                 : CrossingKind::avoided;
    if (r.kind == CrossingKind::crossing) {
        const double off = std::max(1e-2 * (lambda_hi - lambda_lo), 100.0 * xtol);
        for (int side = 0; side < 2; ++side) {
            ModelParams pp = params_template;
            pp.lambda = r.location + (side == 0 ? -off : off);
            const GroundState g = ground(build_model(kind, pp, t));
            const double pe = parity_expectation(g.psi, frame_of(kind));
            (side == 0 ? r.parity_below : r.parity_above) = pe;
        }
    }
    return r;
}

// S_F = sum_{n != 0} |<phi_n| H1 |phi_0>|^2 / (E_n - E_0)^2 with H1 the
// spin-field interaction (dH/dlambda). Requires a non-degenerate ground state.
inline double fidelity_susceptibility_sum(const Spectrum& s,
                                          const OperatorMatrix& H1,
                                          double hamiltonian_norm) {
    if (s.values(1) - s.values(0) <= 1e-10 * hamiltonian_norm) {
        throw std::runtime_error(
            "fidelity_susceptibility_sum: degenerate ground state");
    }
    const Eigen::VectorXd h1psi = H1.entries * s.vectors.col(0);
    double sf = 0.0;
    for (int n = 1; n < s.dim; ++n) {
        const double me = s.vectors.col(n).dot(h1psi);
        const double de = s.values(n) - s.values(0);
        sf += (me * me) / (de * de);
    }
    return sf;
}

inline double fidelity_susceptibility_sum(const ModelParams& p, ModelKind kind,
                                          const FockTruncation& trunc) {
    const FockTruncation t =
        resolve_truncation(trunc, p, kind, TruncationTarget::full_spectrum);
    const OperatorMatrix H = build_model(kind, p, t);
    return fidelity_susceptibility_sum(eigh(H), build_interaction(kind, t),
                                       H.entries.norm());
}

// Finite-difference estimator: F = |<phi_0(lambda)|phi_0(lambda+delta)>|,
// returns 2(1-F)/delta^2, a second-order estimate of S_F.
inline double fidelity_susceptibility_fd(const ModelParams& p, ModelKind kind,
                                         const FockTruncation& trunc,
                                         double delta_lambda) {
    if (!(delta_lambda > 0.0)) {
        throw std::invalid_argument("fidelity_susceptibility_fd: delta_lambda must be > 0");
    }
    const FockTruncation t =
        resolve_truncation(trunc, p, kind, TruncationTarget::ground);
    ModelParams p2 = p;
    p2.lambda += delta_lambda;
    const GroundState g1 = ground(build_model(kind, p, t));
    const GroundState g2 = ground(build_model(kind, p2, t));
    if (g1.near_degenerate || g2.near_degenerate) {
        throw std::runtime_error("fidelity_susceptibility_fd: degenerate endpoint");
    }
    const double f = std::abs(g1.psi.dot(g2.psi));
    return 2.0 * (1.0 - f) / (delta_lambda * delta_lambda);
}

}  // namespace rabi
