// scaling.hpp — Critical scale beta_c, rescaled coordinates beta' and
// beta'', the kappa-free collapse curve, and collapse-quality metrics.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rabi/displaced.hpp"

namespace rabi {

enum class ScalingMode { prime, double_prime };

// beta_c = -ln(2 kappa^2) / 4; positive for 0 < |kappa| < 1/sqrt(2),
// negative (allowed, but flagged by callers) beyond that. kappa = 0 is an error.
inline double beta_c(double kappa) {
    if (kappa == 0.0) {
        throw std::domain_error("beta_c: kappa must be nonzero");
    }
    return -std::log(2.0 * kappa * kappa) / 4.0;
}

inline double rescale(double beta, double kappa, ScalingMode mode) {
    const double bc = beta_c(kappa);
    if (mode == ScalingMode::prime) {
        if (bc == 0.0) {
            throw std::domain_error("rescale: beta_c = 0, beta' undefined");
        }
        return beta / bc;
    }
    return (beta - bc) / std::sqrt(27.0);
}

// Rescaled form of the population inversion,
//   <sigma_z> = -kappa / sqrt(kappa^2 + e^{beta' ln(2 kappa^2)}),
// evaluated in the log domain. At beta' = 1 this is -1/sqrt(3) for every
// valid kappa.
inline double sigma_z_of_beta_prime(double beta_prime, double kappa) {
    if (kappa == 0.0) {
        throw std::domain_error("sigma_z_of_beta_prime: kappa must be nonzero");
    }
    const double t = beta_prime * std::log(2.0 * kappa * kappa) -
                     2.0 * std::log(std::abs(kappa));
    return -detail::sign_of(kappa) * std::exp(-0.5 * detail::softplus(t));
}

// Universal collapse curve <sigma_z(beta'')> = -1 / sqrt(1 + 2 e^{-12 sqrt(3) beta''}).
inline double universal_curve(double beta_double_prime) {
    const double t = std::log(2.0) - 12.0 * std::sqrt(3.0) * beta_double_prime;
    return -std::exp(-0.5 * detail::softplus(t));
}

struct CollapsePoint {
    double beta_double_prime;
    double value;
};

struct CollapseDeviation {
    double max_pairwise{0.0};       // max over grid of max pairwise |difference|
    double max_from_universal{0.0};
};

// All series must share the same beta'' grid.
inline CollapseDeviation collapse_deviation(
    const std::vector<std::vector<CollapsePoint>>& curves) {
    if (curves.size() < 2) {
        throw std::invalid_argument("collapse_deviation: need >= 2 series");
    }
    const std::size_t npts = curves.front().size();
    for (const auto& c : curves) {
        if (c.size() != npts) {
            throw std::invalid_argument("collapse_deviation: grid mismatch");
        }
        for (std::size_t i = 0; i < npts; ++i) {
            if (c[i].beta_double_prime != curves.front()[i].beta_double_prime) {
                throw std::invalid_argument("collapse_deviation: grid mismatch");
            }
        }
    }

    CollapseDeviation dev;
    for (std::size_t i = 0; i < npts; ++i) {
        const double u = universal_curve(curves.front()[i].beta_double_prime);
        for (std::size_t a = 0; a < curves.size(); ++a) {
            dev.max_from_universal =
                std::max(dev.max_from_universal, std::abs(curves[a][i].value - u));
            for (std::size_t b = a + 1; b < curves.size(); ++b) {
                dev.max_pairwise = std::max(
                    dev.max_pairwise, std::abs(curves[a][i].value - curves[b][i].value));
            }
        }
    }
    return dev;
}

// Deviation of one series from the universal curve.
inline double deviation_from_universal(const std::vector<CollapsePoint>& curve) {
    double d = 0.0;
    for (const auto& pt : curve) {
        d = std::max(d, std::abs(pt.value - universal_curve(pt.beta_double_prime)));
    }
    return d;
}

}  // namespace rabi
