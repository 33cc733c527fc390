// sweep.hpp — Deterministic parameter sweeps over a grid, with CSV output.
//
// Grid points are evaluated by a worker pool but gathered into pre-sized
// slots by grid index, so output is identical to serial execution.

#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rabi/displaced.hpp"
#include "rabi/eigensolver.hpp"
#include "rabi/hamiltonian.hpp"
#include "rabi/observables.hpp"
#include "rabi/scaling.hpp"
#include "rabi/truncation.hpp"

namespace rabi {

enum class SweptVar { lambda, beta, beta_prime, epsilon };
enum class GridSpacing { linear, log };
enum class SweepObservable {
    sigma_z,
    parity,
    gap,
    ground_energy,
    s_f,
    analytic_sigma_z
};

inline const char* to_string(SweepObservable o) {
    switch (o) {
        case SweepObservable::sigma_z: return "sigma_z";
        case SweepObservable::parity: return "parity";
        case SweepObservable::gap: return "gap";
        case SweepObservable::ground_energy: return "ground_energy";
        case SweepObservable::s_f: return "s_f";
        case SweepObservable::analytic_sigma_z: return "analytic_sigma_z";
    }
    return "?";
}

inline const char* to_string(SweptVar v) {
    switch (v) {
        case SweptVar::lambda: return "lambda";
        case SweptVar::beta: return "beta";
        case SweptVar::beta_prime: return "beta_prime";
        case SweptVar::epsilon: return "epsilon";
    }
    return "?";
}

struct Grid {
    double from{0.0};
    double to{1.0};
    int points{2};
    GridSpacing spacing{GridSpacing::linear};

    void validate() const {
        if (points < 1) throw std::invalid_argument("Grid: points must be >= 1");
        if (points > 1 && !(from < to)) {
            throw std::invalid_argument("Grid: need from < to");
        }
        if (spacing == GridSpacing::log && !(from > 0.0)) {
            throw std::invalid_argument("Grid: log spacing requires from > 0");
        }
    }

    double value(int i) const {
        if (points == 1) return from;
        const double t = i / static_cast<double>(points - 1);
        if (spacing == GridSpacing::linear) return from + (to - from) * t;
        return std::exp(std::log(from) + (std::log(to) - std::log(from)) * t);
    }
};

struct SweepSpec {
    ModelKind model{ModelKind::rabi};
    ModelParams base;                 // fixed parameters; swept field overridden
    SweptVar swept{SweptVar::lambda};
    Grid grid;
    std::vector<SweepObservable> observables;
    FockTruncation truncation{FockTruncation::adaptive()};
    int threads{0};  // 0: RABI_THREADS env var, else hardware concurrency

    void validate() const {
        base.validate();
        grid.validate();
        if (observables.empty()) {
            throw std::invalid_argument("SweepSpec: no observables requested");
        }
    }
};

struct SweepRow {
    int index{0};
    double swept_value{0.0};
    double lambda{std::nan("")};
    double beta{std::nan("")};
    double beta_prime{std::nan("")};        // nan when kappa undefined
    double beta_double_prime{std::nan("")};
    int n_max_used{0};
    std::map<SweepObservable, double> values;  // absent key => null, see error
    std::string error;                          // reason code; empty on success
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    double wall_seconds{0.0};
};

namespace detail {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RABI_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

inline bool wants(const SweepSpec& spec, SweepObservable o) {
    for (auto x : spec.observables) {
        if (x == o) return true;
    }
    return false;
}

inline SweepRow evaluate_point(const SweepSpec& spec, int i) {
    SweepRow row;
    row.index = i;
    row.swept_value = spec.grid.value(i);

    ModelParams p = spec.base;
    try {
        double kappa = std::nan("");
        if (p.delta != 0.0) kappa = p.epsilon / p.delta;

        switch (spec.swept) {
            case SweptVar::lambda:
                p.lambda = row.swept_value;
                break;
            case SweptVar::beta:
                if (row.swept_value < 0.0) throw std::domain_error("negative beta");
                p.lambda = std::sqrt(row.swept_value) * p.omega;
                break;
            case SweptVar::beta_prime: {
                if (std::isnan(kappa) || kappa == 0.0) {
                    throw std::domain_error("beta_prime sweep requires kappa != 0");
                }
                const double b = row.swept_value * beta_c(kappa);
                if (b < 0.0) throw std::domain_error("beta' * beta_c < 0");
                p.lambda = std::sqrt(b) * p.omega;
                break;
            }
            case SweptVar::epsilon:
                p.epsilon = row.swept_value;
                if (p.delta != 0.0) kappa = p.epsilon / p.delta;
                break;
        }
        p.validate();
        row.lambda = p.lambda;
        row.beta = p.beta();
        if (!std::isnan(kappa) && kappa != 0.0) {
            row.beta_prime = rescale(row.beta, kappa, ScalingMode::prime);
            row.beta_double_prime = rescale(row.beta, kappa, ScalingMode::double_prime);
        }

        if (wants(spec, SweepObservable::analytic_sigma_z)) {
            if (std::isnan(kappa)) {
                throw std::domain_error("analytic_sigma_z requires delta != 0");
            }
            row.values[SweepObservable::analytic_sigma_z] =
                ground_sigma_z(row.beta, kappa);
        }

        const bool numeric = wants(spec, SweepObservable::sigma_z) ||
                             wants(spec, SweepObservable::parity) ||
                             wants(spec, SweepObservable::gap) ||
                             wants(spec, SweepObservable::ground_energy) ||
                             wants(spec, SweepObservable::s_f);
        if (numeric) {
            const FockTruncation t = resolve_truncation(
                spec.truncation, p, spec.model,
                wants(spec, SweepObservable::s_f) ? TruncationTarget::full_spectrum
                                                  : TruncationTarget::ground);
            row.n_max_used = t.n_max;
            const OperatorMatrix H = build_model(spec.model, p, t);
            const Spectrum s = eigh(H);
            const Frame frame = frame_of(spec.model);
            if (wants(spec, SweepObservable::sigma_z)) {
                row.values[SweepObservable::sigma_z] =
                    population_inversion(s.vectors.col(0), frame);
            }
            if (wants(spec, SweepObservable::parity)) {
                row.values[SweepObservable::parity] =
                    parity_expectation(s.vectors.col(0), frame);
            }
            if (wants(spec, SweepObservable::gap)) {
                row.values[SweepObservable::gap] = s.values(1) - s.values(0);
            }
            if (wants(spec, SweepObservable::ground_energy)) {
                row.values[SweepObservable::ground_energy] = s.values(0);
            }
            if (wants(spec, SweepObservable::s_f)) {
                row.values[SweepObservable::s_f] =
                    fidelity_susceptibility_sum(p, spec.model, t);
            }
        }
    } catch (const std::exception& e) {
        row.error = e.what();
        for (char& c : row.error) {
            if (c == ',' || c == '\n') c = ';';
        }
    }
    return row;
}

}  // namespace detail

inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();

    SweepResult result;
    result.spec = spec;
    result.rows.resize(spec.grid.points);

    const int nthreads =
        std::min(detail::resolve_threads(spec.threads), spec.grid.points);
    if (nthreads <= 1) {
        for (int i = 0; i < spec.grid.points; ++i) {
            result.rows[i] = detail::evaluate_point(spec, i);
        }
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= spec.grid.points) return;
                result.rows[i] = detail::evaluate_point(spec, i);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

// 17 significant digits: round-trip exact for binary64.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_sweep_csv(const SweepResult& r, std::ostream& os) {
    const SweepSpec& s = r.spec;
    os << "# model=" << (s.model == ModelKind::rabi ? "rabi" : "jc") << "\n";
    os << "# delta=" << format_double(s.base.delta)
       << " epsilon=" << format_double(s.base.epsilon)
       << " omega=" << format_double(s.base.omega)
       << " lambda=" << format_double(s.base.lambda) << "\n";
    os << "# swept=" << to_string(s.swept) << " from=" << format_double(s.grid.from)
       << " to=" << format_double(s.grid.to) << " points=" << s.grid.points
       << " spacing=" << (s.grid.spacing == GridSpacing::linear ? "linear" : "log")
       << "\n";
    os << "# truncation="
       << (s.truncation.policy == TruncationPolicy::fixed ? "fixed" : "adaptive")
       << " n_max=" << s.truncation.n_max
       << " tol=" << format_double(s.truncation.tolerance) << "\n";

    os << "index," << to_string(s.swept) << ",lambda,beta,beta_prime,beta_double_prime,n_max";
    for (auto o : s.observables) os << "," << to_string(o);
    os << ",error\n";

    for (const auto& row : r.rows) {
        os << row.index << "," << format_double(row.swept_value) << ","
           << format_double(row.lambda) << "," << format_double(row.beta) << ","
           << format_double(row.beta_prime) << ","
           << format_double(row.beta_double_prime) << "," << row.n_max_used;
        for (auto o : s.observables) {
            os << ",";
            const auto it = row.values.find(o);
            if (it != row.values.end()) os << format_double(it->second);
        }
        os << "," << row.error << "\n";
    }
}

}  // namespace rabi
