// figures.hpp — Figure-data jobs: one CSV per curve plus a JSON manifest
// recording every parameter used, including the documented defaults filled
// in where a figure leaves parameters open (Delta/omega = 1e-2, 401 points).

#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabi/sweep.hpp"

namespace rabi {

namespace fig_detail {

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("figure_job: cannot open " + path.string());
    }
    return os;
}

inline std::string kappa_tag(double kappa) {
    std::ostringstream ss;
    ss << kappa;
    std::string s = ss.str();
    for (char& c : s) {
        if (c == '-' || c == '+' || c == '.') c = '_';
    }
    return s;
}

// One JC population-inversion curve vs lambda/lambda_c.
inline SweepResult jc_inversion_curve(double delta, double kappa, double omega,
                                      double x_lo, double x_hi, int points) {
    const double lambda_c = std::sqrt(omega * std::abs(delta));
    SweepSpec spec;
    spec.model = ModelKind::jc;
    spec.base.delta = delta;
    spec.base.epsilon = kappa * std::abs(delta);
    spec.base.omega = omega;
    spec.swept = SweptVar::lambda;
    spec.grid = Grid{x_lo * lambda_c, x_hi * lambda_c, points, GridSpacing::linear};
    spec.observables = {SweepObservable::sigma_z};
    return run_sweep(spec);
}

// Lowest `levels` eigenenergies plus S_F on a lambda grid, fixed truncation.
inline void write_energies_sf_csv(ModelKind kind, const ModelParams& base,
                                  const Grid& grid, int levels,
                                  std::ostream& os) {
    ModelParams pmax = base;
    pmax.lambda = std::max(std::abs(grid.from), std::abs(grid.to));
    const FockTruncation t = resolve_truncation(
        FockTruncation::adaptive(), pmax, kind, TruncationTarget::full_spectrum);
    const OperatorMatrix H1 = build_interaction(kind, t);

    os << "# model=" << (kind == ModelKind::rabi ? "rabi" : "jc")
       << " delta=" << format_double(base.delta)
       << " epsilon=" << format_double(base.epsilon)
       << " omega=" << format_double(base.omega) << " n_max=" << t.n_max << "\n";
    os << "index,lambda,beta";
    for (int k = 0; k < levels; ++k) os << ",E" << k;
    os << ",s_f\n";
    for (int i = 0; i < grid.points; ++i) {
        ModelParams p = base;
        p.lambda = grid.value(i);
        const OperatorMatrix H = build_model(kind, p, t);
        const Spectrum s = eigh(H);
        os << i << "," << format_double(p.lambda) << "," << format_double(p.beta());
        for (int k = 0; k < levels; ++k) os << "," << format_double(s.values(k));
        os << "," << format_double(fidelity_susceptibility_sum(s, H1, H.entries.norm()))
           << "\n";
    }
}

}  // namespace fig_detail

// Emits the data behind one figure panel into out_dir; returns the files written.
inline std::vector<std::filesystem::path> figure_job(const std::string& name,
                                                     const std::filesystem::path& out_dir,
                                                     int points = 401) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<fs::path> files;
    nlohmann::json manifest;
    manifest["figure"] = name;
    manifest["points"] = points;
    manifest["defaults"] = {{"delta_over_omega", 1e-2}, {"omega", 1.0}};

    const double omega = 1.0;
    const double delta = 1e-2;

    if (name == "fig1a") {
        // analytic <sigma_z> vs beta' for several kappa; fixed point at beta'=1
        const std::vector<double> kappas{1e-6, 1e-4, 1e-2};
        manifest["kappa"] = kappas;
        for (double kappa : kappas) {
            SweepSpec spec;
            spec.model = ModelKind::rabi;
            spec.base.delta = delta;
            spec.base.epsilon = kappa * delta;
            spec.base.omega = omega;
            spec.swept = SweptVar::beta_prime;
            spec.grid = Grid{0.0, 2.0, points, GridSpacing::linear};
            spec.observables = {SweepObservable::analytic_sigma_z};
            const SweepResult r = run_sweep(spec);
            auto path = out_dir / ("fig1a_kappa_" + fig_detail::kappa_tag(kappa) + ".csv");
            auto os = fig_detail::open_out(path);
            write_sweep_csv(r, os);
            files.push_back(path);
        }
    } else if (name == "fig1b") {
        // analytic collapse onto the universal curve vs beta''
        const std::vector<double> kappas{1e-6, 1e-4, 1e-2, 1e-1};
        manifest["kappa"] = kappas;
        std::vector<std::vector<CollapsePoint>> curves;
        for (double kappa : kappas) {
            const double bc = beta_c(kappa);
            std::vector<CollapsePoint> curve(points);
            for (int i = 0; i < points; ++i) {
                const double bpp = -1.0 + 2.0 * i / static_cast<double>(points - 1);
                const double beta = bc + std::sqrt(27.0) * bpp;
                curve[i] = {bpp, beta >= 0.0 ? ground_sigma_z(beta, kappa)
                                             : std::nan("")};
            }
            curves.push_back(curve);
        }
        auto path = out_dir / "fig1b_collapse.csv";
        auto os = fig_detail::open_out(path);
        os << "beta_double_prime,universal";
        for (double kappa : kappas) os << ",kappa_" << fig_detail::kappa_tag(kappa);
        os << ",max_pairwise_deviation\n";
        for (int i = 0; i < points; ++i) {
            const double bpp = curves[0][i].beta_double_prime;
            os << format_double(bpp) << "," << format_double(universal_curve(bpp));
            double lo = 1.0, hi = -1.0;
            for (const auto& c : curves) {
                os << "," << format_double(c[i].value);
                if (!std::isnan(c[i].value)) {
                    lo = std::min(lo, c[i].value);
                    hi = std::max(hi, c[i].value);
                }
            }
            os << "," << format_double(hi >= lo ? hi - lo : std::nan("")) << "\n";
        }
        files.push_back(path);
    } else if (name == "fig2a") {
        // Rabi model: numeric and analytic inversion vs beta', kappa = 1e-6
        const double kappa = 1e-6;
        manifest["kappa"] = kappa;
        SweepSpec spec;
        spec.model = ModelKind::rabi;
        spec.base.delta = delta;
        spec.base.epsilon = kappa * delta;
        spec.base.omega = omega;
        spec.swept = SweptVar::beta_prime;
        spec.grid = Grid{0.05, 2.0, points, GridSpacing::linear};
        spec.observables = {SweepObservable::sigma_z, SweepObservable::analytic_sigma_z};
        // one truncation for the whole curve, resolved at the largest coupling
        ModelParams pmax = spec.base;
        pmax.lambda = std::sqrt(2.0 * beta_c(kappa)) * omega;
        spec.truncation =
            resolve_truncation(FockTruncation::adaptive(), pmax, spec.model,
                               TruncationTarget::ground);
        const SweepResult r = run_sweep(spec);
        auto path = out_dir / "fig2a_rabi.csv";
        auto os = fig_detail::open_out(path);
        write_sweep_csv(r, os);
        files.push_back(path);
    } else if (name == "fig2b") {
        // JC model, positive vs negative Delta, plotted against lambda/lambda_c
        // (the paper's own beta' axis for the JC panel is left ambiguous)
        const double kappa = 1e-6;
        manifest["kappa"] = kappa;
        manifest["x_axis"] = "lambda_over_lambda_c";
        for (double d : {delta, -delta}) {
            const SweepResult r =
                fig_detail::jc_inversion_curve(d, kappa, omega, 0.5, 1.5, points);
            auto path = out_dir / (d > 0 ? "fig2b_delta_positive.csv"
                                         : "fig2b_delta_negative.csv");
            auto os = fig_detail::open_out(path);
            write_sweep_csv(r, os);
            files.push_back(path);
        }
    } else if (name == "fig2c") {
        const std::vector<double> kappas{1e-10, 1e-6, 1e-2, 1e-1};
        manifest["kappa"] = kappas;
        for (double kappa : kappas) {
            const SweepResult r =
                fig_detail::jc_inversion_curve(delta, kappa, omega, 0.5, 1.5, points);
            auto path = out_dir / ("fig2c_kappa_" + fig_detail::kappa_tag(kappa) + ".csv");
            auto os = fig_detail::open_out(path);
            write_sweep_csv(r, os);
            files.push_back(path);
        }
    } else if (name == "fig3a" || name == "fig3b") {
        const double kappa = 1e-2;
        manifest["kappa"] = kappa;
        ModelParams base;
        base.delta = delta;
        base.epsilon = kappa * delta;
        base.omega = omega;
        Grid grid;
        ModelKind kind;
        if (name == "fig3a") {
            kind = ModelKind::jc;
            const double lambda_c = std::sqrt(omega * delta);
            grid = Grid{0.5 * lambda_c, 1.5 * lambda_c, points, GridSpacing::linear};
        } else {
            kind = ModelKind::rabi;
            const double bc = beta_c(kappa);
            grid = Grid{std::sqrt(0.5 * bc) * omega, std::sqrt(1.5 * bc) * omega,
                        points, GridSpacing::linear};
        }
        auto path = out_dir / (name + "_energies_sf.csv");
        auto os = fig_detail::open_out(path);
        fig_detail::write_energies_sf_csv(kind, base, grid, 6, os);
        files.push_back(path);
    } else {
        throw std::invalid_argument("figure_job: unknown figure '" + name + "'");
    }

    auto mpath = out_dir / (name + "_manifest.json");
    auto mos = fig_detail::open_out(mpath);
    mos << manifest.dump(2) << "\n";
    files.push_back(mpath);
    return files;
}

}  // namespace rabi
