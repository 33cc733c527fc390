// rabi_cli.cpp — command-line front end: parameter sweeps, figure data,
// spectra, platform parameter maps, and the self-check suite.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "rabi/checks.hpp"
#include "rabi/experiment.hpp"
#include "rabi/figures.hpp"
#include "rabi/sweep.hpp"

namespace {

// Flat key/value config with [model], [sweep], [experiment], [output]
// sections; every key mirrors a CLI flag and CLI flags take precedence.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CLI::ValidationError("--config", "cannot open " + path);
    }
    std::map<std::string, std::string> kv;
    std::string line, section;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("--config", "bad line: " + line);
        }
        kv[section + "." + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

struct ConfigOverlay {
    std::map<std::string, std::string> kv;

    void apply(const CLI::Option* opt, const std::string& key, double& out) const {
        const auto it = kv.find(key);
        if (opt->count() == 0 && it != kv.end()) out = std::stod(it->second);
    }
    void apply(const CLI::Option* opt, const std::string& key, int& out) const {
        const auto it = kv.find(key);
        if (opt->count() == 0 && it != kv.end()) out = std::stoi(it->second);
    }
    void apply(const CLI::Option* opt, const std::string& key, std::string& out) const {
        const auto it = kv.find(key);
        if (opt->count() == 0 && it != kv.end()) out = it->second;
    }
};

rabi::ModelKind parse_model(const std::string& s) {
    if (s == "rabi") return rabi::ModelKind::rabi;
    if (s == "jc") return rabi::ModelKind::jc;
    throw CLI::ValidationError("--model", "must be rabi or jc");
}

rabi::FockTruncation parse_nmax(const std::string& s) {
    if (s == "auto") return rabi::FockTruncation::adaptive();
    return rabi::FockTruncation::fixed(std::stoi(s));
}

rabi::SweepObservable parse_observable(const std::string& s) {
    using O = rabi::SweepObservable;
    for (O o : {O::sigma_z, O::parity, O::gap, O::ground_energy, O::s_f,
                O::analytic_sigma_z}) {
        if (s == rabi::to_string(o)) return o;
    }
    throw CLI::ValidationError("--obs", "unknown observable " + s);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& out) {
    if (out.empty() || out == "-") return std::cout;
    file.open(out);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + out);
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biased Rabi / Jaynes-Cummings model toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key/value config file")
        ->expected(1);

    // shared model flags
    std::string model_s = "rabi", nmax_s = "auto", out_path;
    double delta = 1e-2, epsilon = 0.0, omega = 1.0, lambda = 0.0;
    int threads = 0;

    auto add_model_flags = [&](CLI::App* sub) {
        std::map<std::string, CLI::Option*> opts;
        opts["model.model"] = sub->add_option("--model", model_s, "rabi|jc");
        opts["model.delta"] = sub->add_option("--delta", delta, "tunneling Delta");
        opts["model.epsilon"] = sub->add_option("--epsilon", epsilon, "bias epsilon");
        opts["model.omega"] = sub->add_option("--omega", omega, "boson frequency");
        opts["model.lambda"] = sub->add_option("--lambda", lambda, "coupling lambda");
        opts["model.nmax"] = sub->add_option("--nmax", nmax_s, "Fock cutoff N or 'auto'");
        opts["output.out"] = sub->add_option("--out", out_path, "output file/dir");
        opts["sweep.threads"] =
            sub->add_option("--threads", threads, "worker count (0 = auto)");
        return opts;
    };

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate observables over a grid");
    auto sweep_opts = add_model_flags(sweep_cmd);
    std::string swept_s = "lambda", spacing_s = "linear", obs_s = "sigma_z";
    double grid_from = 0.0, grid_to = 1.0;
    int grid_points = 101;
    sweep_opts["sweep.swept"] =
        sweep_cmd->add_option("--swept", swept_s, "lambda|beta|beta_prime|epsilon");
    sweep_opts["sweep.from"] = sweep_cmd->add_option("--from", grid_from);
    sweep_opts["sweep.to"] = sweep_cmd->add_option("--to", grid_to);
    sweep_opts["sweep.points"] = sweep_cmd->add_option("--points", grid_points);
    sweep_opts["sweep.spacing"] =
        sweep_cmd->add_option("--spacing", spacing_s, "linear|log");
    sweep_opts["sweep.obs"] =
        sweep_cmd->add_option("--obs", obs_s, "comma-separated observables");

    // figure
    auto* figure_cmd = app.add_subcommand("figure", "emit data for one figure panel");
    std::string figure_name;
    int figure_points = 401;
    figure_cmd->add_option("name", figure_name,
                           "fig1a|fig1b|fig2a|fig2b|fig2c|fig3a|fig3b")
        ->required();
    auto figure_opts = add_model_flags(figure_cmd);
    figure_opts["sweep.points"] = figure_cmd->add_option("--points", figure_points);

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "print the lowest eigenvalues");
    auto spectrum_opts = add_model_flags(spectrum_cmd);
    int levels = 8;
    spectrum_opts["sweep.levels"] = spectrum_cmd->add_option("--levels", levels);

    // map
    auto* map_cmd = app.add_subcommand("map", "map platform parameters onto the model");
    std::string system_s;
    auto map_opts = add_model_flags(map_cmd);
    map_cmd->add_option("--system", system_s, "circuit-qed|nv|ion")->required();
    std::map<std::string, double> exp_vals;
    for (const char* key :
         {"omega_q", "omega_b", "omega_1", "omega_2", "Omega_1", "Omega_2",
          "Omega_3", "G", "Omega_prime", "Delta_prime", "omega_m", "lambda_prime",
          "Omega_tilde", "epsilon_tilde", "nu_tilde", "eta"}) {
        exp_vals[key] = 0.0;
        map_opts["experiment." + std::string(key)] =
            map_cmd->add_option("--" + std::string(key), exp_vals[key]);
    }

    // check
    auto* check_cmd = app.add_subcommand("check", "run the self-check suite");
    std::string level_s = "fast";
    check_cmd->add_option("--level", level_s, "fast|full");
    check_cmd->add_option("--out", out_path, "write JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        ConfigOverlay overlay;
        if (!config_path.empty()) overlay.kv = load_config(config_path);
        auto apply_all = [&](std::map<std::string, CLI::Option*>& opts) {
            for (auto& [key, opt] : opts) {
                if (key == "model.model") overlay.apply(opt, key, model_s);
                else if (key == "model.delta") overlay.apply(opt, key, delta);
                else if (key == "model.epsilon") overlay.apply(opt, key, epsilon);
                else if (key == "model.omega") overlay.apply(opt, key, omega);
                else if (key == "model.lambda") overlay.apply(opt, key, lambda);
                else if (key == "model.nmax") overlay.apply(opt, key, nmax_s);
                else if (key == "output.out") overlay.apply(opt, key, out_path);
                else if (key == "sweep.threads") overlay.apply(opt, key, threads);
            }
        };

        if (sweep_cmd->parsed()) {
            apply_all(sweep_opts);
            overlay.apply(sweep_opts["sweep.swept"], "sweep.swept", swept_s);
            overlay.apply(sweep_opts["sweep.from"], "sweep.from", grid_from);
            overlay.apply(sweep_opts["sweep.to"], "sweep.to", grid_to);
            overlay.apply(sweep_opts["sweep.points"], "sweep.points", grid_points);
            overlay.apply(sweep_opts["sweep.spacing"], "sweep.spacing", spacing_s);
            overlay.apply(sweep_opts["sweep.obs"], "sweep.obs", obs_s);

            rabi::SweepSpec spec;
            spec.model = parse_model(model_s);
            spec.base = {delta, epsilon, omega, lambda};
            if (swept_s == "lambda") spec.swept = rabi::SweptVar::lambda;
            else if (swept_s == "beta") spec.swept = rabi::SweptVar::beta;
            else if (swept_s == "beta_prime") spec.swept = rabi::SweptVar::beta_prime;
            else if (swept_s == "epsilon") spec.swept = rabi::SweptVar::epsilon;
            else throw CLI::ValidationError("--swept", "unknown variable " + swept_s);
            spec.grid.from = grid_from;
            spec.grid.to = grid_to;
            spec.grid.points = grid_points;
            if (spacing_s == "linear") spec.grid.spacing = rabi::GridSpacing::linear;
            else if (spacing_s == "log") spec.grid.spacing = rabi::GridSpacing::log;
            else throw CLI::ValidationError("--spacing", "must be linear or log");
            for (const auto& o : split_csv(obs_s)) {
                spec.observables.push_back(parse_observable(o));
            }
            spec.truncation = parse_nmax(nmax_s);
            spec.threads = threads;

            const rabi::SweepResult result = rabi::run_sweep(spec);
            std::ofstream file;
            rabi::write_sweep_csv(result, open_or_stdout(file, out_path));
        } else if (figure_cmd->parsed()) {
            apply_all(figure_opts);
            const std::string dir = out_path.empty() ? "." : out_path;
            for (const auto& f : rabi::figure_job(figure_name, dir, figure_points)) {
                std::cout << f.string() << "\n";
            }
        } else if (spectrum_cmd->parsed()) {
            apply_all(spectrum_opts);
            rabi::ModelParams p{delta, epsilon, omega, lambda};
            const rabi::ModelKind kind = parse_model(model_s);
            const rabi::FockTruncation t = rabi::resolve_truncation(
                parse_nmax(nmax_s), p, kind, rabi::TruncationTarget::full_spectrum);
            const rabi::Spectrum s = rabi::eigh(rabi::build_model(kind, p, t));
            std::ofstream file;
            auto& os = open_or_stdout(file, out_path);
            os << "# model=" << model_s << " n_max=" << t.n_max << "\n";
            os << "level,energy\n";
            for (int k = 0; k < std::min(levels, s.dim); ++k) {
                os << k << "," << rabi::format_double(s.values(k)) << "\n";
            }
        } else if (map_cmd->parsed()) {
            apply_all(map_opts);
            for (auto& [key, val] : exp_vals) {
                overlay.apply(map_opts["experiment." + key], "experiment." + key, val);
            }
            rabi::MappedModel m;
            if (system_s == "circuit-qed") {
                rabi::CircuitQedParams p;
                p.omega_q = exp_vals["omega_q"];
                p.omega_b = exp_vals["omega_b"];
                p.omega_1 = exp_vals["omega_1"];
                p.omega_2 = exp_vals["omega_2"];
                p.Omega_1 = exp_vals["Omega_1"];
                p.Omega_2 = exp_vals["Omega_2"];
                p.Omega_3 = exp_vals["Omega_3"];
                p.G = exp_vals["G"];
                m = rabi::map_circuit_qed(p);
            } else if (system_s == "nv") {
                rabi::NvParams p;
                p.Omega_prime = exp_vals["Omega_prime"];
                p.Delta_prime = exp_vals["Delta_prime"];
                p.omega_m = exp_vals["omega_m"];
                p.lambda_prime = exp_vals["lambda_prime"];
                m = rabi::map_nv(p);
            } else if (system_s == "ion") {
                rabi::IonParams p;
                p.Omega_tilde = exp_vals["Omega_tilde"];
                p.epsilon_tilde = exp_vals["epsilon_tilde"];
                p.nu_tilde = exp_vals["nu_tilde"];
                p.eta = exp_vals["eta"];
                m = rabi::map_ion(p);
            } else {
                throw CLI::ValidationError("--system", "must be circuit-qed, nv or ion");
            }
            nlohmann::json j;
            j["params"] = {{"delta", m.params.delta},
                           {"epsilon", m.params.epsilon},
                           {"omega", m.params.omega},
                           {"lambda", m.params.lambda}};
            j["regime"] = m.regime == rabi::Regime::rabi_valid ? "rabi"
                          : m.regime == rabi::Regime::jc_valid ? "jc"
                                                               : "neither";
            std::ofstream file;
            open_or_stdout(file, out_path) << j.dump(2) << "\n";
        } else if (check_cmd->parsed()) {
            const auto level = (level_s == "full") ? rabi::checks::CheckLevel::full
                                                   : rabi::checks::CheckLevel::fast;
            const rabi::checks::Report report = rabi::checks::run_checks(level);
            for (const auto& r : report.results) {
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "C" << r.id << " "
                          << r.name << ": " << r.detail << " (" << r.seconds
                          << " s)\n";
            }
            if (!out_path.empty()) {
                std::ofstream file(out_path);
                file << report.to_json().dump(2) << "\n";
            }
            return report.all_pass() ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
