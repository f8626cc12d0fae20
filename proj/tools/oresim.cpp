// oresim.cpp - command-line front end: spectra, resonance profiles, purity
// trajectories, single-point optimization, and config-driven sweeps.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oresim/dynamics.hpp"
#include "oresim/harness.hpp"
#include "oresim/model.hpp"
#include "oresim/optimize.hpp"
#include "oresim/resonance.hpp"
#include "oresim/spectral.hpp"
#include "oresim/version.hpp"

namespace {

using namespace oresim;

constexpr double k_two_pi = harness::k_two_pi;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Frequencies on the command line are plain GHz; everything internal is
// angular. The conversion happens exactly once, here.
struct PhysicsFlags {
    double omega_ghz{1.0};
    double omega0_ghz{0.1};
    double g_r_ghz{0.0};
    double g_nr_ghz{0.0};
    double g_ph_ghz{0.0};
    int n_bath{20};
    std::string temperature{"25mK"};
};

void add_physics_flags(CLI::App* cmd, PhysicsFlags& f) {
    cmd->add_option("--omega", f.omega_ghz, "bath mode frequency [GHz]")
        ->capture_default_str();
    cmd->add_option("--omega0", f.omega0_ghz, "spin splitting [GHz]")
        ->capture_default_str();
    cmd->add_option("--gr", f.g_r_ghz, "rotating coupling [GHz]")->capture_default_str();
    cmd->add_option("--gnr", f.g_nr_ghz, "counter-rotating coupling [GHz]")
        ->capture_default_str();
    cmd->add_option("--gph", f.g_ph_ghz, "dephasing coupling [GHz]")
        ->capture_default_str();
    cmd->add_option("--nbath", f.n_bath, "oscillator levels kept")->capture_default_str();
    cmd->add_option("--temperature", f.temperature,
                    "temperature with optional K/mK suffix, 0 for the T->0 limit")
        ->capture_default_str();
}

model::HamiltonianParams to_params(const PhysicsFlags& f) {
    model::HamiltonianParams p;
    p.omega = k_two_pi * f.omega_ghz;
    p.omega0 = k_two_pi * f.omega0_ghz;
    p.g_r = k_two_pi * f.g_r_ghz;
    p.g_nr = k_two_pi * f.g_nr_ghz;
    p.g_ph = k_two_pi * f.g_ph_ghz;
    p.n_bath = f.n_bath;
    p.validate();
    return p;
}

spectral::ThermalWeights to_weights(const PhysicsFlags& f) {
    const double t_k = harness::parse_temperature(f.temperature);
    const double omega = k_two_pi * f.omega_ghz;
    return t_k > 0.0 ? spectral::thermal_weights(omega, t_k, f.n_bath)
                     : spectral::thermal_weights_zero(omega, f.n_bath);
}

dynamics::OverlapTable build_table(const PhysicsFlags& f) {
    const auto p = to_params(f);
    const auto basis = model::build_basis(p.n_bath);
    return dynamics::overlap_table(spectral::eigh(model::build_hamiltonian(p)), basis,
                                   to_weights(f));
}

model::Spin parse_spin(const std::string& s) {
    if (s == "+" || s == "plus") return model::Spin::plus;
    if (s == "-" || s == "minus") return model::Spin::minus;
    throw std::invalid_argument("spin must be +, -, plus, or minus, got '" + s + "'");
}

void print_optimize_block(const dynamics::ChannelMatrices& ch) {
    const auto report = optimize::max_purity(ch);
    std::cout << "t_ns = " << fmt(ch.t) << "\n";
    std::cout << "s_max = " << fmt(report.s_max) << "\n";
    std::cout << "c_plus_abs = " << fmt(report.c_plus_abs) << "\n";
    std::cout << "theta_rad = " << fmt(report.theta) << "\n";
    std::cout << "s_diff = " << fmt(optimize::s_diff(ch, report.c_plus_abs)) << "\n";
}

// ---------------------------------- verbs ----------------------------------

void run_spectrum(const PhysicsFlags& f) {
    const auto p = to_params(f);
    const auto eig = spectral::eigh(model::build_hamiltonian(p));
    for (int i = 0; i < eig.dim; ++i) {
        std::cout << fmt(eig.energies(i) / k_two_pi) << "\n";  // GHz
    }
}

void run_resonance(const PhysicsFlags& f, const std::string& spin, int level) {
    const auto profile = resonance::resonance_profile(build_table(f), parse_spin(spin), level);
    std::cout << "energy_ghz,weight\n";
    for (const auto& [energy, weight] : profile.points) {
        std::cout << fmt(energy / k_two_pi) << "," << fmt(weight) << "\n";
    }
}

void run_evolve(const PhysicsFlags& f, double c_plus_abs, double theta, double t_max,
                int points) {
    if (points < 2) throw std::invalid_argument("evolve: --points must be >= 2");
    if (!(t_max > 0.0)) throw std::invalid_argument("evolve: --tmax must be > 0");
    std::vector<double> times(points);
    for (int i = 0; i < points; ++i) times[i] = t_max * i / (points - 1);

    const auto psi = dynamics::SpinState::from_polar(c_plus_abs, theta);
    const auto traj = optimize::purity_trajectory(to_params(f), to_weights(f), psi, times);
    std::cout << "t_ns,purity\n";
    for (const auto& [t, s] : traj) {
        std::cout << fmt(t) << "," << fmt(s) << "\n";
    }
}

void run_optimize(const PhysicsFlags& f, double time_ns) {
    const auto table = build_table(f);
    print_optimize_block(dynamics::ChannelKernel(table).at(time_ns));
}

void run_cpb(double e_c_ghz, double e_j_ghz, double omega_ghz, double g_ghz,
             double delta_n, int n_bath, const std::string& temperature, double time_ns) {
    model::CPBParams cpb;
    cpb.e_c = k_two_pi * e_c_ghz;
    cpb.e_j = k_two_pi * e_j_ghz;
    cpb.omega = k_two_pi * omega_ghz;
    cpb.g = k_two_pi * g_ghz;
    cpb.delta_n = delta_n;
    const auto p = model::map_cpb(cpb, n_bath);

    std::cout << "omega_ghz = " << fmt(p.omega / k_two_pi) << "\n";
    std::cout << "omega0_ghz = " << fmt(p.omega0 / k_two_pi) << "\n";
    std::cout << "g_r_ghz = " << fmt(p.g_r / k_two_pi) << "\n";
    std::cout << "g_nr_ghz = " << fmt(p.g_nr / k_two_pi) << "\n";
    std::cout << "g_ph_ghz = " << fmt(p.g_ph / k_two_pi) << "\n";

    PhysicsFlags f;
    f.omega_ghz = p.omega / k_two_pi;
    f.omega0_ghz = p.omega0 / k_two_pi;
    f.g_r_ghz = p.g_r / k_two_pi;
    f.g_nr_ghz = p.g_nr / k_two_pi;
    f.g_ph_ghz = p.g_ph / k_two_pi;
    f.n_bath = n_bath;
    f.temperature = temperature;
    run_optimize(f, time_ns);
}

int run_sweep_verb(const PhysicsFlags& f, const std::string& variable,
                   double lo_ghz, double hi_ghz, int steps, double time_ns,
                   const std::string& outputs, const std::string& csv_path,
                   const std::string& json_path, const std::string& svg_path,
                   int threads, const std::string& config_path) {
    harness::SweepConfig config;
    config.omega_ghz = f.omega_ghz;
    config.omega0_ghz = f.omega0_ghz;
    config.g_r_ghz = f.g_r_ghz;
    config.g_nr_ghz = f.g_nr_ghz;
    config.g_ph_ghz = f.g_ph_ghz;
    config.n_bath = f.n_bath;
    const double t_k = harness::parse_temperature(f.temperature);
    config.temperature_k = t_k;
    config.zero_temperature = (t_k == 0.0);
    config.time_ns = time_ns;
    config.variable = harness::sweep_variable_from_string(variable);
    config.lo_ghz = lo_ghz;
    config.hi_ghz = hi_ghz;
    config.steps = steps;
    config.csv_path = csv_path;
    config.json_path = json_path;
    config.svg_path = svg_path;

    config.outputs = {};
    std::istringstream names(outputs);
    std::string name;
    while (std::getline(names, name, ',')) {
        if (name == "s_max") {
            config.outputs.s_max = true;
        } else if (name == "a_pm") {
            config.outputs.a_pm = true;
        } else if (name == "s_diff") {
            config.outputs.s_diff = true;
        } else if (name == "argmax_state") {
            config.outputs.argmax_state = true;
        } else {
            throw std::invalid_argument("--outputs: unknown quantity '" + name + "'");
        }
    }

    if (!config_path.empty()) {  // file wins over flags
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open config file " + config_path);
        std::ostringstream text;
        text << in.rdbuf();
        harness::apply_config_overrides(config, text.str());
    }
    config.validate();

    const auto start = std::chrono::steady_clock::now();
    const auto rows = harness::run_sweep(config, threads);
    const double wall_ms_total =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    if (config.csv_path.empty() && config.json_path.empty() && config.svg_path.empty()) {
        std::cout << harness::to_csv(rows);
    } else {
        harness::emit(rows, config, wall_ms_total);
        for (const auto& path : {config.csv_path, config.json_path, config.svg_path}) {
            if (!path.empty()) std::cerr << "wrote " << path << "\n";
        }
    }

    int failed = 0;
    for (const auto& row : rows) {
        if (row.failed) {
            ++failed;
            std::cerr << "failed: " << row.error << "\n";
        }
    }
    if (failed > 0) {
        std::cerr << failed << " of " << rows.size() << " sweep points failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-boson decoherence toolkit: exact spectra, channel dynamics,\n"
                 "purity optimization, and parameter sweeps"};
    app.set_version_flag("--version", oresim::k_version);
    app.require_subcommand(1);

    int exit_code = 0;

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the coupled model [GHz]");
    PhysicsFlags spectrum_flags;
    add_physics_flags(spectrum, spectrum_flags);
    spectrum->callback([&] { run_spectrum(spectrum_flags); });

    // resonance
    auto* resonance =
        app.add_subcommand("resonance", "resonance profile of one bare state (CSV to stdout)");
    PhysicsFlags resonance_flags;
    std::string resonance_spin = "+";
    int resonance_level = 0;
    add_physics_flags(resonance, resonance_flags);
    resonance->add_option("--spin", resonance_spin, "bare spin, + or -")
        ->capture_default_str();
    resonance->add_option("--level", resonance_level, "bare oscillator level")
        ->capture_default_str();
    resonance->callback(
        [&] { run_resonance(resonance_flags, resonance_spin, resonance_level); });

    // evolve
    auto* evolve =
        app.add_subcommand("evolve", "purity trajectory of one initial state (CSV to stdout)");
    PhysicsFlags evolve_flags;
    double evolve_c_plus = 1.0 / std::sqrt(2.0);
    double evolve_theta = 0.0;
    double evolve_t_max = 0.1;
    int evolve_points = 200;
    add_physics_flags(evolve, evolve_flags);
    evolve->add_option("--cplus", evolve_c_plus, "|c+| of the initial state")
        ->capture_default_str();
    evolve->add_option("--theta", evolve_theta, "relative phase [rad]")
        ->capture_default_str();
    evolve->add_option("--tmax", evolve_t_max, "trajectory end [ns]")->capture_default_str();
    evolve->add_option("--points", evolve_points, "grid points including t = 0")
        ->capture_default_str();
    evolve->callback([&] {
        run_evolve(evolve_flags, evolve_c_plus, evolve_theta, evolve_t_max, evolve_points);
    });

    // optimize
    auto* optimize =
        app.add_subcommand("optimize", "maximum purity over initial states at one time");
    PhysicsFlags optimize_flags;
    double optimize_time = 0.1;
    add_physics_flags(optimize, optimize_flags);
    optimize->add_option("--time", optimize_time, "evaluation time [ns]")
        ->capture_default_str();
    optimize->callback([&] { run_optimize(optimize_flags, optimize_time); });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sweep one coupling, emit CSV/JSON/SVG");
    PhysicsFlags sweep_flags;
    std::string sweep_variable = "g_r";
    double sweep_lo = 0.0;
    double sweep_hi = 0.0;
    int sweep_steps = 101;
    double sweep_time = 0.1;
    std::string sweep_outputs = "s_max,a_pm";
    std::string sweep_csv, sweep_json, sweep_svg, sweep_config;
    int sweep_threads = 0;
    add_physics_flags(sweep, sweep_flags);
    sweep->add_option("--var", sweep_variable, "swept coupling: g_r, g_nr, g_ph, g_locked")
        ->capture_default_str();
    sweep->add_option("--lo", sweep_lo, "sweep start [GHz]")->capture_default_str();
    sweep->add_option("--hi", sweep_hi, "sweep end [GHz]")->capture_default_str();
    sweep->add_option("--steps", sweep_steps, "grid points (inclusive)")
        ->capture_default_str();
    sweep->add_option("--time", sweep_time, "evaluation time [ns]")->capture_default_str();
    sweep->add_option("--outputs", sweep_outputs,
                      "comma list of s_max, a_pm, s_diff, argmax_state")
        ->capture_default_str();
    sweep->add_option("--csv", sweep_csv, "CSV output path (default: stdout)");
    sweep->add_option("--json", sweep_json, "JSON sidecar path");
    sweep->add_option("--svg", sweep_svg, "SVG plot path");
    sweep->add_option("--threads", sweep_threads, "worker threads, 0 = hardware")
        ->capture_default_str();
    sweep->add_option("--config", sweep_config, "JSON config file; overrides flags");
    sweep->callback([&] {
        exit_code = run_sweep_verb(sweep_flags, sweep_variable, sweep_lo, sweep_hi,
                                   sweep_steps, sweep_time, sweep_outputs, sweep_csv,
                                   sweep_json, sweep_svg, sweep_threads, sweep_config);
    });

    // cpb
    auto* cpb = app.add_subcommand(
        "cpb", "map charge-degenerate Cooper-pair-box parameters, then optimize");
    double cpb_ec = 0.0, cpb_ej = 0.1, cpb_omega = 1.0, cpb_g = 0.0, cpb_delta_n = 0.0;
    int cpb_n_bath = 20;
    std::string cpb_temperature = "25mK";
    double cpb_time = 0.1;
    cpb->add_option("--ec", cpb_ec, "charging energy [GHz]")->capture_default_str();
    cpb->add_option("--ej", cpb_ej, "Josephson energy [GHz]")->capture_default_str();
    cpb->add_option("--omega", cpb_omega, "resonator frequency [GHz]")
        ->capture_default_str();
    cpb->add_option("--g", cpb_g, "resonator coupling [GHz]")->capture_default_str();
    cpb->add_option("--deltan", cpb_delta_n, "gate offset; mapping requires 0")
        ->capture_default_str();
    cpb->add_option("--nbath", cpb_n_bath, "oscillator levels kept")->capture_default_str();
    cpb->add_option("--temperature", cpb_temperature, "temperature, e.g. 25mK")
        ->capture_default_str();
    cpb->add_option("--time", cpb_time, "evaluation time [ns]")->capture_default_str();
    cpb->callback([&] {
        run_cpb(cpb_ec, cpb_ej, cpb_omega, cpb_g, cpb_delta_n, cpb_n_bath, cpb_temperature,
                cpb_time);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
