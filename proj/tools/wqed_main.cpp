// wqed: few-photon transport through a pair of collocated waveguide-coupled
// two-level atoms.  Batch commands write deterministic CSV/JSON tables.
//
// Exit codes: 0 success, 1 validation error, 2 verification failure, 3 I/O error.

#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"
#include "table.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::string format;
    std::string scenarios;
    double omega_d = 0.0, e_total = 0.0, k1 = 0.0, k2 = 0.0;
    double tau1 = 0.0, tau2 = 0.0, gamma_ng = 0.0, g = 0.0;
    bool has_omega_d = false, has_e_total = false, has_k1 = false, has_k2 = false;
    bool has_tau1 = false, has_tau2 = false, has_gamma_ng = false, has_g = false;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key = value config file");
    cmd->add_option("--preset", opt.preset, "figure preset: fig1a..fig1d, fig2a..fig2c");
    cmd->add_option("--out", opt.out_path, "output path");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--omega-d", opt.omega_d, "half detuning (gammabar units)")
        ->each([&opt](const std::string&) { opt.has_omega_d = true; });
    cmd->add_option("--e-total", opt.e_total, "total energy minus 2*omega_c")
        ->each([&opt](const std::string&) { opt.has_e_total = true; });
    cmd->add_option("--k1", opt.k1, "first photon energy minus omega_c")
        ->each([&opt](const std::string&) { opt.has_k1 = true; });
    cmd->add_option("--k2", opt.k2, "second photon energy minus omega_c")
        ->each([&opt](const std::string&) { opt.has_k2 = true; });
    cmd->add_option("--tau1", opt.tau1, "decay time of atom 1 (1/gammabar units)")
        ->each([&opt](const std::string&) { opt.has_tau1 = true; });
    cmd->add_option("--tau2", opt.tau2, "decay time of atom 2")
        ->each([&opt](const std::string&) { opt.has_tau2 = true; });
    cmd->add_option("--gamma-ng", opt.gamma_ng, "non-guided loss rate for both atoms")
        ->each([&opt](const std::string&) { opt.has_gamma_ng = true; });
    cmd->add_option("--g", opt.g, "dipole-dipole rate")
        ->each([&opt](const std::string&) { opt.has_g = true; });
}

wqed::RunConfig build_config(const CliOptions& opt) {
    wqed::RunConfig cfg;
    if (!opt.config_path.empty()) cfg = wqed::parse_config_file(opt.config_path);
    if (!opt.preset.empty()) wqed::apply_preset(cfg, opt.preset);
    if (opt.has_omega_d) { cfg.omega1 = opt.omega_d; cfg.omega2 = -opt.omega_d; }
    if (opt.has_e_total) cfg.e_total = opt.e_total;
    if (opt.has_k1) cfg.k1 = opt.k1;
    if (opt.has_k2) cfg.k2 = opt.k2;
    if (opt.has_tau1) cfg.tau1 = opt.tau1;
    if (opt.has_tau2) cfg.tau2 = opt.tau2;
    if (opt.has_gamma_ng) cfg.gamma_ng1 = cfg.gamma_ng2 = opt.gamma_ng;
    if (opt.has_g) cfg.g = opt.g;
    if (!opt.out_path.empty()) cfg.out_path = opt.out_path;
    if (!opt.format.empty()) cfg.format = opt.format;
    if (!opt.scenarios.empty()) cfg.scenarios_path = opt.scenarios;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"few-photon transport through two collocated waveguide-coupled atoms"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* spectrum = app.add_subcommand("spectrum", "single-photon tbar/rbar spectrum");
    CLI::App* fluorescence =
        app.add_subcommand("fluorescence-map", "|B/taubar|^2 over the (Delta_i, Delta_o) plane");
    CLI::App* bound = app.add_subcommand("bound-state", "transmitted two-photon P2(x) profile");
    CLI::App* poles_cmd = app.add_subcommand("poles", "sub/super-radiant pole table");
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    for (CLI::App* cmd : {spectrum, fluorescence, bound, poles_cmd, verify})
        add_common_options(cmd, opt);
    verify->add_option("--scenarios", opt.scenarios,
                       "oracle comparison scenario file (replaces the built-in suite)");

    CLI11_PARSE(app, argc, argv);

    try {
        const wqed::RunConfig cfg = build_config(opt);
        if (spectrum->parsed()) wqed::cmd_spectrum(cfg);
        else if (fluorescence->parsed()) wqed::cmd_fluorescence_map(cfg);
        else if (bound->parsed()) wqed::cmd_bound_state(cfg);
        else if (poles_cmd->parsed()) wqed::cmd_poles(cfg);
        else if (verify->parsed()) return wqed::cmd_verify(cfg);
        return 0;
    } catch (const wqed::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
