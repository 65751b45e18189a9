// CLI run configuration: system parameters in gammabar units, per-command
// grids, figure presets, and the canonical serialization that feeds the
// reproducibility hash.
//
// Unit convention: rates satisfy (gamma1 + gamma2)/2 = 1, i.e. every number
// is in units of gammabar.  omega1/omega2 fix the absolute frequency axis;
// all other energies (k grids, k1, k2, e_total) are offsets from omega_c
// (e_total from 2*omega_c), and output files use the same offsets.

#pragma once

#include <string>

#include "model.hpp"

namespace wqed {

struct RunConfig {
    double omega1 = 2.0;
    double omega2 = -2.0;
    double tau1 = 1.0;
    double tau2 = 1.0;
    double gamma_ng1 = 0.0;
    double gamma_ng2 = 0.0;
    double g = 0.0;

    // spectrum command
    double k_min = -8.0;
    double k_max = 8.0;
    int k_count = 1601;

    // fluorescence-map command
    double e_total = 3.0;  // E - 2*omega_c
    double delta_max = 6.0;
    int delta_count = 241;

    // bound-state command
    double k1 = 2.0;
    double k2 = 0.0;
    double x_max = 0.0;  // 0 = auto: 20 / min |Im D_{1,2}|
    int x_count = 1201;

    std::string preset;
    std::string out_path;
    std::string format = "csv";
    std::string scenarios_path;

    TwoAtomSystem system() const;  // validates the gammabar convention
    std::string canonical() const;
    std::string config_hash() const;
};

// key = value lines; '#' comments; unknown keys are an error.
RunConfig parse_config_file(const std::string& path);

void apply_preset(RunConfig& cfg, const std::string& name);
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace wqed
