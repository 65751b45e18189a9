#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "oracle.hpp"
#include "single_photon.hpp"
#include "two_photon.hpp"
#include "verify.hpp"

namespace wqed {

namespace {

const char* kUnits =
    "frequencies/rates in gammabar relative to omega_c (E relative to 2*omega_c); "
    "times and positions in 1/gammabar";

void add_common_meta(Table& t, const RunConfig& cfg, const char* title) {
    t.add_meta("title", title);
    t.add_meta("units", kUnits);
    if (!cfg.preset.empty()) t.add_meta("preset", cfg.preset);
    t.add_meta("omega1", format_double(cfg.omega1));
    t.add_meta("omega2", format_double(cfg.omega2));
    t.add_meta("tau1", format_double(cfg.tau1));
    t.add_meta("tau2", format_double(cfg.tau2));
    t.add_meta("gamma_ng1", format_double(cfg.gamma_ng1));
    t.add_meta("gamma_ng2", format_double(cfg.gamma_ng2));
    t.add_meta("g", format_double(cfg.g));
    t.add_meta("config_hash", cfg.config_hash());
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

std::string out_path_or(const RunConfig& cfg, const char* fallback) {
    return cfg.out_path.empty() ? fallback : cfg.out_path;
}

}  // namespace

Table make_spectrum_table(const RunConfig& cfg) {
    const TwoAtomSystem sys = cfg.system();
    const double oc = sys.omega_c();
    std::vector<double> grid(cfg.k_count);
    for (int i = 0; i < cfg.k_count; ++i)
        grid[i] = oc + cfg.k_min + (cfg.k_max - cfg.k_min) * i / (cfg.k_count - 1);
    const auto rows = spectrum_sweep(grid, sys);

    Table t;
    add_common_meta(t, cfg, "single-photon waveguide spectrum");
    t.columns = {"k[gb]", "re_tbar", "im_tbar", "transmittance", "reflectance"};
    for (const auto& r : rows)
        t.rows.push_back({r.k - oc, r.t_bar.real(), r.t_bar.imag(), r.transmittance,
                          r.reflectance});
    return t;
}

Table make_fluorescence_table(const RunConfig& cfg) {
    const TwoAtomSystem sys = cfg.system();
    const double e_abs = 2.0 * sys.omega_c() + cfg.e_total;
    const auto deltas = linspace(-cfg.delta_max, cfg.delta_max, cfg.delta_count);
    const FluorescenceGrid grid = fluorescence_map(e_abs, deltas, sys);

    Table t;
    add_common_meta(t, cfg, "two-photon resonance fluorescence map");
    t.add_meta("e_total", format_double(cfg.e_total));
    t.add_meta("channel_note",
               "fluorescent channel only (coefficient of delta(E_i - E_o)); do not add to the "
               "elastic channel pointwise");
    t.columns = {"delta_i[gb]", "delta_o[gb]", "b_over_taubar_sq"};
    for (std::size_t i = 0; i < grid.delta_i.size(); ++i)
        for (std::size_t j = 0; j < grid.delta_o.size(); ++j)
            t.rows.push_back({grid.delta_i[i], grid.delta_o[j], grid.values[i][j]});
    return t;
}

Table make_bound_state_table(const RunConfig& cfg) {
    const TwoAtomSystem sys = cfg.system();
    const double oc = sys.omega_c();
    const double k1 = oc + cfg.k1;
    const double k2 = oc + cfg.k2;

    double x_max = cfg.x_max;
    if (x_max == 0.0) {
        const auto sc = derived_scales(sys, k1 + k2);
        const double im_min = std::min(sc.d1.imag(), sc.d2.imag());
        x_max = 20.0 / std::max(im_min, 0.1);  // capped for weakly decaying states
    }
    const auto grid = linspace(-x_max, x_max, cfg.x_count | 1);
    const BoundStateProfile prof = p2_profile(k1, k2, grid, sys);

    double p2_max = 0.0;
    for (double v : prof.p2) p2_max = std::max(p2_max, v);

    Table t;
    add_common_meta(t, cfg, "transmitted two-photon joint detection density");
    t.add_meta("k1", format_double(cfg.k1));
    t.add_meta("k2", format_double(cfg.k2));
    t.add_meta("statistics", to_string(prof.statistics));
    t.add_meta("beat_period",
               prof.beat_period ? format_double(*prof.beat_period) : "none");
    t.add_meta("abs_d_b", format_double(prof.d_b_abs));
    t.columns = {"x[1/gb]", "p2", "p2_normalized"};
    for (std::size_t i = 0; i < prof.x.size(); ++i)
        t.rows.push_back({prof.x[i], prof.p2[i], p2_max > 0.0 ? prof.p2[i] / p2_max : 0.0});
    return t;
}

Table make_poles_table(const RunConfig& cfg) {
    const TwoAtomSystem sys = cfg.system();
    const double oc = sys.omega_c();
    const PoleSet p = poles(sys);
    const double od = sys.omega_d();
    const double gb = sys.gamma_bar();

    Table t;
    add_common_meta(t, cfg, "single-photon scattering poles");
    t.add_meta("approx_note",
               "approx columns: subradiant omega_c - i*omega_d^2/gammabar, superradiant "
               "omega_c - 2i*gammabar");
    t.columns = {"subradiant[flag]", "re_k[gb]", "im_k[gb]", "re_approx[gb]", "im_approx[gb]"};
    t.rows.push_back({1.0, p.subradiant.real() - oc, p.subradiant.imag(), 0.0,
                      -od * od / gb});
    t.rows.push_back({0.0, p.superradiant.real() - oc, p.superradiant.imag(), 0.0, -2.0 * gb});
    return t;
}

void cmd_spectrum(const RunConfig& cfg) {
    write_table(make_spectrum_table(cfg), out_path_or(cfg, "spectrum.csv"), cfg.format);
}

void cmd_fluorescence_map(const RunConfig& cfg) {
    write_table(make_fluorescence_table(cfg), out_path_or(cfg, "fluorescence_map.csv"),
                cfg.format);
}

void cmd_bound_state(const RunConfig& cfg) {
    write_table(make_bound_state_table(cfg), out_path_or(cfg, "bound_state.csv"), cfg.format);
}

void cmd_poles(const RunConfig& cfg) {
    write_table(make_poles_table(cfg), out_path_or(cfg, "poles.csv"), cfg.format);
}

int cmd_verify(const RunConfig& cfg) {
    bool all_pass = true;
    std::vector<ReportRow> rows;
    if (!cfg.scenarios_path.empty()) {
        const auto scenarios = parse_scenario_file(cfg.scenarios_path);
        rows = comparison_report(scenarios);
        for (const auto& r : rows) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.scenario_id << ": " << r.quantity
                      << " rel_err=" << r.rel_err << " tol=" << r.tol << "\n";
            all_pass = all_pass && r.pass;
        }
    } else {
        const auto results = run_acceptance_suite(std::cout);
        for (const auto& c : results) {
            all_pass = all_pass && c.pass;
            for (const auto& r : c.rows) rows.push_back(r);
        }
    }
    write_report(rows, out_path_or(cfg, "verify_report.csv"), cfg.format);
    return all_pass ? 0 : 2;
}

}  // namespace wqed
