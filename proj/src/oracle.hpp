// Brute-force verification path: discretize the chiral waveguide Hamiltonian
// on a uniform momentum grid (coupling V*sqrt(dk) per mode), evolve Gaussian
// wavepackets in the one- and two-excitation sectors, and extract the
// scattering observables that the closed forms predict.
//
// The Hamiltonian is applied matrix-free.  Two-excitation states are stored
// with the photon-photon amplitude as a full symmetric N x N matrix psi,
// photon x atom amplitudes chi_1, chi_2 (length N each), and the scalar
// doubly-excited amplitude; the basis dimension reported to callers is the
// non-redundant N(N+1)/2 + 2N + 1.

#pragma once

#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "model.hpp"
#include "propagator.hpp"

namespace wqed {

struct DiscreteModel {
    TwoAtomSystem sys;
    Eigen::VectorXd k;      // cell-centered modes: k_j = lo + (j + 1/2) dk
    double dk = 0.0;
    double c1 = 0.0;        // per-mode couplings V_i sqrt(dk) * coupling_scale
    double c2 = 0.0;
    double coupling_scale = 1.0;

    int n_modes() const { return static_cast<int>(k.size()); }
    double window_lo() const { return k(0) - 0.5 * dk; }
    double window_hi() const { return k(k.size() - 1) + 0.5 * dk; }
    double ring_length() const { return 2.0 * std::numbers::pi / dk; }

    long one_exc_dim() const { return n_modes() + 2; }
    long two_exc_basis_dim() const {
        const long n = n_modes();
        return n * (n + 1) / 2 + 2 * n + 1;
    }
    long two_exc_storage_dim() const {
        const long n = n_modes();
        return n * n + 2 * n + 1;
    }

    // Hermitian part; non-guided loss is handled as a separate diagonal decay.
    void apply_one(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
    void apply_two(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
    SpectralBounds bounds_one() const;
    SpectralBounds bounds_two() const;
    Eigen::VectorXd loss_one() const;  // empty when gamma_ng = 0
    Eigen::VectorXd loss_two() const;
};

// Validates n_modes >= 256 and >= 10 gammabar margins around both atoms.
DiscreteModel build_discrete_model(const TwoAtomSystem& sys, int n_modes,
                                   std::pair<double, double> k_window,
                                   double coupling_scale = 1.0);

// Window construction helpers: center on the probe (clamped so the margin
// precondition holds) and align the probe energies with cell boundaries so
// that no mode is resonant with the incident carrier.
std::pair<double, double> window_for_probe(const TwoAtomSystem& sys, double k0,
                                           double width, int n_modes);
std::pair<double, double> window_for_pair(const TwoAtomSystem& sys, double k1, double k2,
                                          double width, int n_modes);

struct SingleRunResult {
    cplx t_hat;
    double t_end = 0.0;
    double x0 = 0.0;
    double norm_drift = 0.0;
    double energy_drift = 0.0;
    double final_atom_pop = 0.0;
    Eigen::VectorXcd phi_in;   // initial photon amplitudes (unnormalized Gaussian)
    Eigen::VectorXcd phi_out;  // final photon amplitudes on the same scale
};

SingleRunResult single_excitation_scatter(const DiscreteModel& model, double k0, double sigma);

struct TwoRunResult {
    Eigen::VectorXd k;
    double dk = 0.0;
    double k1 = 0.0, k2 = 0.0, sigma = 0.0;
    double t_end = 0.0;
    double x_com = 0.0;  // packet center at t_end
    double sym_norm = 1.0;  // norm of the unsymmetrized product state
    double norm_drift = 0.0;
    double energy_drift = 0.0;
    double final_atom_pop = 0.0;
    Eigen::MatrixXcd psi_in;    // symmetric k-space amplitudes, unit norm
    Eigen::MatrixXcd psi_out;
    Eigen::VectorXcd phi1_out;  // singly-scattered packets, matching psi_in's factors
    Eigen::VectorXcd phi2_out;

    // connected part: psi_out minus the product of singly-scattered packets
    Eigen::MatrixXcd bound_part() const;

    // |amplitude|^2 along the anti-diagonal (x1 - x2 = x) through the packet
    // center, from the full state or from the connected part only
    std::vector<double> p2_total_relative(const std::vector<double>& x) const;
    std::vector<double> p2_bound_relative(const std::vector<double>& x) const;

    // spectral weight outside the incident support (|k - k_i| > m_sigmas*sigma)
    double off_support_weight(double m_sigmas = 8.0) const;

    // delta-stripped fluorescence amplitude on the output pair (j, l),
    // normalized by the incident on-shell weight of that energy shell
    cplx extract_b(int j, int l) const;

private:
    std::vector<double> antidiagonal_density(const Eigen::MatrixXcd& amp,
                                             const std::vector<double>& x) const;
};

TwoRunResult two_excitation_scatter(const DiscreteModel& model, double k1, double k2,
                                    double sigma);

// spot check <u|H v> = conj(<v|H u>) on random vectors; returns the defect
double hermiticity_defect(const DiscreteModel& model, int sector, unsigned seed);

// ---- scenario-driven comparison harness ----

struct OracleScenario {
    std::string id;
    std::string kind;  // single_t | p2_shape | quench_monotone | b_point
    TwoAtomSystem sys;
    TwoAtomSystem closed_sys;  // closed forms evaluated here (mutation tests differ)
    double k0 = 0.0;
    double k1 = 0.0, k2 = 0.0;
    double sigma = 0.05;
    int n_modes = 512;
    double window = 34.0;
    double tol = 0.02;
};

struct ReportRow {
    std::string scenario_id;
    std::string quantity;
    double closed_form = 0.0;
    double oracle = 0.0;
    double rel_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

std::vector<ReportRow> comparison_report(const std::vector<OracleScenario>& scenarios);
std::vector<OracleScenario> parse_scenario_file(const std::string& path);
std::vector<OracleScenario> default_scenarios();

// Report files: CSV columns scenario_id, quantity, closed_form, oracle,
// rel_err, tol, pass (JSON mirrors them under "data").
void write_report(const std::vector<ReportRow>& rows, const std::string& path,
                  const std::string& format);
std::vector<ReportRow> read_report(const std::string& path);

}  // namespace wqed
