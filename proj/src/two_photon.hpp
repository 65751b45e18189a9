// Two-photon sector: the fluorescence amplitude B (delta-stripped), the
// fluorescence map, quench detection, and the transmitted bound state with
// its joint-detection density P2(x).
//
// Delta bookkeeping is symbolic throughout: the elastic coefficient
// (multiplying the delta pairings) and the fluorescent coefficient B
// (multiplying delta(E_in - E_out)) are kept as separate fields and must
// never be summed pointwise.

#pragma once

#include <optional>
#include <vector>

#include "model.hpp"

namespace wqed {

struct TwoPhotonElement {
    cplx elastic_coeff;   // t_{p1} * t_{p2}
    cplx fluorescence_b;  // coefficient of delta(E_in - E_out)
    double e_in = 0.0;
    double e_out = 0.0;
};

struct FluorescenceGrid {
    double e_total = 0.0;
    std::vector<double> delta_i;
    std::vector<double> delta_o;
    std::vector<std::vector<double>> values;  // values[i][j] = |B/tau_bar|^2
};

enum class Statistics { bunched, antibunched, flat };

struct BoundStateProfile {
    std::vector<double> x;
    std::vector<cplx> psi;  // psi_R(x/2, -x/2); center-of-mass phase is unity there
    std::vector<double> p2;
    std::optional<double> beat_period;
    Statistics statistics = Statistics::flat;
    double d_b_abs = 0.0;
    double gamma_bar = 0.0;
};

// Fluorescence part of the two-photon S-matrix (terms beyond the elastic
// delta pairings), evaluated for arbitrary energies; only on-shell values
// are physical.  Requires g = 0.
cplx fluorescence_B(double k1, double k2, double p1, double p2, const TwoAtomSystem& sys);

// Packages the elastic coefficient and B; rejects tuples off shell by more
// than 1e-9*gamma_bar.
TwoPhotonElement two_photon_element(double k1, double k2, double p1, double p2,
                                    const TwoAtomSystem& sys);

// |B/tau_bar|^2 on the (delta_i, delta_o) plane at fixed total energy, with
// k_{1,2} = E/2 +- delta_i and p_{1,2} = E/2 +- delta_o, tau_bar = sqrt(tau1*tau2).
FluorescenceGrid fluorescence_map(double e_total, const std::vector<double>& delta_grid,
                                  const TwoAtomSystem& sys);

// max |B/tau_bar|^2 over all (delta_i, delta_o) pairs of the probe grid at
// the two-photon resonance E = omega1 + omega2.
double quench_residual(const TwoAtomSystem& sys, const std::vector<double>& probe_grid);

// Bound-state envelope pair at photon separation x_abs >= 0, with the
// center-of-mass phase factored out (reattached by bound_state_H / psi_R).
// F1 carries omega2 in its bracket and tau1 in its prefactor; F2 the converse.
std::pair<cplx, cplx> F_pair(double x_abs, const CollectiveScales& scales,
                             const TwoAtomSystem& sys);

// Two-photon bound state H(x1, x2) for incident energies k1, k2 (E = k1+k2).
cplx bound_state_H(double x1, double x2, double k1, double k2, const TwoAtomSystem& sys);

// Transmitted two-photon wavefunction: tbar_{k1} tbar_{k2} S + H/4.
cplx psi_R(double x1, double x2, double k1, double k2, const TwoAtomSystem& sys);

// |psi_R(x/2, -x/2)|^2 over the grid (refined automatically when quantum
// beats need resolving), plus extracted beat period and statistics.
BoundStateProfile p2_profile(double k1, double k2, const std::vector<double>& x_grid,
                             const TwoAtomSystem& sys);

// Mean spacing of interior local maxima of p2 at x > 0; absent when fewer
// than three maxima exist.
std::optional<double> beat_period(const BoundStateProfile& profile);

// bunched: p2(0) is the global maximum; antibunched: p2(0) is a strict local
// minimum; flat otherwise.  The grid must contain 0 and reach +-2/gamma_bar.
Statistics classify_statistics(const BoundStateProfile& profile);

const char* to_string(Statistics s);

}  // namespace wqed
