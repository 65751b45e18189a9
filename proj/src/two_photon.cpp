#include "two_photon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "single_photon.hpp"

namespace wqed {

namespace {

constexpr double pi = std::numbers::pi;

void require_no_dipole_dipole(const TwoAtomSystem& sys) {
    if (sys.g != 0.0)
        throw std::invalid_argument("closed form requires g = 0");
}

// B assembled from precomputed excitation amplitudes at the four energies.
cplx b_from_amplitudes(const ExcitationPair& sp1, const ExcitationPair& sp2,
                       const ExcitationPair& sk1, const ExcitationPair& sk2,
                       double e_in, const TwoAtomSystem& sys) {
    const double g1 = sys.gamma1();
    const double g2 = sys.gamma2();
    const double b1 = std::sqrt(2.0 * g1);
    const double b2 = std::sqrt(2.0 * g2);

    const cplx sum1 = sk1.s1 + sk2.s1;
    const cplx sum2 = sk1.s2 + sk2.s2;
    const cplx pair1 = sp1.s1 * sp2.s1;
    const cplx pair2 = sp1.s2 * sp2.s2;

    const cplx term1 = (I / pi) * b1 * pair1 * sum1;
    const cplx term2 = (I / pi) * b2 * pair2 * sum2;

    const cplx two_photon_pole =
        e_in - sys.atom1.omega_eff() - sys.atom2.omega_eff() + I * (g1 + g2);
    const cplx joint = (pair1 + pair2) * (std::sqrt(g1 * g2) / pi) *
                       (b1 * sum2 + b2 * sum1) / two_photon_pole;

    return term1 + term2 + joint;
}

}  // namespace

cplx fluorescence_B(double k1, double k2, double p1, double p2, const TwoAtomSystem& sys) {
    require_no_dipole_dipole(sys);
    const auto sk1 = excitation_amplitudes(k1, sys);
    const auto sk2 = excitation_amplitudes(k2, sys);
    const auto sp1 = excitation_amplitudes(p1, sys);
    const auto sp2 = excitation_amplitudes(p2, sys);
    return b_from_amplitudes(sp1, sp2, sk1, sk2, k1 + k2, sys);
}

TwoPhotonElement two_photon_element(double k1, double k2, double p1, double p2,
                                    const TwoAtomSystem& sys) {
    require_no_dipole_dipole(sys);
    const double e_in = k1 + k2;
    const double e_out = p1 + p2;
    if (std::abs(e_in - e_out) > 1e-9 * sys.gamma_bar())
        throw std::invalid_argument("two_photon_element requires on-shell energies (k1+k2 = p1+p2)");

    TwoPhotonElement el;
    el.elastic_coeff = transmission_chiral(p1, sys) * transmission_chiral(p2, sys);
    el.fluorescence_b = fluorescence_B(k1, k2, p1, p2, sys);
    el.e_in = e_in;
    el.e_out = e_out;
    return el;
}

FluorescenceGrid fluorescence_map(double e_total, const std::vector<double>& delta_grid,
                                  const TwoAtomSystem& sys) {
    require_no_dipole_dipole(sys);
    if (delta_grid.empty())
        throw std::invalid_argument("fluorescence grid must be nonempty");

    const std::size_t n = delta_grid.size();
    std::vector<ExcitationPair> plus(n), minus(n);
    for (std::size_t i = 0; i < n; ++i) {
        plus[i] = excitation_amplitudes(0.5 * e_total + delta_grid[i], sys);
        minus[i] = excitation_amplitudes(0.5 * e_total - delta_grid[i], sys);
    }

    const double tau_sq = sys.atom1.tau * sys.atom2.tau;  // tau_bar^2
    FluorescenceGrid grid;
    grid.e_total = e_total;
    grid.delta_i = delta_grid;
    grid.delta_o = delta_grid;
    grid.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx b = b_from_amplitudes(plus[j], minus[j], plus[i], minus[i], e_total, sys);
            grid.values[i][j] = std::norm(b) / tau_sq;
        }
    return grid;
}

double quench_residual(const TwoAtomSystem& sys, const std::vector<double>& probe_grid) {
    require_no_dipole_dipole(sys);
    const double e_res = sys.atom1.omega + sys.atom2.omega;
    const FluorescenceGrid grid = fluorescence_map(e_res, probe_grid, sys);
    double worst = 0.0;
    for (const auto& row : grid.values)
        for (double v : row) worst = std::max(worst, v);
    return worst;
}

std::pair<cplx, cplx> F_pair(double x_abs, const CollectiveScales& scales,
                             const TwoAtomSystem& sys) {
    if (x_abs < 0.0)
        throw std::invalid_argument("F_pair: x_abs must be non-negative");
    const double gb = sys.gamma_bar();
    if (std::abs(scales.d_b) < 1e-6 * gb)
        throw std::domain_error("confluent case; perturb omega_d");
    if (scales.d1.imag() < -1e-12 * gb || scales.d2.imag() < -1e-12 * gb)
        throw std::domain_error("F_pair: collective poles do not decay (Im D < 0)");

    const cplx e1 = std::exp(I * scales.d1 * x_abs);
    const cplx e2 = std::exp(I * scales.d2 * x_abs);
    const cplx dsum = scales.d_a + scales.d_b;   // 2 d1
    const cplx ddiff = scales.d_a - scales.d_b;  // 2 d2
    const cplx w1 = 0.5 * scales.e_total - sys.atom2.omega_eff();
    const cplx w2 = 0.5 * scales.e_total - sys.atom1.omega_eff();

    const cplx d1sq = scales.d1 * scales.d1;
    const cplx d2sq = scales.d2 * scales.d2;

    const cplx pref1 = std::sqrt(2.0) / (sys.atom1.tau * scales.d_a * scales.d_b);
    const cplx pref2 = std::sqrt(2.0) / (sys.atom2.tau * scales.d_a * scales.d_b);

    const cplx f1 = pref1 * (e1 * (d1sq - w1 * w1) / dsum - e2 * (d2sq - w1 * w1) / ddiff);
    const cplx f2 = pref2 * (e1 * (d1sq - w2 * w2) / dsum - e2 * (d2sq - w2 * w2) / ddiff);
    return {f1, f2};
}

namespace {

// H(x1,x2) with the center-of-mass phase stripped is c1*exp(i d1 |x|) +
// c2*exp(i d2 |x|); collecting the coefficients once makes profile sweeps
// cheap and keeps large-x evaluation free of spurious phase growth.
struct BoundCoefficients {
    cplx c1, c2;
    CollectiveScales scales;
};

BoundCoefficients bound_coefficients(double k1, double k2, const TwoAtomSystem& sys) {
    const CollectiveScales sc = derived_scales(sys, k1 + k2);
    const double gb = sys.gamma_bar();
    if (std::abs(sc.d_b) < 1e-6 * gb)
        throw std::domain_error("confluent case; perturb omega_d");
    if (sc.d1.imag() < -1e-12 * gb || sc.d2.imag() < -1e-12 * gb)
        throw std::domain_error("F_pair: collective poles do not decay (Im D < 0)");

    const auto sk1 = excitation_amplitudes(k1, sys);
    const auto sk2 = excitation_amplitudes(k2, sys);
    const cplx lead1 = std::sqrt(2.0 * sys.gamma1()) * (sk1.s1 + sk2.s1) / pi;
    const cplx lead2 = std::sqrt(2.0 * sys.gamma2()) * (sk1.s2 + sk2.s2) / pi;

    const cplx wa1 = 1.0 - I / (sc.d_a * sys.atom1.tau);
    const cplx wb1 = -I / (sc.d_a * sys.atom1.tau);
    const cplx wa2 = 1.0 - I / (sc.d_a * sys.atom2.tau);
    const cplx wb2 = -I / (sc.d_a * sys.atom2.tau);

    const cplx dsum = sc.d_a + sc.d_b;
    const cplx ddiff = sc.d_a - sc.d_b;
    const cplx w1 = 0.5 * sc.e_total - sys.atom2.omega_eff();
    const cplx w2 = 0.5 * sc.e_total - sys.atom1.omega_eff();
    const cplx pref1 = std::sqrt(2.0) / (sys.atom1.tau * sc.d_a * sc.d_b);
    const cplx pref2 = std::sqrt(2.0) / (sys.atom2.tau * sc.d_a * sc.d_b);

    // F1 = pref1*(e1*f11 - e2*f12), F2 = pref2*(e1*f21 - e2*f22)
    const cplx f11 = (sc.d1 * sc.d1 - w1 * w1) / dsum;
    const cplx f12 = (sc.d2 * sc.d2 - w1 * w1) / ddiff;
    const cplx f21 = (sc.d1 * sc.d1 - w2 * w2) / dsum;
    const cplx f22 = (sc.d2 * sc.d2 - w2 * w2) / ddiff;

    BoundCoefficients bc;
    bc.scales = sc;
    bc.c1 = lead1 * (pref1 * f11 * wa2 + pref2 * f21 * wb2) +
            lead2 * (pref1 * f11 * wb1 + pref2 * f21 * wa1);
    bc.c2 = -(lead1 * (pref1 * f12 * wa2 + pref2 * f22 * wb2) +
              lead2 * (pref1 * f12 * wb1 + pref2 * f22 * wa1));
    return bc;
}

cplx h_reduced(const BoundCoefficients& bc, double x_abs) {
    return bc.c1 * std::exp(I * bc.scales.d1 * x_abs) +
           bc.c2 * std::exp(I * bc.scales.d2 * x_abs);
}

}  // namespace

cplx bound_state_H(double x1, double x2, double k1, double k2, const TwoAtomSystem& sys) {
    require_no_dipole_dipole(sys);
    const BoundCoefficients bc = bound_coefficients(k1, k2, sys);
    const cplx com_phase = std::exp(I * (k1 + k2) * 0.5 * (x1 + x2));
    return com_phase * h_reduced(bc, std::abs(x1 - x2));
}

cplx psi_R(double x1, double x2, double k1, double k2, const TwoAtomSystem& sys) {
    require_no_dipole_dipole(sys);
    const cplx tb1 = transmission_reflection_waveguide(k1, sys).first;
    const cplx tb2 = transmission_reflection_waveguide(k2, sys).first;
    const cplx s = (std::exp(I * (k1 * x1 + k2 * x2)) + std::exp(I * (k1 * x2 + k2 * x1))) /
                   (2.0 * pi * std::sqrt(2.0));
    return tb1 * tb2 * s + 0.25 * bound_state_H(x1, x2, k1, k2, sys);
}

BoundStateProfile p2_profile(double k1, double k2, const std::vector<double>& x_grid,
                             const TwoAtomSystem& sys) {
    require_no_dipole_dipole(sys);
    if (x_grid.empty())
        throw std::invalid_argument("p2 grid must be nonempty");

    const BoundCoefficients bc = bound_coefficients(k1, k2, sys);
    const double gb = sys.gamma_bar();

    std::vector<double> grid = x_grid;
    std::sort(grid.begin(), grid.end());
    double dx_user = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < grid.size(); ++i)
        dx_user = std::min(dx_user, grid[i] - grid[i - 1]);

    // Beat resolution rule: at least ~20 samples per oscillation period.
    const double db_abs = std::abs(bc.scales.d_b);
    if (std::abs((bc.scales.d1 - bc.scales.d2).real()) > 1e-9 * gb) {
        const double dx_need = (2.0 * pi / db_abs) / 24.0;
        if (dx_user > dx_need) {
            const double lo = grid.front();
            const double hi = grid.back();
            const long n_neg = lo < 0.0 ? std::lround(std::ceil(-lo / dx_need)) : 0;
            const long n_pos = hi > 0.0 ? std::lround(std::ceil(hi / dx_need)) : 0;
            grid.clear();
            for (long i = -n_neg; i <= n_pos; ++i) grid.push_back(i * dx_need);
        }
    }

    const cplx tb1 = transmission_reflection_waveguide(k1, sys).first;
    const cplx tb2 = transmission_reflection_waveguide(k2, sys).first;
    const double delta_in = 0.5 * (k1 - k2);
    const cplx plane_coeff = tb1 * tb2 / (pi * std::sqrt(2.0));

    BoundStateProfile prof;
    prof.x = grid;
    prof.psi.resize(grid.size());
    prof.p2.resize(grid.size());
    prof.d_b_abs = db_abs;
    prof.gamma_bar = gb;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const cplx val = plane_coeff * std::cos(delta_in * x) +
                         0.25 * h_reduced(bc, std::abs(x));
        prof.psi[i] = val;
        prof.p2[i] = std::norm(val);
    }
    prof.beat_period = beat_period(prof);
    prof.statistics = classify_statistics(prof);
    return prof;
}

std::optional<double> beat_period(const BoundStateProfile& profile) {
    const auto& x = profile.x;
    const auto& p2 = profile.p2;
    double global_max = 0.0;
    for (double v : p2) global_max = std::max(global_max, v);
    const double floor = 1e-14 * global_max;

    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (x[i] <= 0.0) continue;
        if (p2[i] <= floor) continue;
        if (p2[i] > p2[i - 1] && p2[i] >= p2[i + 1]) {
            // local parabola through the three samples
            const double denom = p2[i - 1] - 2.0 * p2[i] + p2[i + 1];
            double shift = 0.0;
            if (denom != 0.0) shift = 0.5 * (p2[i - 1] - p2[i + 1]) / denom;
            const double h = 0.5 * (x[i + 1] - x[i - 1]);
            peaks.push_back(x[i] + shift * h);
        }
    }
    if (peaks.size() < 3) return std::nullopt;
    return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

Statistics classify_statistics(const BoundStateProfile& profile) {
    const auto& x = profile.x;
    const auto& p2 = profile.p2;
    if (x.size() < 3)
        throw std::invalid_argument("statistics grid too narrow");

    const double reach = 2.0 / profile.gamma_bar;
    if (x.front() > -reach || x.back() < reach)
        throw std::invalid_argument("statistics grid too narrow");

    std::size_t i0 = x.size();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) < 1e-9 / profile.gamma_bar) { i0 = i; break; }
    if (i0 == x.size() || i0 == 0 || i0 + 1 == x.size())
        throw std::invalid_argument("statistics grid must contain x = 0 in its interior");

    double lo = p2[0], hi = p2[0];
    for (double v : p2) { lo = std::min(lo, v); hi = std::max(hi, v); }
    if (hi <= 0.0 || (hi - lo) < 1e-9 * hi) return Statistics::flat;
    if (p2[i0] >= hi * (1.0 - 1e-12)) return Statistics::bunched;
    if (p2[i0] < p2[i0 - 1] && p2[i0] < p2[i0 + 1]) return Statistics::antibunched;
    return Statistics::flat;
}

const char* to_string(Statistics s) {
    switch (s) {
        case Statistics::bunched: return "bunched";
        case Statistics::antibunched: return "antibunched";
        case Statistics::flat: return "flat";
    }
    return "unknown";
}

}  // namespace wqed
