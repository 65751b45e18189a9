#include "single_photon.hpp"

#include <cmath>
#include <stdexcept>

namespace wqed {

cplx denominator_q(cplx k, const TwoAtomSystem& sys) {
    const cplx a1 = k - sys.atom1.omega_eff() + I * sys.gamma1();
    const cplx a2 = k - sys.atom2.omega_eff() + I * sys.gamma2();
    const cplx c = sys.cross_coupling();
    return a1 * a2 + c * c;
}

ExcitationPair excitation_amplitudes(double k, const TwoAtomSystem& sys) {
    validate(sys);
    const cplx a1 = k - sys.atom1.omega_eff() + I * sys.gamma1();
    const cplx a2 = k - sys.atom2.omega_eff() + I * sys.gamma2();
    const cplx ic = I * sys.cross_coupling();
    const double b1 = std::sqrt(2.0 * sys.gamma1());
    const double b2 = std::sqrt(2.0 * sys.gamma2());

    // [a1  ic; ic  a2] [s1; s2] = [b1; b2]
    const cplx det = a1 * a2 - ic * ic;
    const double gb = sys.gamma_bar();
    const double scale = std::max({std::abs(a1) * std::abs(a2), std::norm(sys.cross_coupling()), gb * gb});
    if (std::abs(det) <= 1e-12 * scale)
        throw std::domain_error("degenerate real pole; use factored forms");

    return {(b1 * a2 - ic * b2) / det, (a1 * b2 - ic * b1) / det};
}

ExcitationPair excitation_amplitudes_closed_form(double k, const TwoAtomSystem& sys) {
    validate(sys);
    if (sys.g != 0.0)
        throw std::invalid_argument("closed form requires g = 0");
    const cplx q = denominator_q(k, sys);
    const cplx s1 = std::sqrt(2.0 * sys.gamma1()) * (k - sys.atom2.omega_eff()) / q;
    const cplx s2 = std::sqrt(2.0 * sys.gamma2()) * (k - sys.atom1.omega_eff()) / q;
    return {s1, s2};
}

PoleSet poles(const TwoAtomSystem& sys) {
    validate(sys);
    const cplx w1 = sys.atom1.omega_eff() - I * sys.gamma1();
    const cplx w2 = sys.atom2.omega_eff() - I * sys.gamma2();
    const cplx c = sys.cross_coupling();
    const cplx sum = w1 + w2;      // r1 + r2
    const cplx prod = w1 * w2 + c * c;  // r1 * r2

    cplx disc = sum * sum - 4.0 * prod;
    if (disc.imag() == 0.0) disc = {disc.real(), +0.0};
    cplx sq = std::sqrt(disc);
    // Add sq with the sign that avoids cancellation against sum.
    if (sum.real() * sq.real() + sum.imag() * sq.imag() < 0.0) sq = -sq;
    const cplx r_big = 0.5 * (sum + sq);
    const cplx r_small = (std::abs(r_big) > 0.0) ? prod / r_big : 0.5 * (sum - sq);

    const double tie = 1e-9 * sys.gamma_bar();
    cplx sub = r_big, sup = r_small;
    if (std::abs(std::abs(r_big.imag()) - std::abs(r_small.imag())) < tie) {
        if (r_small.real() < r_big.real()) std::swap(sub, sup);
    } else if (std::abs(r_small.imag()) < std::abs(r_big.imag())) {
        std::swap(sub, sup);
    }
    return {sub, sup};
}

cplx transmission_chiral(double k, const TwoAtomSystem& sys) {
    validate(sys);
    if (sys.g != 0.0)
        throw std::invalid_argument("closed form requires g = 0");

    const bool lossless = sys.atom1.gamma_ng == 0.0 && sys.atom2.gamma_ng == 0.0;
    if (lossless) {
        const PoleSet p = poles(sys);
        const double real_tol = 1e-10 * sys.gamma_bar();
        cplx num = 1.0, den = 1.0;
        for (cplx r : {p.subradiant, p.superradiant}) {
            if (std::abs(r.imag()) < real_tol) continue;  // conjugate pair cancels
            num *= k - std::conj(r);
            den *= k - r;
        }
        return num / den;
    }

    // With loss the conjugate-root structure is broken: substitute the
    // complexified frequencies into the literal numerator and denominator,
    // conjugating only the waveguide i/tau terms.
    const cplx o1 = sys.atom1.omega_eff();
    const cplx o2 = sys.atom2.omega_eff();
    const cplx num = (k - o1 - I * sys.gamma1()) * (k - o2 - I * sys.gamma2()) +
                     1.0 / (sys.atom1.tau * sys.atom2.tau);
    return num / denominator_q(k, sys);
}

std::pair<cplx, cplx> transmission_reflection_waveguide(double k, const TwoAtomSystem& sys) {
    validate(sys);
    if (sys.g != 0.0)
        throw std::invalid_argument("closed form requires g = 0");
    const cplx u = k - sys.atom1.omega_eff();
    const cplx v = k - sys.atom2.omega_eff();
    const cplx q = denominator_q(k, sys);
    const cplx t_bar = u * v / q;
    const cplx r_bar = -I * (sys.gamma2() * u + sys.gamma1() * v) / q;
    return {t_bar, r_bar};
}

std::vector<SpectrumRow> spectrum_sweep(const std::vector<double>& k_grid,
                                        const TwoAtomSystem& sys) {
    if (k_grid.empty())
        throw std::invalid_argument("spectrum grid must be nonempty");
    for (std::size_t i = 1; i < k_grid.size(); ++i)
        if (!(k_grid[i] > k_grid[i - 1]))
            throw std::invalid_argument("spectrum grid must be strictly increasing");

    std::vector<SpectrumRow> out;
    out.reserve(k_grid.size());
    for (double k : k_grid) {
        auto [tb, rb] = transmission_reflection_waveguide(k, sys);
        out.push_back({k, tb, rb, std::norm(tb), std::norm(rb)});
    }
    return out;
}

}  // namespace wqed
