// Single-photon sector: atomic excitation amplitudes, chiral and waveguide
// scattering amplitudes, and the pole pair that controls sub/super-radiance.

#pragma once

#include <vector>

#include "model.hpp"

namespace wqed {

struct ExcitationPair {
    cplx s1;
    cplx s2;
};

struct PoleSet {
    cplx subradiant;   // root with the smaller |Im|
    cplx superradiant; // root with the larger |Im|
};

struct SpectrumRow {
    double k = 0.0;
    cplx t_bar;
    cplx r_bar;
    double transmittance = 0.0;  // |t_bar|^2
    double reflectance = 0.0;    // |r_bar|^2
};

// Denominator polynomial Q(k) = (k - O1 + i/tau1)(k - O2 + i/tau2) + c^2,
// with complexified frequencies and c the cross-coupling constant.
cplx denominator_q(cplx k, const TwoAtomSystem& sys);

// Frequency-domain 2x2 solve of the single-excitation equations of motion.
// Honors g and gamma_ng.  Throws std::domain_error at a degenerate real pole
// (only reachable for identical atoms with no loss at k = omega_c).
ExcitationPair excitation_amplitudes(double k, const TwoAtomSystem& sys);

// The printed closed form of the excitation amplitudes; requires g = 0.
// Kept separate from the linear solve so the two routes can check each other.
ExcitationPair excitation_amplitudes_closed_form(double k, const TwoAtomSystem& sys);

// Chiral transmission t_k, evaluated in root-factored form.  Factors whose
// root is real within 1e-10*gamma_bar cancel against their conjugate, so the
// identical-atom removable singularity never divides 0/0.  Requires g = 0.
cplx transmission_chiral(double k, const TwoAtomSystem& sys);

// Waveguide amplitudes t_bar = (t+1)/2, r_bar = (t-1)/2 in the algebraically
// reduced forms, which vanish exactly at k = omega_{1,2} when lossless.
std::pair<cplx, cplx> transmission_reflection_waveguide(double k, const TwoAtomSystem& sys);

// Roots of Q via the cancellation-safe quadratic formula.  Tie-break for
// |Im| agreeing within 1e-9*gamma_bar: the smaller Re is subradiant.
PoleSet poles(const TwoAtomSystem& sys);

// Rowwise transmission_reflection_waveguide over a strictly increasing grid.
std::vector<SpectrumRow> spectrum_sweep(const std::vector<double>& k_grid,
                                        const TwoAtomSystem& sys);

}  // namespace wqed
