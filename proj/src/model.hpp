// Parameters of the two-atom waveguide system and the collective scales
// derived from them.  Everything downstream (closed forms, oracle, CLI)
// consumes these types.
//
// Conventions: hbar = 1, group velocity = 1.  Energies and rates share the
// same unit; times are its inverse.  The amplitude decay rate of atom i is
// gamma_i = 1/tau_i.

#pragma once

#include <complex>

namespace wqed {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

struct AtomParams {
    double omega = 0.0;     // transition frequency
    double tau = 1.0;       // waveguide decay time, gamma = 1/tau
    double gamma_ng = 0.0;  // non-guided loss rate (>= 0)

    // Loss enters every formula through omega -> omega - i*gamma_ng.
    cplx omega_eff() const { return {omega, -gamma_ng}; }
    double gamma() const { return 1.0 / tau; }
};

struct TwoAtomSystem {
    AtomParams atom1;
    AtomParams atom2;
    double g = 0.0;  // dipole-dipole rate

    double gamma1() const { return atom1.gamma(); }
    double gamma2() const { return atom2.gamma(); }
    double gamma_bar() const { return 0.5 * (gamma1() + gamma2()); }

    double omega_c() const { return 0.5 * (atom1.omega + atom2.omega); }
    double omega_d() const { return 0.5 * (atom1.omega - atom2.omega); }
    cplx omega_c_eff() const { return 0.5 * (atom1.omega_eff() + atom2.omega_eff()); }
    cplx omega_d_eff() const { return 0.5 * (atom1.omega_eff() - atom2.omega_eff()); }

    // c = (tau1*tau2)^(-1/2) + i*g; couples the two equations of motion.
    cplx cross_coupling() const;

    TwoAtomSystem relabeled() const { return {atom2, atom1, g}; }
};

// Collective two-photon scales at total energy E (the D's of the bound-state
// closed form).  D_b uses the principal square root; the physics is invariant
// under D_b -> -D_b.
struct CollectiveScales {
    double e_total = 0.0;
    cplx d_a;
    cplx d_b;
    cplx d1;  // (d_a + d_b)/2
    cplx d2;  // (d_a - d_b)/2
};

// Throws std::invalid_argument naming the first violated invariant.
// Identical atoms are valid.
void validate(const TwoAtomSystem& sys);

CollectiveScales derived_scales(const TwoAtomSystem& sys, double e_total);

}  // namespace wqed
