#include "model.hpp"

#include <cmath>
#include <stdexcept>

namespace wqed {

cplx TwoAtomSystem::cross_coupling() const {
    return 1.0 / std::sqrt(atom1.tau * atom2.tau) + I * g;
}

static void validate_atom(const AtomParams& a, const char* which) {
    if (!(a.tau > 0.0) || !std::isfinite(a.tau))
        throw std::invalid_argument(std::string(which) + ": tau must be positive");
    if (!std::isfinite(a.omega))
        throw std::invalid_argument(std::string(which) + ": omega must be finite");
    if (!(a.gamma_ng >= 0.0) || !std::isfinite(a.gamma_ng))
        throw std::invalid_argument(std::string(which) + ": gamma_ng must be non-negative");
}

void validate(const TwoAtomSystem& sys) {
    validate_atom(sys.atom1, "atom1");
    validate_atom(sys.atom2, "atom2");
    if (!std::isfinite(sys.g))
        throw std::invalid_argument("g must be finite");
}

CollectiveScales derived_scales(const TwoAtomSystem& sys, double e_total) {
    const double g1 = sys.gamma1();
    const double g2 = sys.gamma2();
    const cplx oc = sys.omega_c_eff();
    const cplx od = sys.omega_d_eff();

    CollectiveScales s;
    s.e_total = e_total;
    s.d_a = e_total - 2.0 * oc + I * (g1 + g2);

    cplx radicand = 4.0 * od * od + 4.0 * I * od * (g1 - g2) - (g1 + g2) * (g1 + g2);
    // Pin the sign of a zero imaginary part so the principal branch is
    // deterministic on the negative real axis.
    if (radicand.imag() == 0.0) radicand = {radicand.real(), +0.0};
    s.d_b = std::sqrt(radicand);

    s.d1 = 0.5 * (s.d_a + s.d_b);
    s.d2 = 0.5 * (s.d_a - s.d_b);
    return s;
}

}  // namespace wqed
