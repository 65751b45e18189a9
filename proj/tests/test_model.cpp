#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "model.hpp"

using namespace wqed;

namespace {

TwoAtomSystem make_sys(double omega_d, double tau1 = 1.0, double tau2 = 1.0,
                       double omega_c = 0.0, double gng1 = 0.0, double gng2 = 0.0,
                       double g = 0.0) {
    return {{omega_c + omega_d, tau1, gng1}, {omega_c - omega_d, tau2, gng2}, g};
}

}  // namespace

TEST_CASE("validate accepts identical atoms and rejects bad parameters") {
    CHECK_NOTHROW(validate(make_sys(0.0)));
    CHECK_NOTHROW(validate(make_sys(2.0, 0.7, 1.4)));

    TwoAtomSystem bad_tau = make_sys(1.0);
    bad_tau.atom1.tau = 0.0;
    CHECK_THROWS_WITH_AS(validate(bad_tau), "atom1: tau must be positive",
                         std::invalid_argument);

    TwoAtomSystem bad_ng = make_sys(1.0);
    bad_ng.atom2.gamma_ng = -0.1;
    CHECK_THROWS_AS(validate(bad_ng), std::invalid_argument);

    TwoAtomSystem bad_omega = make_sys(1.0);
    bad_omega.atom1.omega = std::nan("");
    CHECK_THROWS_AS(validate(bad_omega), std::invalid_argument);
}

TEST_CASE("omega_c / omega_d reconstruct the bare frequencies exactly") {
    const TwoAtomSystem sys = make_sys(1.375, 0.8, 1.3, 0.625);
    CHECK(sys.omega_c() + sys.omega_d() == sys.atom1.omega);
    CHECK(sys.omega_c() - sys.omega_d() == sys.atom2.omega);
}

TEST_CASE("cross coupling reduces to (tau1 tau2)^(-1/2) when g = 0") {
    const TwoAtomSystem sys = make_sys(1.0, 0.5, 2.0);
    CHECK(sys.cross_coupling() == cplx{1.0, 0.0});
    const TwoAtomSystem with_g = make_sys(1.0, 0.5, 2.0, 0.0, 0.0, 0.0, 0.3);
    CHECK(with_g.cross_coupling() == cplx{1.0, 0.3});
}

TEST_CASE("degenerate atoms: D_b is the principal branch 2i*gamma") {
    const auto sc = derived_scales(make_sys(0.0), 1.7);
    CHECK(sc.d_b.real() == doctest::Approx(0.0));
    CHECK(sc.d_b.imag() == doctest::Approx(2.0));
}

TEST_CASE("|D_b| = sqrt(140) gamma for omega_d = 6 gamma") {
    const auto sc = derived_scales(make_sys(6.0), 0.0);
    CHECK(std::abs(sc.d_b) == doctest::Approx(std::sqrt(140.0)).epsilon(1e-14));
    CHECK(std::abs(sc.d_b) == doctest::Approx(11.832159566199232).epsilon(1e-14));
}

TEST_CASE("D_a = 2i*gamma at two-photon resonance") {
    const TwoAtomSystem sys = make_sys(3.0, 1.0, 1.0, 5.0);
    const auto sc = derived_scales(sys, 2.0 * sys.omega_c());
    CHECK(sc.d_a.real() == doctest::Approx(0.0));
    CHECK(sc.d_a.imag() == doctest::Approx(2.0));
}

TEST_CASE("D identities: D1 + D2 = D_a, D1 - D2 = D_b") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ud(0.05, 6.0), ut(0.4, 2.5), ue(-8.0, 8.0);
    for (int trial = 0; trial < 200; ++trial) {
        const TwoAtomSystem sys = make_sys(ud(rng), ut(rng), ut(rng));
        const auto sc = derived_scales(sys, 2.0 * sys.omega_c() + ue(rng));
        CHECK(std::abs(sc.d1 + sc.d2 - sc.d_a) <= 1e-14 * std::abs(sc.d_a));
        CHECK(std::abs(sc.d1 - sc.d2 - sc.d_b) <= 1e-14 * std::abs(sc.d_b));
        CHECK(sc.d1.imag() >= -1e-14);
        CHECK(sc.d2.imag() >= -1e-14);
        // lossless, real E: Im D1 + Im D2 = gamma1 + gamma2
        CHECK(sc.d1.imag() + sc.d2.imag() ==
              doctest::Approx(sys.gamma1() + sys.gamma2()).epsilon(1e-12));
    }
}

TEST_CASE("relabeling leaves D_a exact and the {D1, D2} set intact") {
    const TwoAtomSystem sys = make_sys(1.7, 0.6, 1.8, 0.4);
    const double e = 2.0 * sys.omega_c() + 2.3;
    const auto a = derived_scales(sys, e);
    const auto b = derived_scales(sys.relabeled(), e);
    CHECK(a.d_a == b.d_a);
    const bool same = std::abs(a.d1 - b.d1) + std::abs(a.d2 - b.d2) < 1e-13;
    const bool swapped = std::abs(a.d1 - b.d2) + std::abs(a.d2 - b.d1) < 1e-13;
    CHECK((same || swapped));
}

TEST_CASE("gamma_ng complexifies the frequencies before the D's are formed") {
    const TwoAtomSystem lossy = make_sys(1.0, 1.0, 1.0, 0.0, 0.3, 0.1);
    const auto sc = derived_scales(lossy, 0.0);
    // D_a gains +i*(gng1 + gng2) through omega_c -> omega_c - i*gng
    CHECK(sc.d_a.imag() == doctest::Approx(2.0 + 0.4));
    // unequal losses tilt omega_d into the complex plane, moving D_b
    const auto sc0 = derived_scales(make_sys(1.0), 0.0);
    CHECK(std::abs(sc.d_b - sc0.d_b) > 1e-6);
}
