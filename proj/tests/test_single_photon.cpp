#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "single_photon.hpp"

using namespace wqed;

namespace {

TwoAtomSystem make_sys(double omega_d, double tau1 = 1.0, double tau2 = 1.0,
                       double omega_c = 0.0, double gng1 = 0.0, double gng2 = 0.0,
                       double g = 0.0) {
    return {{omega_c + omega_d, tau1, gng1}, {omega_c - omega_d, tau2, gng2}, g};
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace

TEST_CASE("excitation amplitude s1 vanishes at k = omega2") {
    const TwoAtomSystem sys = make_sys(1.5);
    const auto s = excitation_amplitudes(sys.atom2.omega, sys);
    CHECK(std::abs(s.s1) < 1e-13);
    CHECK(std::abs(s.s2) > 0.1);
}

TEST_CASE("linear solve matches the printed closed form") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ud(0.1, 5.0), ut(0.5, 2.0), uk(-8.0, 8.0);
    for (int trial = 0; trial < 500; ++trial) {
        const TwoAtomSystem sys = make_sys(ud(rng), ut(rng), ut(rng));
        double k = uk(rng);
        if (std::abs(k - sys.atom1.omega) < 0.02 || std::abs(k - sys.atom2.omega) < 0.02)
            continue;
        const auto a = excitation_amplitudes(k, sys);
        const auto b = excitation_amplitudes_closed_form(k, sys);
        CHECK(std::abs(a.s1 - b.s1) <= 1e-12 * std::abs(b.s1));
        CHECK(std::abs(a.s2 - b.s2) <= 1e-12 * std::abs(b.s2));
    }
}

TEST_CASE("solve honors g and gamma_ng") {
    const TwoAtomSystem sys = make_sys(1.0, 1.0, 1.0, 0.0, 0.1, 0.2, 0.4);
    CHECK_NOTHROW(excitation_amplitudes(0.7, sys));
    CHECK_THROWS_AS(excitation_amplitudes_closed_form(0.7, sys), std::invalid_argument);
}

TEST_CASE("degenerate real pole is reported, not divided through") {
    const TwoAtomSystem sys = make_sys(0.0);  // identical atoms
    CHECK_THROWS_WITH_AS(excitation_amplitudes(sys.omega_c(), sys),
                         "degenerate real pole; use factored forms", std::domain_error);
    CHECK_NOTHROW(excitation_amplitudes(sys.omega_c() + 0.5, sys));
}

TEST_CASE("poles: identical atoms give {omega_c, omega_c - 2i gamma} exactly") {
    const TwoAtomSystem sys = make_sys(0.0, 1.0, 1.0, 3.0);
    const PoleSet p = poles(sys);
    CHECK(std::abs(p.subradiant - cplx{3.0, 0.0}) < 1e-14);
    CHECK(std::abs(p.superradiant - cplx{3.0, -2.0}) < 1e-14);
}

TEST_CASE("poles satisfy Q(r) = 0 and the root-sum rule") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ud(0.01, 6.0), ut(0.4, 2.5);
    for (int trial = 0; trial < 300; ++trial) {
        const TwoAtomSystem sys = make_sys(ud(rng), ut(rng), ut(rng));
        const PoleSet p = poles(sys);
        const double scale = std::pow(2.0 * sys.gamma_bar() + std::abs(sys.omega_d()), 2);
        CHECK(std::abs(denominator_q(p.subradiant, sys)) < 1e-12 * scale);
        CHECK(std::abs(denominator_q(p.superradiant, sys)) < 1e-12 * scale);
        CHECK(p.subradiant.imag() <= 1e-14);
        CHECK(p.superradiant.imag() <= 1e-14);
        const cplx sum = p.subradiant + p.superradiant;
        const cplx expect = sys.atom1.omega + sys.atom2.omega - I * (sys.gamma1() + sys.gamma2());
        CHECK(std::abs(sum - expect) < 1e-12 * std::abs(expect));
    }
}

TEST_CASE("small detuning: subradiant width follows the quadratic law") {
    // exact: |Im r_sub| = gamma - sqrt(gamma^2 - omega_d^2) for equal atoms
    const TwoAtomSystem sys = make_sys(0.1);
    const PoleSet p = poles(sys);
    const double expect = 1.0 - std::sqrt(1.0 - 0.01);
    CHECK(p.subradiant.imag() == doctest::Approx(-expect).epsilon(1e-12));
    CHECK(p.subradiant.real() == doctest::Approx(0.0));
}

TEST_CASE("superradiant width approaches 2 gamma as omega_d -> 0") {
    for (double od : {0.4, 0.2, 0.1, 0.05}) {
        const PoleSet p = poles(make_sys(od));
        CHECK(p.superradiant.imag() == doctest::Approx(-2.0).epsilon(0.05));
    }
    CHECK(poles(make_sys(0.01)).superradiant.imag() == doctest::Approx(-2.0).epsilon(1e-3));
}

TEST_CASE("pole labels are deterministic when both widths coincide") {
    // omega_d > gamma with equal atoms: both roots have Im = -gamma
    const PoleSet p = poles(make_sys(6.0));
    CHECK(p.subradiant.real() < p.superradiant.real());
    CHECK(p.subradiant.imag() == doctest::Approx(-1.0));
    CHECK(p.superradiant.imag() == doctest::Approx(-1.0));
}

TEST_CASE("t_k is unimodular on the real axis without loss") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ud(0.05, 6.0), ut(0.4, 2.5);
    for (int s = 0; s < 5; ++s) {
        const TwoAtomSystem sys = make_sys(ud(rng), ut(rng), ut(rng));
        for (double k : linspace(-20.0 / 1.0, 20.0, 2001)) {
            const double dev = std::abs(std::abs(transmission_chiral(k, sys)) - 1.0);
            REQUIRE(dev <= 1e-12);
        }
    }
}

TEST_CASE("t = -1 at either bare frequency (detuned atoms)") {
    const TwoAtomSystem sys = make_sys(2.0);
    CHECK(std::abs(transmission_chiral(sys.atom1.omega, sys) + 1.0) < 1e-12);
    CHECK(std::abs(transmission_chiral(sys.atom2.omega, sys) + 1.0) < 1e-12);
}

TEST_CASE("identical atoms collapse to the single superradiant factor") {
    const TwoAtomSystem sys = make_sys(0.0, 1.0, 1.0, 1.0);
    for (double k : {1.0, 1.3, 0.2, -4.0, 9.0}) {
        const cplx expect = (k - 1.0 - 2.0 * I) / (k - 1.0 + 2.0 * I);
        CHECK(std::abs(transmission_chiral(k, sys) - expect) < 1e-13);
    }
    // continuous at the removable point k = omega_c
    CHECK(std::abs(transmission_chiral(1.0, sys) + 1.0) < 1e-13);
}

TEST_CASE("t_k is invariant under atom relabeling") {
    const TwoAtomSystem sys = make_sys(1.3, 0.7, 1.6);
    for (double k : linspace(-6.0, 6.0, 101)) {
        CHECK(std::abs(transmission_chiral(k, sys) - transmission_chiral(k, sys.relabeled())) <
              1e-12);
    }
}

TEST_CASE("waveguide amplitudes: zeros, flux conservation, consistency") {
    const TwoAtomSystem sys = make_sys(2.0);
    auto [tb1, rb1] = transmission_reflection_waveguide(sys.atom1.omega, sys);
    CHECK(std::abs(tb1) == 0.0);  // exact zero of the reduced form
    CHECK(std::abs(rb1 + 1.0) < 1e-12);

    for (double k : linspace(-7.0, 7.0, 301)) {
        auto [tb, rb] = transmission_reflection_waveguide(k, sys);
        CHECK(std::norm(tb) + std::norm(rb) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(tb - rb - 1.0) < 1e-12);  // tbar - rbar = 1 identity
        const cplx t = transmission_chiral(k, sys);
        CHECK(std::abs(tb - 0.5 * (t + 1.0)) < 1e-12);
    }
}

TEST_CASE("far-detuned limit: tbar -> 1, rbar -> 0") {
    const TwoAtomSystem sys = make_sys(1.0);
    auto [tb, rb] = transmission_reflection_waveguide(1e6, sys);
    CHECK(std::abs(tb - 1.0) < 1e-5);
    CHECK(std::abs(rb) < 1e-5);
}

TEST_CASE("EIT-like peak: perfect transmission at omega_c for equal rates") {
    const TwoAtomSystem sys = make_sys(0.5);
    auto [tb, rb] = transmission_reflection_waveguide(sys.omega_c(), sys);
    CHECK(std::norm(tb) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("loss makes |t| < 1 but never > 1") {
    const TwoAtomSystem sys = make_sys(1.0, 1.0, 1.0, 0.0, 0.2, 0.2);
    double min_mod = 2.0;
    for (double k : linspace(-20.0, 20.0, 2001)) {
        const double m = std::abs(transmission_chiral(k, sys));
        CHECK(m <= 1.0 + 1e-12);
        min_mod = std::min(min_mod, m);
    }
    CHECK(min_mod < 0.9);
}

TEST_CASE("spectrum sweep validates its grid and hits the zeros") {
    const TwoAtomSystem sys = make_sys(2.0);
    CHECK_THROWS_AS(spectrum_sweep({}, sys), std::invalid_argument);
    CHECK_THROWS_AS(spectrum_sweep({0.0, 0.0}, sys), std::invalid_argument);

    const auto rows = spectrum_sweep({sys.atom2.omega, sys.atom1.omega}, sys);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].transmittance < 1e-24);
    CHECK(rows[1].transmittance < 1e-24);

    // symmetric grid about omega_c with equal rates: |tbar|^2 symmetric
    const auto grid = linspace(-5.0, 5.0, 401);
    const auto sw = spectrum_sweep(grid, sys);
    for (std::size_t i = 0; i < sw.size(); ++i) {
        const auto& mirror = sw[sw.size() - 1 - i];
        CHECK(sw[i].transmittance == doctest::Approx(mirror.transmittance).epsilon(1e-10));
    }
}
