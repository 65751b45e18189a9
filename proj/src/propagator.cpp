#include "propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace wqed {

using cplx = std::complex<double>;

std::vector<double> bessel_j_sequence(double theta, int n_max) {
    std::vector<double> j(n_max + 1, 0.0);
    if (theta == 0.0) {
        j[0] = 1.0;
        return j;
    }
    const int start = n_max + 20 + static_cast<int>(std::sqrt(40.0 * (n_max + 1)));
    double jp1 = 0.0;
    double jn = 1e-300;
    double norm = 0.0;  // J_0 + 2 sum J_{2k}
    for (int n = start; n >= 1; --n) {
        const double jm1 = (2.0 * n / theta) * jn - jp1;
        jp1 = jn;
        jn = jm1;
        if (n - 1 <= n_max) j[n - 1] = jn;
        if ((n - 1) % 2 == 0) norm += (n - 1 == 0) ? jn : 2.0 * jn;
        if (std::abs(jn) > 1e250) {  // rescale to dodge overflow
            jn *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            for (double& v : j) v *= 1e-250;
        }
    }
    for (double& v : j) v /= norm;
    return j;
}

void Propagator::chebyshev_chunk(Eigen::VectorXcd& psi, double dt) const {
    const double a = 0.5 * (bounds.hi + bounds.lo);
    const double half_span = 0.5 * (bounds.hi - bounds.lo);
    if (!(half_span > 0.0)) throw std::invalid_argument("empty spectral bounds");
    const double theta = half_span * dt;

    int n_max = static_cast<int>(theta + 24.0 + 12.0 * std::cbrt(theta + 1.0));
    const auto bj = bessel_j_sequence(theta, n_max);
    while (n_max > 1 && std::abs(bj[n_max]) < 1e-18 && std::abs(bj[n_max - 1]) < 1e-18)
        --n_max;

    const std::ptrdiff_t dim = psi.size();
    Eigen::VectorXcd phi0 = psi;
    Eigen::VectorXcd phi1(dim), tmp(dim), acc(dim);

    // phi1 = Htilde psi
    apply(phi0, tmp);
    phi1 = (tmp - a * phi0) / half_span;

    cplx in = 1.0;  // (-i)^n
    acc = bj[0] * phi0;
    in *= cplx(0.0, -1.0);
    acc += 2.0 * in * bj[1] * phi1;

    for (int n = 2; n <= n_max; ++n) {
        apply(phi1, tmp);
        tmp = 2.0 * (tmp - a * phi1) / half_span - phi0;
        phi0.swap(phi1);
        phi1.swap(tmp);
        in *= cplx(0.0, -1.0);
        if (bj[n] != 0.0) acc += 2.0 * in * bj[n] * phi1;
    }

    psi = std::exp(cplx(0.0, -a * dt)) * acc;
}

void Propagator::evolve(Eigen::VectorXcd& psi, double t, double chunk_time) const {
    if (t == 0.0) return;
    if (!(t > 0.0)) throw std::invalid_argument("evolution time must be non-negative");
    if (loss.size() > 0) {
        // Strang splitting error scales with the step; keep steps short
        // relative to the fastest decay.
        const double max_loss = loss.maxCoeff();
        if (max_loss > 0.0) chunk_time = std::min(chunk_time, 0.1 / max_loss);
    }
    const int n_chunks = std::max(1, static_cast<int>(std::ceil(t / chunk_time)));
    const double dt = t / n_chunks;
    const bool lossy = loss.size() > 0;
    Eigen::VectorXcd decay_half;
    if (lossy) {
        if (loss.size() != psi.size())
            throw std::invalid_argument("loss vector dimension mismatch");
        decay_half = (-0.5 * dt * loss.array()).exp().matrix().cast<cplx>();
    }
    for (int c = 0; c < n_chunks; ++c) {
        if (lossy) psi.array() *= decay_half.array();
        chebyshev_chunk(psi, dt);
        if (lossy) psi.array() *= decay_half.array();
    }
}

}  // namespace wqed
